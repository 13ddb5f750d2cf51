"""
Command-line front end for gradecat.

Every subcommand parses its input files, calls one library operation and
returns a Report; main() prints it and exits with 0 (ok), 1 (invalid,
unsupported or failed computation) or 2 (unreadable or malformed input,
or an object name the category does not have).
"""
import argparse
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from .categories.fincat import FinCategory, full_subcategory, is_convex, validate_category
from .categories.grading import (
    GradingViolationKind,
    base_component_grading,
    conjugate_grading,
    extend_trivial,
    is_connected_grading,
    restrict_grading,
    validate_grading,
    walk_degree_coset,
    walk_group,
)
from .coverings.morphisms import canonical_mu, enumerate_identityJ_morphisms, find_identityJ_morphism
from .coverings.pi1 import (
    build_diagram,
    check_compatible_family,
    kappa_relative,
    relative_pi1,
    verify_choice_independence,
)
from .coverings.smash import smash_product, verify_covering, verify_galois
from .errors import GradecatError, PreconditionError, SchemaError, UnknownObjectError, UnsupportedError
from .evaluation.properties import PROPERTIES, run_property
from .evaluation.suite import run_suite
from .tools import console, schema
from .tools.config import FORMATS, Settings, load_settings

STATUS_EXIT = {"ok": 0, "invalid": 1, "unsupported": 1, "error": 1}


@dataclass
class Report:
    """Outcome of one subcommand."""
    command: str
    status: str = "ok"
    payload: Any = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)
    exit_code: Optional[int] = None
    text: Optional[str] = None

    def __post_init__(self):
        if self.exit_code is None:
            self.exit_code = STATUS_EXIT[self.status]

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "status": self.status,
            "payload": self.payload,
            "warnings": list(self.warnings),
        }


def _verdict(command: str, valid: bool, payload: Any, warnings: Optional[List[str]] = None) -> Report:
    return Report(command, "ok" if valid else "invalid", payload, list(warnings or []))


def _objects(text: str) -> List[str]:
    return [s.strip() for s in text.split(",") if s.strip()]


def _base(cat: FinCategory, base: Optional[str]) -> str:
    return cat.objects[0] if base is None else cat.check_object(base)


def _category_and_grading(args, attr: str = "grading"):
    cat = schema.load_category(args.category)
    return cat, schema.load_grading(getattr(args, attr), cat)


def _diagram(path, settings: Settings):
    loaded = schema.DiagramFile(path)
    return build_diagram(loaded.category, loaded.base_object, loaded.gradings, loaded.declared_J, settings.workers)


# Subcommands

def cmd_validate_category(args, settings: Settings) -> Report:
    report = validate_category(schema.load_category(args.category))
    return _verdict(args.command, report.valid, report.to_json())


def cmd_validate_grading(args, settings: Settings) -> Report:
    _, g = _category_and_grading(args)
    report = validate_grading(g)
    return _verdict(args.command, report.valid, report.to_json())


def cmd_connected(args, settings: Settings) -> Report:
    cat, g = _category_and_grading(args)
    b0 = _base(cat, args.base)
    wg = walk_group(g, b0)
    return Report(args.command, payload={
        "base_object": b0,
        "connected": is_connected_grading(g, b0),
        "walk_group": wg.to_json(),
    })


def cmd_walk_group(args, settings: Settings) -> Report:
    cat, g = _category_and_grading(args)
    return Report(args.command, payload=walk_group(g, _base(cat, args.base)).to_json())


def cmd_coset(args, settings: Settings) -> Report:
    _, g = _category_and_grading(args)
    coset = walk_degree_coset(g, args.source, args.target)
    payload = {"from": args.source, "to": args.target, **coset.to_json()}
    if g.group.is_finite:
        payload["elements"] = [x.label for x in coset.elements()]
    return Report(args.command, payload=payload)


def cmd_restrict(args, settings: Settings) -> Report:
    _, g = _category_and_grading(args)
    r = restrict_grading(g, _objects(args.sub))
    return Report(args.command, payload={"category": r.category.to_json(), "grading": r.to_json()})


def cmd_conjugate(args, settings: Settings) -> Report:
    cat, g = _category_and_grading(args)
    family = schema.load_family(args.family, cat, g.group)
    return Report(args.command, payload={"family": family.to_json(), "grading": conjugate_grading(g, family).to_json()})


def cmd_component(args, settings: Settings) -> Report:
    cat, g = _category_and_grading(args)
    b0 = _base(cat, args.base)
    family, component, subgroup = base_component_grading(g, b0)
    return Report(args.command, payload={
        "base_object": b0,
        "family": family.to_json(),
        "subgroup": subgroup.to_json(),
        "grading": component.to_json(),
    })


def cmd_extend_convex(args, settings: Settings) -> Report:
    cat = schema.load_category(args.category)
    objs = _objects(args.sub)
    gD = schema.load_grading(args.grading, full_subcategory(cat, objs))
    try:
        result = extend_trivial(gD, cat, objs)
    except PreconditionError as err:
        return Report(args.command, "invalid", {"convex": False, "witness": list(err.witness or [])}, [str(err)])
    payload = result.to_json()
    if not result.ok:
        payload["witness"] = next(
            (list(v.composite) for v in result.violations if v.kind == GradingViolationKind.COMPOSITE_DEGREE), None)
    return _verdict(args.command, result.ok, payload, result.warnings)


def cmd_smash(args, settings: Settings) -> Report:
    _, g = _category_and_grading(args)
    cov = smash_product(g, settings.max_enum)
    report = verify_covering(cov)
    return _verdict(args.command, report.valid, {
        "objects": len(cov.category.objects),
        "category": cov.to_json(),
        "covering": report.to_json(),
    })


def cmd_verify_galois(args, settings: Settings) -> Report:
    cat, g = _category_and_grading(args)
    b0 = _base(cat, args.base)
    cov = smash_product(g, settings.max_enum)
    report = verify_galois(cov, b0)
    payload = report.to_json()
    payload["covering"] = verify_covering(cov).to_json()
    payload["connected_grading"] = is_connected_grading(g, b0)
    return _verdict(args.command, report.galois, payload)


def _morphism_inputs(args):
    cat = schema.load_category(args.category)
    X = schema.load_grading(args.source, cat)
    Xp = schema.load_grading(args.target, cat)
    J = schema.load_automorphism(args.J, cat) if args.J else None
    return cat, X, Xp, J


def cmd_find_morphism(args, settings: Settings) -> Report:
    cat, X, Xp, J = _morphism_inputs(args)
    return Report(args.command, payload=find_identityJ_morphism(X, Xp, _base(cat, args.base), J).to_json())


def cmd_morphisms(args, settings: Settings) -> Report:
    cat, X, Xp, J = _morphism_inputs(args)
    return Report(args.command, payload=enumerate_identityJ_morphisms(X, Xp, _base(cat, args.base), J).to_json())


def cmd_mu(args, settings: Settings) -> Report:
    cat, X, Xp, J = _morphism_inputs(args)
    result = find_identityJ_morphism(X, Xp, _base(cat, args.base), J)
    if not result:
        return Report(args.command, "invalid", {"exists": False, "obstruction": result.obstruction.to_json()})
    mu = canonical_mu(result.morphism)
    return Report(args.command, payload={"exists": True, "J": result.morphism.j_name, "mu": mu.to_json()})


def cmd_diagram(args, settings: Settings) -> Report:
    d = _diagram(args.diagram, settings)
    return Report(args.command, payload=d.to_json(), warnings=list(d.warnings))


def cmd_pi1(args, settings: Settings) -> Report:
    d = _diagram(args.diagram, settings)
    limit = relative_pi1(d, settings.max_enum)
    payload = limit.to_json()
    if args.family:
        values = schema.load_document(args.family)
        if not isinstance(values, dict):
            raise SchemaError("expected an object {node: element}", "")
        payload["family"] = check_compatible_family(d, values).to_json()
    return Report(args.command, payload=payload, warnings=list(limit.warnings))


def cmd_kappa(args, settings: Settings) -> Report:
    dB = _diagram(args.diagram, settings)
    dD = _diagram(args.small_diagram, settings)
    report = kappa_relative(dB, _objects(args.sub), dD, settings.max_enum)
    return _verdict(args.command, report.map_defined, report.to_json(), report.warnings)


def cmd_convex_check(args, settings: Settings) -> Report:
    result = is_convex(schema.load_category(args.category), _objects(args.sub))
    return Report(args.command, payload=result.to_json())


def cmd_choice(args, settings: Settings) -> Report:
    cat, g = _category_and_grading(args)
    seed = settings.default_seed if args.seed is None else args.seed
    objs = _objects(args.sub) if args.sub else None
    report = verify_choice_independence(g, objs, _base(cat, args.base), seed)
    return _verdict(args.command, report.independent, {"seed": seed, **report.to_json()})


def cmd_roundtrip(args, settings: Settings) -> Report:
    text = schema.canonical_text(args.input, args.category)
    return Report(args.command, payload={"input": args.input, "canonical": text == Path(args.input).read_text(encoding="utf-8")}, text=text)


def cmd_suite(args, settings: Settings) -> Report:
    result = run_suite(args.suite, run, args.check)
    return _verdict(args.command, result.passed, result.to_json())


def cmd_property(args, settings: Settings) -> Report:
    seed = settings.default_seed if args.seed is None else args.seed
    result = run_property(args.name, args.instances, seed, settings.max_enum)
    payload = result.to_json()
    payload["elapsed_seconds"] = round(result.elapsed, 3)
    return _verdict(args.command, result.passed, payload)


# Parser

Handler = Callable[[argparse.Namespace, Settings], Report]


def _add_common(p: argparse.ArgumentParser):
    p.add_argument('--format', choices=FORMATS, help='Output format (default from settings: human)')
    p.add_argument('--config', help='YAML settings file (default: ./gradecat.yaml if present)')
    p.add_argument('--output', help='Write the JSON report to this file')
    p.add_argument('--max-enum', type=int, help='Bound on brute-force enumerations')
    p.add_argument('--workers', type=int, help='Threads for pairwise morphism searches')
    p.add_argument('--verbose', action='store_true', help='Print progress details')


def _category_args(p, grading: bool = True, base: bool = False):
    p.add_argument('--category', required=True, help='Category JSON file')
    if grading:
        p.add_argument('--grading', required=True, help='Grading JSON file')
    if base:
        p.add_argument('--base', help='Base object (default: first object)')


def _morphism_args(p):
    _category_args(p, grading=False, base=True)
    p.add_argument('--source', required=True, help='Source grading X')
    p.add_argument('--target', required=True, help="Target grading X'")
    p.add_argument('--J', help='Base automorphism JSON file (default: identity)')


COMMANDS: Dict[str, tuple] = {
    'validate-category': (cmd_validate_category, "Check the category axioms",
                          lambda p: _category_args(p, grading=False)),
    'validate-grading': (cmd_validate_grading, "Check the grading axioms", _category_args),
    'connected': (cmd_connected, "Decide whether a grading is connected",
                  lambda p: _category_args(p, base=True)),
    'walk-group': (cmd_walk_group, "Walk-degree subgroup and tree-walk family",
                   lambda p: _category_args(p, base=True)),
    'coset': (cmd_coset, "Degrees of homogeneous walks between two objects",
              lambda p: (_category_args(p),
                         p.add_argument('--from', dest='source', required=True, help='Start object'),
                         p.add_argument('--to', dest='target', required=True, help='End object'))),
    'restrict': (cmd_restrict, "Restrict a grading to a full subcategory",
                 lambda p: (_category_args(p), p.add_argument('--sub', required=True, help='Comma-separated objects'))),
    'conjugate': (cmd_conjugate, "Conjugate a grading by a family of group elements",
                  lambda p: (_category_args(p), p.add_argument('--family', required=True, help='Family JSON file'))),
    'component': (cmd_component, "Grading of the connected component of the base object in the smash",
                  lambda p: _category_args(p, base=True)),
    'extend-convex': (cmd_extend_convex, "Extend a grading of a convex full subcategory by trivial degrees",
                      lambda p: (_category_args(p),
                                 p.add_argument('--sub', required=True, help='Comma-separated objects'))),
    'smash': (cmd_smash, "Materialize the smash product and check the star condition", _category_args),
    'verify-galois': (cmd_verify_galois, "Check that the smash covering is Galois",
                      lambda p: _category_args(p, base=True)),
    'find-morphism': (cmd_find_morphism, "Search the normalized covering morphism", _morphism_args),
    'morphisms': (cmd_morphisms, "List all covering morphisms over J", _morphism_args),
    'mu': (cmd_mu, "Canonical group map of the covering morphism", _morphism_args),
    'diagram': (cmd_diagram, "Build the diagram of canonical group maps",
                lambda p: p.add_argument('--diagram', required=True, help='Diagram file')),
    'pi1': (cmd_pi1, "Fundamental group relative to a diagram",
            lambda p: (p.add_argument('--diagram', required=True, help='Diagram file'),
                       p.add_argument('--family', help='Check this {node: element} family'))),
    'kappa': (cmd_kappa, "Map on relative fundamental groups induced by a full subcategory",
              lambda p: (p.add_argument('--diagram', required=True, help='Diagram on the whole category'),
                         p.add_argument('--sub', required=True, help='Comma-separated objects'),
                         p.add_argument('--small-diagram', required=True, help='Diagram on the subcategory'))),
    'convex-check': (cmd_convex_check, "Decide convexity of a full subcategory",
                     lambda p: (_category_args(p, grading=False),
                                p.add_argument('--sub', required=True, help='Comma-separated objects'))),
    'choice': (cmd_choice, "Compare base components built from two spanning trees",
               lambda p: (_category_args(p, base=True),
                          p.add_argument('--sub', help='Restrict to these objects first'),
                          p.add_argument('--seed', type=int, help='Seed of the alternative tree'))),
    'roundtrip': (cmd_roundtrip, "Print the canonical serialization of a category or grading file",
                  lambda p: (p.add_argument('--input', required=True, help='File to normalize'),
                             p.add_argument('--category', help='Category file, when the input is a grading'))),
    'suite': (cmd_suite, "Run a YAML check suite",
              lambda p: (p.add_argument('--suite', required=True, help='Suite YAML file'),
                         p.add_argument('--check', help='Run only the check with this name'))),
    'property': (cmd_property, "Run a named randomized property",
                 lambda p: (p.add_argument('--name', required=True, choices=sorted(PROPERTIES), help='Property'),
                            p.add_argument('--instances', type=int, default=100, help='Number of instances'),
                            p.add_argument('--seed', type=int, help='Seed (default from settings)'))),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gradecat",
        description="Group-graded linear categories: walk groups, smash coverings and relative fundamental groups"
    )
    sub = parser.add_subparsers(dest='command', required=True)
    for name, (_, help_text, configure) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        configure(p)
        _add_common(p)
    return parser


def run(argv: Optional[List[str]] = None) -> Report:
    """Parse argv, resolve settings and dispatch; never raises for library errors."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        code = e.code if isinstance(e.code, int) else 2
        return Report("", "ok" if code == 0 else "error", exit_code=code)
    try:
        settings = load_settings(args.config).with_overrides(
            max_enum=args.max_enum, workers=args.workers, verbose=args.verbose or None)
    except (SchemaError, OSError) as e:
        return Report(args.command, "error", {"error": str(e)}, exit_code=2)
    handler: Handler = COMMANDS[args.command][0]
    try:
        report = handler(args, settings)
    except SchemaError as e:
        return Report(args.command, "error", {"error": e.reason, "pointer": e.pointer}, exit_code=2)
    except OSError as e:
        return Report(args.command, "error", {"error": str(e)}, exit_code=2)
    except UnknownObjectError as e:
        return Report(args.command, "error", {"error": str(e), "type": type(e).__name__}, exit_code=2)
    except UnsupportedError as e:
        return Report(args.command, "unsupported", {"error": str(e)})
    except GradecatError as e:
        payload = {"error": str(e), "type": type(e).__name__}
        witness = getattr(e, "witness", None)
        if witness is not None:
            payload["witness"] = witness
        return Report(args.command, "error", payload)
    report.args = args
    return report


def emit(report: Report, fmt: str, output: Optional[str] = None, verbose: bool = False):
    """Print a report in the chosen format and optionally save its JSON form."""
    if not report.command:
        return
    if output:
        with open(output, 'w', encoding='utf-8') as f:
            f.write(report.text if report.text is not None else schema.dumps(report.to_json()))
    if report.text is not None and report.status == "ok":
        print(report.text, end="")
        return
    if fmt == "json":
        print(schema.dumps(report.to_json()), end="")
        return

    seed = report.payload.get("seed") if isinstance(report.payload, dict) else None
    if seed is not None:
        print(f"Seed: {seed}")
    console.banner(report.command.upper())
    if report.command == "suite" and "checks" in report.payload:
        _emit_suite(report.payload)
    else:
        print(schema.dumps(report.payload), end="")
    for w in report.warnings:
        console.warn(w)
    console.info(f"exit code {report.exit_code}", verbose)
    console.status_line(report.status)
    print('=' * 60)


def _emit_suite(payload: dict):
    for check in payload["checks"]:
        console.mark(check["passed"], check["name"], check["detail"])
    print(f"\nTotal: {payload['total']} checks")
    print(f"PASS: {payload['passed']}")
    print(f"FAIL: {payload['failed']}")


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point."""
    report = run(argv)
    args = getattr(report, "args", None)
    if args is None:
        emit(report, "json" if report.command else "human")
        return report.exit_code
    settings_format = None
    try:
        settings_format = load_settings(args.config).default_format
    except (SchemaError, OSError):
        pass
    fmt = args.format or settings_format or "human"
    emit(report, fmt, args.output, bool(args.verbose))
    return report.exit_code


if __name__ == "__main__":
    exit(main())
