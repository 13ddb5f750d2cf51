"""
YAML check suites: named CLI invocations with their expected outcome.

    checks:
      - name: kc2_walk_group
        args: [walk-group, --category, src/gradecat/fixtures/categories/kc2.json, ...]
        expected_status: ok
        expected_exit: 0
        expected_payload: {subgroup: {free_rank: 1}}

Arguments naming existing files are resolved against the suite file's
directory. expected_payload is matched as a subset of the actual payload.
"""
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, List, Optional

import yaml

from ..errors import SchemaError


@dataclass
class CheckOutcome:
    name: str
    passed: bool
    status: str
    exit_code: int
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "status": self.status,
            "exit_code": self.exit_code,
            "detail": self.detail,
        }


@dataclass
class SuiteResult:
    path: str
    outcomes: List[CheckOutcome] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.outcomes)

    def to_json(self) -> dict:
        return {
            "suite": self.path,
            "total": len(self.outcomes),
            "passed": sum(1 for o in self.outcomes if o.passed),
            "failed": sum(1 for o in self.outcomes if not o.passed),
            "checks": [o.to_json() for o in self.outcomes],
        }


def load_checks(path) -> List[dict]:
    """
    Raises:
        SchemaError: if the file is not a list of checks with name and args
    """
    with open(path, 'r') as f:
        try:
            data = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise SchemaError(f"{path} does not parse: {e}")
    checks = data.get('checks') if isinstance(data, dict) else None
    if not isinstance(checks, list):
        raise SchemaError("expected a list of checks", "checks")
    for i, check in enumerate(checks):
        if not isinstance(check, dict) or 'name' not in check or not isinstance(check.get('args'), list):
            raise SchemaError("each check needs a name and an args list", f"checks[{i}]")
    return checks


def subset_match(expected: Any, actual: Any) -> Optional[str]:
    """None when expected is contained in actual, otherwise the first differing path."""
    if isinstance(expected, dict):
        if not isinstance(actual, dict):
            return "expected an object"
        for key, value in expected.items():
            if key not in actual:
                return f"missing {key}"
            diff = subset_match(value, actual[key])
            if diff is not None:
                return f"{key}.{diff}" if not diff.startswith("expected") else f"{key}: {diff}"
        return None
    if isinstance(expected, list):
        if not isinstance(actual, list) or len(expected) != len(actual):
            return f"expected a list of {len(expected)}"
        for i, (e, a) in enumerate(zip(expected, actual)):
            diff = subset_match(e, a)
            if diff is not None:
                return f"[{i}]{diff}"
        return None
    return None if expected == actual else f"expected {expected!r}, got {actual!r}"


def _resolve(args: List[Any], root: Path) -> List[str]:
    out = []
    for a in args:
        a = str(a)
        if not a.startswith("-") and (root / a).exists():
            a = str(root / a)
        out.append(a)
    return out


def run_suite(path, runner: Callable[[List[str]], Any], only: Optional[str] = None) -> SuiteResult:
    """
    Run every check through runner(argv) -> report with status, exit_code and payload.

    Args:
        path: suite file
        runner: the CLI entry returning a report
        only: run just the check with this name
    """
    root = Path(path).resolve().parent
    result = SuiteResult(str(path))
    for check in load_checks(path):
        if only and check['name'] != only:
            continue
        report = runner(_resolve(check['args'], root))
        problems = []
        if 'expected_status' in check and report.status != check['expected_status']:
            problems.append(f"status {report.status}, expected {check['expected_status']}")
        if 'expected_exit' in check and report.exit_code != check['expected_exit']:
            problems.append(f"exit {report.exit_code}, expected {check['expected_exit']}")
        if 'expected_payload' in check:
            diff = subset_match(check['expected_payload'], report.payload)
            if diff is not None:
                problems.append(f"payload {diff}")
        result.outcomes.append(CheckOutcome(
            check['name'], not problems, report.status, report.exit_code, "; ".join(problems)))
    return result
