"""
Fundamental group relative to a finite diagram of connected gradings.

Nodes are connected gradings of one category at a base object; an edge
X -> X′ carries the canonical group map μ of a covering morphism. A compatible
family picks g_X in every Γ_X with μ(g_X) = g_X′ on every edge; compatible
families form the limit group. This is the fundamental group relative to the
supplied diagram only.
"""
import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from ..algebra import lattice
from ..algebra.groups import GroupElement, GroupHom, in_group
from ..categories.fincat import FinCategory, ObjectSubset, full_subcategory, object_subset
from ..categories.grading import (
    Grading,
    base_component_grading,
    extend_trivial,
    is_connected_grading,
    restrict_grading,
    walk_group,
)
from ..errors import DomainError, PreconditionError, UnsupportedError
from .morphisms import BaseAutomorphism, canonical_mu, find_identityJ_morphism

RELATIVE_WARNING = "computed relative to the supplied diagram; the full fundamental group is not computed"


@dataclass
class DiagramNode:
    name: str
    grading: Grading


@dataclass
class DiagramEdge:
    """Canonical μ of a morphism source -> target over the named J."""
    source: str
    target: str
    mu: GroupHom
    J: str = "identity"

    def to_json(self) -> dict:
        return {"from": self.source, "to": self.target, "J": self.J, "mu": self.mu.to_json()}


@dataclass
class GradingDiagram:
    """Connected gradings of one category at b0 with their canonical μ edges."""
    category: FinCategory
    base: str
    nodes: List[DiagramNode]
    edges: List[DiagramEdge]
    declared_J: List[BaseAutomorphism] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    @property
    def names(self) -> List[str]:
        return [n.name for n in self.nodes]

    def grading(self, name: str) -> Grading:
        for n in self.nodes:
            if n.name == name:
                return n.grading
        raise DomainError(f"diagram has no node '{name}'")

    def edges_between(self, source: str, target: str) -> List[DiagramEdge]:
        return [e for e in self.edges if e.source == source and e.target == target]

    def to_json(self) -> dict:
        return {
            "base_object": self.base,
            "nodes": [{"name": n.name, "group": n.grading.group.to_json()} for n in self.nodes],
            "edges": [e.to_json() for e in self.edges],
            "declared_J": [J.name for J in self.declared_J],
            "warnings": list(self.warnings),
        }


def _named(gradings: Union[Mapping[str, Grading], Sequence[Grading]]) -> List[DiagramNode]:
    if isinstance(gradings, Mapping):
        return [DiagramNode(name, g) for name, g in gradings.items()]
    return [DiagramNode(f"X{i}", g) for i, g in enumerate(gradings)]


def build_diagram(cat: FinCategory, b0: str,
                  gradings: Union[Mapping[str, Grading], Sequence[Grading]],
                  declared_Js: Sequence[BaseAutomorphism] = (),
                  workers: int = 1) -> GradingDiagram:
    """
    Nodes are the gradings; every ordered pair (self-pairs included) is searched
    for a morphism over the identity and over each declared J.

    Args:
        cat: base category
        b0: base object
        gradings: named gradings, or a list (named X0, X1, ...)
        declared_Js: base automorphisms to search over in addition to the identity
        workers: thread count for the pairwise searches; the edge order does not depend on it

    Raises:
        DomainError: if a grading lives on another category
        PreconditionError: if a grading is not connected at b0 (walk group attached)
    """
    cat.check_object(b0)
    nodes = _named(gradings)
    if len({n.name for n in nodes}) != len(nodes):
        raise DomainError("diagram node names are not unique")
    for n in nodes:
        if n.grading.category != cat:
            raise DomainError(f"grading {n.name} lives on another category")
        if not is_connected_grading(n.grading, b0):
            raise PreconditionError(f"grading {n.name} is not connected at {b0}",
                                    witness=walk_group(n.grading, b0).to_json())
    Js: List[Optional[BaseAutomorphism]] = [None] + list(declared_Js)
    jobs = [(x, y, J) for x in nodes for y in nodes for J in Js]

    def search(job) -> Optional[DiagramEdge]:
        x, y, J = job
        result = find_identityJ_morphism(x.grading, y.grading, b0, J)
        if not result:
            return None
        return DiagramEdge(x.name, y.name, canonical_mu(result.morphism), J.name if J is not None else "identity")

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            found = list(pool.map(search, jobs))
    else:
        found = [search(job) for job in jobs]
    edges = [e for e in found if e is not None]
    warnings = []
    if declared_Js:
        warnings.append("edges are relative to the declared base automorphisms "
                        + ", ".join(J.name for J in declared_Js))
    return GradingDiagram(cat, b0, nodes, edges, list(declared_Js), warnings)


# Compatible families

@dataclass
class CompatibleFamily:
    """One element g_X per node."""
    values: Dict[str, GroupElement]

    def __getitem__(self, name: str) -> GroupElement:
        return self.values[name]

    def to_json(self) -> dict:
        return {name: x.label for name, x in self.values.items()}


def family_from(d: GradingDiagram, values: Mapping[str, Any]) -> CompatibleFamily:
    """Family from elements or JSON payloads/labels per node name."""
    out = {}
    for n in d.nodes:
        if n.name not in values:
            raise DomainError(f"family has no entry for node {n.name}")
        v = values[n.name]
        G = n.grading.group
        out[n.name] = in_group(G, v) if isinstance(v, GroupElement) else G.parse(v)
    return CompatibleFamily(out)


@dataclass
class FamilyCheck:
    """Result of check_compatible_family; violation names the first failing edge."""
    valid: bool
    violation: Optional[dict] = None

    def __bool__(self) -> bool:
        return self.valid

    def to_json(self) -> dict:
        return {"compatible": self.valid, "violation": self.violation}


def check_compatible_family(d: GradingDiagram, fam: Union[CompatibleFamily, Mapping[str, Any]]) -> FamilyCheck:
    if not isinstance(fam, CompatibleFamily):
        fam = family_from(d, fam)
    for e in d.edges:
        image = e.mu(fam[e.source])
        if image != fam[e.target]:
            return FamilyCheck(False, {
                "from": e.source, "to": e.target, "J": e.J,
                "expected": image.label, "found": fam[e.target].label,
            })
    return FamilyCheck(True)


# Limit group

class LimitKind(Enum):
    """How the limit group is realized."""
    FINITE = "finite"
    FG_ABELIAN = "fg-abelian"
    CONSTRAINTS = "constraints"


class LimitGroup:
    """
    The group of compatible families of a diagram.

    Abelian diagrams are solved as a lattice S ⊆ ⊕ Z^{m_X} of coordinate vectors
    satisfying every edge congruence, taken modulo the relation lattice ⊕ R_X.
    Finite diagrams are enumerated. Anything else only answers membership.
    """

    def __init__(self, diagram: GradingDiagram, max_enum: int = 10 ** 6):
        self.diagram = diagram
        self.max_enum = max_enum
        self.warnings = [RELATIVE_WARNING] + list(diagram.warnings)
        groups = [n.grading.group for n in diagram.nodes]
        self._elements: Optional[List[CompatibleFamily]] = None
        self._presentations = [G.presentation() for G in groups]
        if all(p is not None for p in self._presentations):
            self.kind = LimitKind.FG_ABELIAN
            self._solve_lattice()
        elif all(G.is_finite for G in groups):
            self.kind = LimitKind.FINITE
        else:
            self.kind = LimitKind.CONSTRAINTS
            self.warnings.append("mixed diagram: only membership of families is decided")

    # Element API

    def identity(self) -> CompatibleFamily:
        return CompatibleFamily({n.name: n.grading.group.identity() for n in self.diagram.nodes})

    def multiply(self, a: CompatibleFamily, b: CompatibleFamily) -> CompatibleFamily:
        return CompatibleFamily({
            n.name: n.grading.group.multiply(a[n.name], b[n.name]) for n in self.diagram.nodes
        })

    def inverse(self, a: CompatibleFamily) -> CompatibleFamily:
        return CompatibleFamily({n.name: n.grading.group.inverse(a[n.name]) for n in self.diagram.nodes})

    def contains(self, fam: Union[CompatibleFamily, Mapping[str, Any]]) -> bool:
        return check_compatible_family(self.diagram, fam).valid

    def equal(self, a: CompatibleFamily, b: CompatibleFamily) -> bool:
        return all(a[name] == b[name] for name in self.diagram.names)

    # Abelian realization

    def _offsets(self) -> List[int]:
        offs, total = [], 0
        for p in self._presentations:
            offs.append(total)
            total += p.rank
        return offs + [total]

    def _solve_lattice(self):
        d = self.diagram
        offs = self._offsets()
        M = offs[-1]
        index = {n.name: i for i, n in enumerate(d.nodes)}
        pres = self._presentations

        blocks = []
        for e in d.edges:
            i, j = index[e.source], index[e.target]
            blocks.append((e, i, j))
        nrows = sum(pres[j].rank for _, _, j in blocks)
        nz = sum(len(pres[j].relations) for _, _, j in blocks)
        columns = [[0] * nrows for _ in range(M + nz)]
        row, zcol = 0, M
        for e, i, j in blocks:
            px, py = pres[i], pres[j]
            for k, gen in enumerate(px.generators()):
                image = py.coordinates(in_group(py.group, e.mu(gen)))
                for r, a in enumerate(image):
                    columns[offs[i] + k][row + r] += a
            for r in range(py.rank):
                columns[offs[j] + r][row + r] -= 1
            for rel in py.relations:
                for r, a in enumerate(rel):
                    columns[zcol][row + r] -= a
                zcol += 1
            row += py.rank

        if nrows == 0:
            solutions = [tuple(1 if a == k else 0 for a in range(M)) for k in range(M)]
        else:
            kernel, _ = lattice.hnf_with_transform([tuple(c) for c in columns], nrows)
            solutions = [k[:M] for k in kernel]
        self._relations = []
        for i, p in enumerate(pres):
            for rel in p.relations:
                v = [0] * M
                v[offs[i]:offs[i] + p.rank] = rel
                self._relations.append(tuple(v))
        self._dimension = M
        self._basis = lattice.hnf_columns(solutions, M)
        self.free_rank, self.torsion = lattice.quotient_structure(self._basis, self._relations)

    def family_of(self, coords: Sequence[int]) -> CompatibleFamily:
        offs = self._offsets()
        return CompatibleFamily({
            n.name: p.element(coords[offs[i]:offs[i + 1]])
            for i, (n, p) in enumerate(zip(self.diagram.nodes, self._presentations))
        })

    def coordinates_of(self, fam: CompatibleFamily) -> Tuple[int, ...]:
        out: List[int] = []
        for n, p in zip(self.diagram.nodes, self._presentations):
            out.extend(p.coordinates(in_group(p.group, fam[n.name])))
        return tuple(out)

    # Enumeration

    @property
    def is_enumerable(self) -> bool:
        return all(n.grading.group.is_finite for n in self.diagram.nodes)

    def elements(self) -> List[CompatibleFamily]:
        """
        All compatible families, by backtracking over nodes in order.

        Raises:
            UnsupportedError: for infinite nodes or when the search exceeds max_enum
        """
        if self._elements is not None:
            return self._elements
        if not self.is_enumerable:
            raise UnsupportedError("the limit group has infinite nodes and cannot be enumerated")
        d = self.diagram
        names = d.names
        domains = [n.grading.group.elements() for n in d.nodes]
        position = {name: i for i, name in enumerate(names)}
        checks: Dict[int, List] = {i: [] for i in range(len(names))}
        for e in d.edges:
            checks[max(position[e.source], position[e.target])].append(e)
        out: List[CompatibleFamily] = []
        budget = [0]

        def extend(i: int, chosen: Dict[str, GroupElement]):
            if i == len(names):
                out.append(CompatibleFamily(dict(chosen)))
                return
            for x in domains[i]:
                budget[0] += 1
                if budget[0] > self.max_enum:
                    raise UnsupportedError(f"limit group enumeration exceeds the bound {self.max_enum}")
                chosen[names[i]] = x
                if all(e.mu(chosen[e.source]) == chosen[e.target] for e in checks[i]):
                    extend(i + 1, chosen)
                del chosen[names[i]]

        extend(0, {})
        self._elements = out
        return out

    @property
    def order(self) -> Optional[int]:
        if self.kind == LimitKind.FG_ABELIAN:
            if self.free_rank:
                return None
            n = 1
            for t in self.torsion:
                n *= t
            return n
        if self.kind == LimitKind.FINITE:
            return len(self.elements())
        return None

    def generators(self) -> List[CompatibleFamily]:
        if self.kind == LimitKind.FG_ABELIAN:
            gens = [self.family_of(b) for b in self._basis if not lattice.contains(self._relation_basis(), b)]
            return gens
        if self.kind == LimitKind.FINITE:
            elements = self.elements()
            gens: List[CompatibleFamily] = []
            span = [self.identity()]
            for x in elements:
                if any(self.equal(x, y) for y in span):
                    continue
                gens.append(x)
                span = self._closure(gens)
                if len(span) == len(elements):
                    break
            return gens
        raise UnsupportedError("generators are not computed for mixed diagrams")

    def _relation_basis(self):
        return lattice.hnf_columns(self._relations, self._dimension)

    def _closure(self, gens: List[CompatibleFamily]) -> List[CompatibleFamily]:
        span = [self.identity()]
        frontier = list(span)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.multiply(x, g)
                    if not any(self.equal(y, z) for z in span):
                        span.append(y)
                        nxt.append(y)
            frontier = nxt
        return span

    def restriction_injective(self, names: Iterable[str]) -> Optional[bool]:
        """
        Whether a compatible family is determined by its entries at the given nodes.

        None when undecided (mixed diagrams).
        """
        keep = set(names)
        if self.kind == LimitKind.FG_ABELIAN:
            offs = self._offsets()
            rows = [r for i, n in enumerate(self.diagram.nodes) if n.name in keep for r in range(offs[i], offs[i + 1])]
            if not rows:
                return self.free_rank == 0 and not self.torsion
            kept_relations = [rel for rel in self._relations if any(rel[r] for r in rows)]
            columns = [tuple(b[r] for r in rows) for b in self._basis]
            columns += [tuple(-rel[r] for r in rows) for rel in kept_relations]
            kernel, _ = lattice.hnf_with_transform(columns, len(rows))
            relation_basis = self._relation_basis()
            for k in kernel:
                x = [0] * self._dimension
                for c, b in zip(k[:len(self._basis)], self._basis):
                    x = [a + c * v for a, v in zip(x, b)]
                if not lattice.contains(relation_basis, x):
                    return False
            return True
        if self.kind == LimitKind.FINITE or self.is_enumerable:
            ident = self.identity()
            trivial_on_keep = [x for x in self.elements() if all(x[n].is_identity() for n in keep)]
            return all(self.equal(x, ident) for x in trivial_on_keep)
        return None

    def to_json(self) -> dict:
        data: Dict[str, Any] = {"kind": self.kind.value, "nodes": self.diagram.names, "warnings": list(self.warnings)}
        if self.kind == LimitKind.FG_ABELIAN:
            data["free_rank"] = self.free_rank
            data["invariant_factors"] = list(self.torsion)
            data["order"] = self.order
            data["generators"] = [g.to_json() for g in self.generators()]
        elif self.kind == LimitKind.FINITE:
            data["order"] = self.order
            data["elements"] = [x.to_json() for x in self.elements()]
        else:
            data["constraints"] = len(self.diagram.edges)
        return data


def relative_pi1(d: GradingDiagram, max_enum: int = 10 ** 6) -> LimitGroup:
    """The group of compatible families of d."""
    return LimitGroup(d, max_enum)


# Restriction to a full subcategory

class MatchTier(Enum):
    """How a restricted component was identified with a node of the smaller diagram."""
    CONJUGATE = "conjugate"
    ISOMORPHIC = "isomorphic"


@dataclass
class KappaMatch:
    """Node X of the large diagram whose restricted component matches node `target`."""
    node: str
    target: str
    tier: MatchTier
    component: Grading
    back: GroupHom

    def to_json(self) -> dict:
        return {
            "node": self.node,
            "target": self.target,
            "tier": self.tier.value,
            "component_group": self.component.group.to_json(),
        }


@dataclass
class KappaReport:
    """Result of kappa_relative."""
    matches: List[KappaMatch] = field(default_factory=list)
    missing: List[str] = field(default_factory=list)
    unrealized: List[str] = field(default_factory=list)
    diagnostics: Dict[str, dict] = field(default_factory=dict)
    homomorphism: Optional[bool] = None
    injective: Optional[bool] = None
    warnings: List[str] = field(default_factory=list)

    @property
    def map_defined(self) -> bool:
        return not self.missing

    @property
    def criterion_holds(self) -> bool:
        return not self.missing and not self.unrealized

    def to_json(self) -> dict:
        return {
            "matches": [m.to_json() for m in self.matches],
            "missing": list(self.missing),
            "unrealized": list(self.unrealized),
            "diagnostics": dict(self.diagnostics),
            "map_defined": self.map_defined,
            "homomorphism": self.homomorphism,
            "injective": self.injective,
            "criterion_holds": self.criterion_holds,
            "warnings": list(self.warnings),
        }


def _match(component: Grading, dD: GradingDiagram, b0: str) -> Optional[Tuple[str, MatchTier, GroupHom]]:
    """Find a node of dD equal to component up to conjugation or isomorphism."""
    for n in dD.nodes:
        if n.grading.group != component.group:
            continue
        result = find_identityJ_morphism(component, n.grading, b0)
        if result and canonical_mu(result.morphism).is_identity():
            return n.name, MatchTier.CONJUGATE, canonical_mu(result.morphism)
    for n in dD.nodes:
        there = find_identityJ_morphism(component, n.grading, b0)
        if not there:
            continue
        back = find_identityJ_morphism(n.grading, component, b0)
        if not back:
            continue
        mu, nu = canonical_mu(there.morphism), canonical_mu(back.morphism)
        if mu.compose(nu).is_identity() and nu.compose(mu).is_identity():
            return n.name, MatchTier.ISOMORPHIC, nu
    return None


def kappa_map(report: KappaReport, dB: GradingDiagram, fam: CompatibleFamily) -> CompatibleFamily:
    """κ(σ)_X: the entry of σ at the node matched to X, carried back into Γ_X."""
    out = {}
    for m in report.matches:
        X = dB.grading(m.node)
        out[m.node] = in_group(X.group, m.back(in_group(m.back.source, fam[m.target])))
    return CompatibleFamily(out)


def kappa_relative(dB: GradingDiagram, objs: Union[ObjectSubset, Iterable[str]], dD: GradingDiagram,
                   max_enum: int = 10 ** 6) -> KappaReport:
    """
    Induced map from compatible families on D to compatible families on B.

    Every node X of dB is restricted to D, reduced to the connected component
    of the base object, and matched against the nodes of dD. Unrealized dD nodes
    get the diagnostic of extending them by trivial degrees.

    Raises:
        DomainError: if dD does not live on the full subcategory of dB on objs
    """
    cat = dB.category
    subset = object_subset(cat, objs)
    b0 = dB.base
    if b0 not in subset or dD.base != b0:
        raise DomainError(f"both diagrams must be based at {b0}, inside the object subset")
    if dD.category != full_subcategory(cat, subset):
        raise DomainError("the smaller diagram does not live on the full subcategory of the given objects")

    report = KappaReport(warnings=[RELATIVE_WARNING])
    for n in dB.nodes:
        component = base_component_grading(restrict_grading(n.grading, subset), b0).grading
        found = _match(component, dD, b0)
        if found is None:
            report.missing.append(n.name)
            continue
        target, tier, back = found
        report.matches.append(KappaMatch(n.name, target, tier, component, back))
        if tier == MatchTier.ISOMORPHIC:
            report.warnings.append(f"{n.name} matches {target} only up to isomorphism of groups")

    realized = {m.target for m in report.matches}
    report.unrealized = [name for name in dD.names if name not in realized]
    for name in report.unrealized:
        try:
            ext = extend_trivial(dD.grading(name), cat, subset)
        except PreconditionError as err:
            report.diagnostics[name] = {"extends": False, "reason": str(err)}
            continue
        if ext.ok:
            report.diagnostics[name] = {"extends": True, "reason": "extends by trivial degrees to a grading outside the diagram"}
        else:
            report.diagnostics[name] = {"extends": False, **ext.to_json()}
    if report.unrealized:
        report.warnings.append("injectivity criterion not established: unrealized nodes " + ", ".join(report.unrealized))
    if not report.map_defined:
        report.warnings.append("κ is undefined: no match for " + ", ".join(report.missing))
        return report

    LD, LB = relative_pi1(dD, max_enum), relative_pi1(dB, max_enum)
    report.homomorphism = _check_kappa(report, dB, LD, LB, max_enum)
    report.injective = LD.restriction_injective(realized)
    return report


def _check_kappa(report: KappaReport, dB: GradingDiagram, LD: LimitGroup, LB: LimitGroup, max_enum: int) -> Optional[bool]:
    def image(x):
        return kappa_map(report, dB, x)

    if not LB.equal(image(LD.identity()), LB.identity()):
        return False
    if LD.is_enumerable and len(LD.elements()) ** 2 <= max_enum:
        sample = LD.elements()
    elif LD.kind != LimitKind.CONSTRAINTS:
        sample = LD.generators()
    else:
        return None
    for x in sample:
        if not LB.contains(image(x)):
            report.warnings.append("κ sends a compatible family outside the limit")
            return False
    for x, y in itertools.product(sample, repeat=2):
        if not LB.equal(image(LD.multiply(x, y)), LB.multiply(image(x), image(y))):
            return False
    return True


@dataclass
class ChoiceReport:
    """Result of verify_choice_independence."""
    independent: bool
    mu: Optional[GroupHom]
    edge_order: List[int]
    detail: Optional[str] = None

    def __bool__(self) -> bool:
        return self.independent

    def to_json(self) -> dict:
        return {
            "independent": self.independent,
            "mu": self.mu.to_json() if self.mu is not None else None,
            "edge_order": list(self.edge_order),
            "detail": self.detail,
        }


def verify_choice_independence(g: Grading, objs: Optional[Iterable[str]] = None, b0: Optional[str] = None,
                               alt_tree_seed: int = 0) -> ChoiceReport:
    """
    Base components built from two spanning trees (default and seeded shuffle)
    are related by a morphism whose canonical μ is the identity.
    """
    cat = g.category
    b0 = cat.objects[0] if b0 is None else cat.check_object(b0)
    restricted = restrict_grading(g, objs) if objs is not None else g
    n = len(restricted.edges())
    order = list(range(n))
    random.Random(alt_tree_seed).shuffle(order)
    first = base_component_grading(restricted, b0).grading
    second = base_component_grading(restricted, b0, order).grading
    result = find_identityJ_morphism(first, second, b0)
    if not result:
        return ChoiceReport(False, None, order, result.obstruction.detail)
    mu = canonical_mu(result.morphism)
    return ChoiceReport(mu.is_identity(), mu, order, None if mu.is_identity() else "μ is not the identity")
