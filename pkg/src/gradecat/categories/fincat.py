"""
Finite linear categories presented by hom-space bases and composition
structure constants over an exact field.
"""
import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx

from ..algebra.fields import FieldConfig, Vector
from ..errors import DomainError, UnknownObjectError

HomKey = Tuple[str, str]


def hom_key(b: str, c: str) -> str:
    return f"{b}->{c}"


@dataclass(frozen=True, order=True)
class BasisRef:
    """The index-th canonical basis vector of hom(source, target)."""
    source: str
    target: str
    index: int


@dataclass
class FinCategory:
    """
    Finite-object, finite-dimensional linear category.

    homs holds an entry (possibly empty) for every ordered pair of objects.
    composition maps (g, f) to the coordinates of g∘f in hom(f.source, g.target)
    for every composable pair of basis vectors.
    """
    field: FieldConfig
    objects: Tuple[str, ...]
    homs: Dict[HomKey, Tuple[str, ...]]
    identities: Dict[str, Vector]
    composition: Dict[Tuple[BasisRef, BasisRef], Vector]

    @classmethod
    def build(
        cls,
        field: FieldConfig,
        objects: Sequence[str],
        homs: Mapping[HomKey, Sequence[str]],
        identities: Mapping[str, Vector],
        composites: Mapping[Tuple[str, str], Vector],
    ) -> "FinCategory":
        """
        Assemble a category from sparse data.

        Args:
            field: scalar field
            objects: object labels in canonical order
            homs: basis labels per (source, target); missing pairs are zero
            identities: identity vector per object
            composites: (g_label, f_label) -> coordinates of g∘f; unlisted
                composites are zero unless one factor is an identity basis vector

        Raises:
            DomainError: on unknown objects, duplicate labels or non-composable pairs
        """
        objects = tuple(objects)
        if len(set(objects)) != len(objects):
            raise DomainError("object labels are not unique")
        full: Dict[HomKey, Tuple[str, ...]] = {}
        for b in objects:
            for c in objects:
                full[(b, c)] = tuple(homs.get((b, c), ()))
        for key in homs:
            if key not in full:
                raise DomainError(f"hom-space {hom_key(*key)} refers to unknown objects")
        refs: Dict[str, BasisRef] = {}
        for (b, c), labels in full.items():
            for i, label in enumerate(labels):
                if label in refs:
                    raise DomainError(f"basis label '{label}' is used twice")
                refs[label] = BasisRef(b, c, i)
        for b in objects:
            if b not in identities:
                raise DomainError(f"object {b} has no identity")
            if len(identities[b]) != len(full[(b, b)]):
                raise DomainError(f"identity of {b} has the wrong length")

        composition: Dict[Tuple[BasisRef, BasisRef], Vector] = {}
        for (b, c), fs in full.items():
            for d in objects:
                n = len(full[(b, d)])
                for i, j in itertools.product(range(len(fs)), range(len(full[(c, d)]))):
                    composition[(BasisRef(c, d, j), BasisRef(b, c, i))] = field.zeros(n)

        units = _unit_refs(field, identities)
        for (g, f) in composition:
            implied = _implied(field, units, g, f, len(full[(f.source, g.target)]))
            if implied is not None:
                composition[(g, f)] = implied

        for (gl, fl), vec in composites.items():
            if gl not in refs or fl not in refs:
                raise DomainError(f"composite {gl}∘{fl} uses unknown basis labels")
            g, f = refs[gl], refs[fl]
            if f.target != g.source:
                raise DomainError(f"{gl}∘{fl} is not composable")
            if len(vec) != len(full[(f.source, g.target)]):
                raise DomainError(f"result of {gl}∘{fl} has the wrong length")
            composition[(g, f)] = tuple(vec)

        return cls(field, objects, full, {b: tuple(identities[b]) for b in objects}, composition)

    # Lookup

    def hom(self, b: str, c: str) -> Tuple[str, ...]:
        try:
            return self.homs[(b, c)]
        except KeyError:
            raise DomainError(f"unknown objects in hom({b}, {c})")

    def dim(self, b: str, c: str) -> int:
        return len(self.hom(b, c))

    def check_object(self, b: str) -> str:
        if b not in self.objects:
            raise UnknownObjectError(f"unknown object '{b}'")
        return b

    def refs(self) -> Iterator[BasisRef]:
        for b in self.objects:
            for c in self.objects:
                for i in range(len(self.homs[(b, c)])):
                    yield BasisRef(b, c, i)

    def label(self, ref: BasisRef) -> str:
        return self.homs[(ref.source, ref.target)][ref.index]

    def ref(self, label: str) -> BasisRef:
        for r in self.refs():
            if self.label(r) == label:
                return r
        raise DomainError(f"unknown basis label '{label}'")

    def identity(self, b: str) -> Vector:
        return self.identities[self.check_object(b)]

    # Composition

    def compose_basis(self, g: BasisRef, f: BasisRef) -> Vector:
        """Coordinates of g∘f."""
        try:
            return self.composition[(g, f)]
        except KeyError:
            raise DomainError(f"{self.label(g)}∘{self.label(f)} is not composable")

    def compose(self, g_vec: Sequence, f_vec: Sequence, b: str, c: str, d: str) -> Vector:
        """g∘f for g in hom(c, d) and f in hom(b, c), both given in canonical coordinates."""
        K = self.field
        out = K.zeros(self.dim(b, d))
        for j, gc in enumerate(g_vec):
            if not gc:
                continue
            for i, fc in enumerate(f_vec):
                if fc:
                    out = K.add(out, K.scale(gc * fc, self.composition[(BasisRef(c, d, j), BasisRef(b, c, i))]))
        return out

    def vector_label(self, b: str, c: str, vec: Sequence) -> str:
        """Readable linear combination such as "1u+x" or "2*f"."""
        K = self.field
        terms = []
        for i, a in enumerate(vec):
            if not a:
                continue
            name = self.homs[(b, c)][i]
            coeff = K.format(a)
            if coeff == "1":
                terms.append(name)
            elif coeff == "-1":
                terms.append(f"-{name}")
            else:
                terms.append(f"{coeff}*{name}")
        return "+".join(terms).replace("+-", "-") if terms else "0"

    # Serialization

    def implied_composite(self, g: BasisRef, f: BasisRef) -> Optional[Vector]:
        """The value of g∘f forced by an identity basis vector, if any."""
        units = _unit_refs(self.field, self.identities)
        return _implied(self.field, units, g, f, self.dim(f.source, g.target))

    def to_json(self) -> dict:
        K = self.field
        compose = []
        for (g, f), vec in sorted(self.composition.items(), key=lambda kv: (self.label(kv[0][0]), self.label(kv[0][1]))):
            implied = self.implied_composite(g, f)
            baseline = implied if implied is not None else K.zeros(len(vec))
            if tuple(vec) == baseline:
                continue
            compose.append({
                "g": self.label(g),
                "f": self.label(f),
                "result": self._sparse(f.source, g.target, vec),
            })
        return {
            "field": K.to_json(),
            "objects": list(self.objects),
            "homs": {hom_key(b, c): list(v) for (b, c), v in self.homs.items() if v},
            "identity": {b: self._sparse(b, b, self.identities[b]) for b in self.objects},
            "compose": compose,
        }

    def _sparse(self, b: str, c: str, vec: Sequence) -> List[List[str]]:
        return [[self.homs[(b, c)][i], self.field.format(a)] for i, a in enumerate(vec) if a]


def _unit_refs(field: FieldConfig, identities: Mapping[str, Vector]) -> Dict[str, BasisRef]:
    """Objects whose identity is a single basis vector with coefficient 1."""
    units = {}
    for b, vec in identities.items():
        support = field.support(vec)
        if len(support) == 1 and vec[support[0]] == field.one:
            units[b] = BasisRef(b, b, support[0])
    return units


def _implied(field: FieldConfig, units: Mapping[str, BasisRef], g: BasisRef, f: BasisRef, n: int) -> Optional[Vector]:
    if units.get(f.target) == g:
        return field.unit(n, f.index)
    if units.get(f.source) == f:
        return field.unit(n, g.index)
    return None


class ViolationKind(Enum):
    """Category axiom that failed."""
    ASSOCIATIVITY = "associativity"
    LEFT_IDENTITY = "left-identity"
    RIGHT_IDENTITY = "right-identity"
    CENTRALITY = "centrality"


@dataclass
class AxiomViolation:
    """One failed axiom instance; morphisms are listed in the order they are applied."""
    kind: ViolationKind
    morphisms: Tuple[str, ...]
    detail: str

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "morphisms": list(self.morphisms), "detail": self.detail}


@dataclass
class CategoryReport:
    """Result of validate_category."""
    violations: List[AxiomViolation] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"valid": self.valid, "violations": [v.to_json() for v in self.violations]}


@dataclass(frozen=True)
class ObjectSubset:
    """Nonempty set of objects of an ambient category."""
    objects: FrozenSet[str]

    def __contains__(self, b: str) -> bool:
        return b in self.objects

    def __iter__(self):
        return iter(sorted(self.objects))

    def __len__(self) -> int:
        return len(self.objects)


def object_subset(cat: FinCategory, objs: Union[ObjectSubset, Iterable[str]]) -> ObjectSubset:
    """
    Validate a set of objects of cat.

    Raises:
        DomainError: if empty
        UnknownObjectError: if not contained in cat's objects
    """
    labels = frozenset(objs.objects if isinstance(objs, ObjectSubset) else objs)
    if not labels:
        raise DomainError("object subset is empty")
    unknown = sorted(labels - set(cat.objects))
    if unknown:
        raise UnknownObjectError(f"unknown objects {unknown}")
    return ObjectSubset(labels)


@dataclass(frozen=True)
class Star:
    """All basis vectors leaving b followed by all basis vectors entering b."""
    obj: str
    outgoing: Tuple[BasisRef, ...]
    incoming: Tuple[BasisRef, ...]

    @property
    def dimension(self) -> int:
        return len(self.outgoing) + len(self.incoming)


@dataclass
class ConvexityResult:
    """Outcome of is_convex; witness is (f, g) with g∘f nonzero and factoring outside."""
    convex: bool
    witness: Optional[Tuple[str, str]] = None

    def __bool__(self) -> bool:
        return self.convex

    def to_json(self) -> dict:
        return {"convex": self.convex, "witness": list(self.witness) if self.witness else None}


def validate_category(cat: FinCategory) -> CategoryReport:
    """
    Check associativity on all basis triples, both identity laws and centrality
    of identities.

    Args:
        cat: category to check

    Returns:
        CategoryReport listing every violation
    """
    K = cat.field
    report = CategoryReport()
    objs = cat.objects

    for b in objs:
        ident = cat.identities[b]
        for c in objs:
            for i, label in enumerate(cat.homs[(b, c)]):
                e = K.unit(len(cat.homs[(b, c)]), i)
                if cat.compose(cat.identities[c], e, b, c, c) != e:
                    report.violations.append(AxiomViolation(
                        ViolationKind.LEFT_IDENTITY, (label,), f"1_{c}∘{label} != {label}"))
                if cat.compose(e, ident, b, b, c) != e:
                    report.violations.append(AxiomViolation(
                        ViolationKind.RIGHT_IDENTITY, (label,), f"{label}∘1_{b} != {label}"))
        for i, label in enumerate(cat.homs[(b, b)]):
            e = K.unit(len(cat.homs[(b, b)]), i)
            if cat.compose(ident, e, b, b, b) != cat.compose(e, ident, b, b, b):
                report.violations.append(AxiomViolation(
                    ViolationKind.CENTRALITY, (label,), f"1_{b} does not commute with {label}"))

    for a, b, c, d in itertools.product(objs, repeat=4):
        F, G, H = cat.homs[(a, b)], cat.homs[(b, c)], cat.homs[(c, d)]
        if not (F and G and H):
            continue
        for i, j, k in itertools.product(range(len(F)), range(len(G)), range(len(H))):
            f, g, h = BasisRef(a, b, i), BasisRef(b, c, j), BasisRef(c, d, k)
            left = cat.compose(cat.composition[(h, g)], K.unit(len(F), i), a, b, d)
            right = cat.compose(K.unit(len(H), k), cat.composition[(g, f)], a, c, d)
            if left != right:
                report.violations.append(AxiomViolation(
                    ViolationKind.ASSOCIATIVITY, (F[i], G[j], H[k]),
                    f"({H[k]}∘{G[j]})∘{F[i]} != {H[k]}∘({G[j]}∘{F[i]})"))
    return report


def object_graph(cat: FinCategory) -> nx.Graph:
    """Undirected graph on objects with an edge wherever a cross hom-space is nonzero."""
    graph = nx.Graph()
    graph.add_nodes_from(cat.objects)
    for (b, c), basis in cat.homs.items():
        if b != c and basis:
            graph.add_edge(b, c)
    return graph


def is_connected_category(cat: FinCategory) -> bool:
    if len(cat.objects) <= 1:
        return True
    return nx.is_connected(object_graph(cat))


def connected_components(cat: FinCategory) -> List[List[str]]:
    """Connected components, each in object order, ordered by their first object."""
    order = {b: i for i, b in enumerate(cat.objects)}
    comps = [sorted(c, key=order.get) for c in nx.connected_components(object_graph(cat))]
    return sorted(comps, key=lambda c: order[c[0]])


def full_subcategory(cat: FinCategory, objs: Union[ObjectSubset, Iterable[str]]) -> FinCategory:
    """
    Full subcategory on objs with the same bases and structure constants.

    Raises:
        DomainError: if objs is empty or names unknown objects
    """
    subset = object_subset(cat, objs)
    kept = tuple(b for b in cat.objects if b in subset)
    homs = {(b, c): cat.homs[(b, c)] for b in kept for c in kept}
    composition = {
        (g, f): vec for (g, f), vec in cat.composition.items()
        if f.source in subset and f.target in subset and g.target in subset
    }
    return FinCategory(cat.field, kept, homs, {b: cat.identities[b] for b in kept}, composition)


def is_convex(cat: FinCategory, objs: Union[ObjectSubset, Iterable[str]]) -> ConvexityResult:
    """
    Whether every composite D -> outside -> D of basis vectors vanishes.

    Returns:
        ConvexityResult, with the first offending pair (f, g) as witness
    """
    subset = object_subset(cat, objs)
    inside = [b for b in cat.objects if b in subset]
    outside = [x for x in cat.objects if x not in subset]
    K = cat.field
    for d in inside:
        for x in outside:
            for i in range(cat.dim(d, x)):
                f = BasisRef(d, x, i)
                for d2 in inside:
                    for j in range(cat.dim(x, d2)):
                        g = BasisRef(x, d2, j)
                        if not K.is_zero_vector(cat.compose_basis(g, f)):
                            return ConvexityResult(False, (cat.label(f), cat.label(g)))
    return ConvexityResult(True)


def star(cat: FinCategory, b: str) -> Star:
    cat.check_object(b)
    outgoing = tuple(BasisRef(b, y, i) for y in cat.objects for i in range(cat.dim(b, y)))
    incoming = tuple(BasisRef(y, b, i) for y in cat.objects for i in range(cat.dim(y, b)))
    return Star(b, outgoing, incoming)
