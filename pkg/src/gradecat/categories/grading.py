"""
Group gradings of finite linear categories.

A grading fixes, for every hom-space, a homogeneous basis (rows of an
invertible change of basis from the canonical basis) and a degree for each
homogeneous vector. Walks run right to left: the degree of e_k⋯e_1 is
d(e_k)^±⋯d(e_1)^±, with reversed steps contributing inverse degrees.
"""
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

import networkx as nx

from ..algebra.fields import Matrix, Vector
from ..algebra.groups import (
    Group,
    GroupElement,
    Subgroup,
    as_group,
    in_group,
    subgroup_generated,
    trivial_group,
)
from ..errors import DomainError, InvariantFailure, MalformedGradingError, PreconditionError
from .fincat import (
    FinCategory,
    HomKey,
    ObjectSubset,
    full_subcategory,
    hom_key,
    is_connected_category,
    is_convex,
    object_subset,
)


@dataclass(frozen=True)
class WalkEdge:
    """One homogeneous basis vector, seen as an edge source -> target."""
    source: str
    target: str
    index: int
    label: str
    degree: GroupElement


@dataclass
class Grading:
    """
    Grading of a FinCategory by a group.

    basis_change[(b, c)] row i is the i-th homogeneous vector of hom(b, c) in
    canonical coordinates; degrees[(b, c)][i] is its degree.
    """
    category: FinCategory
    group: Group
    basis_change: Dict[HomKey, Matrix]
    degrees: Dict[HomKey, Tuple[GroupElement, ...]]
    labels: Dict[HomKey, Tuple[str, ...]]
    _inverses: Dict[HomKey, Matrix] = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def build(
        cls,
        category: FinCategory,
        group: Group,
        degrees: Mapping[HomKey, Sequence],
        basis_change: Optional[Mapping[HomKey, Sequence[Sequence]]] = None,
        labels: Optional[Mapping[HomKey, Sequence[str]]] = None,
    ) -> "Grading":
        """
        Assemble a grading; missing basis changes are identities.

        Args:
            category: graded category
            group: grading group
            degrees: per hom-space, one group element (or payload) per basis vector
            basis_change: per hom-space, rows of homogeneous vectors
            labels: per hom-space, labels of homogeneous vectors

        Raises:
            MalformedGradingError: on shape mismatches
            DomainError: on degrees outside the group
        """
        K = category.field
        basis_change = basis_change or {}
        labels = labels or {}
        for key in list(degrees) + list(basis_change) + list(labels):
            if key not in category.homs:
                raise DomainError(f"hom-space {hom_key(*key)} refers to unknown objects")
        changes: Dict[HomKey, Matrix] = {}
        degs: Dict[HomKey, Tuple[GroupElement, ...]] = {}
        names: Dict[HomKey, Tuple[str, ...]] = {}
        for key, basis in category.homs.items():
            n = len(basis)
            rows = basis_change.get(key)
            if rows is None:
                rows = K.identity_matrix(n)
            rows = tuple(tuple(K.coerce(a) for a in r) for r in rows)
            if len(rows) != n or any(len(r) != n for r in rows):
                raise MalformedGradingError(f"change of basis for {hom_key(*key)} must be {n}x{n}")
            changes[key] = rows
            values = list(degrees.get(key, ()))
            if len(values) != n:
                raise MalformedGradingError(f"{hom_key(*key)} needs {n} degrees, got {len(values)}")
            degs[key] = tuple(
                in_group(group, d) if isinstance(d, GroupElement) else group.parse(d) for d in values
            )
            given = labels.get(key)
            if given is not None:
                if len(given) != n:
                    raise MalformedGradingError(f"{hom_key(*key)} needs {n} labels")
                names[key] = tuple(given)
            elif K.is_identity(rows):
                names[key] = basis
            else:
                names[key] = tuple(category.vector_label(key[0], key[1], r) for r in rows)
        return cls(category, group, changes, degs, names)

    @property
    def field(self):
        return self.category.field

    def vector(self, b: str, c: str, i: int) -> Vector:
        return self.basis_change[(b, c)][i]

    def degree(self, b: str, c: str, i: int) -> GroupElement:
        return self.degrees[(b, c)][i]

    def label(self, b: str, c: str, i: int) -> str:
        return self.labels[(b, c)][i]

    def inverse_transpose(self, b: str, c: str) -> Matrix:
        key = (b, c)
        if key not in self._inverses:
            K = self.field
            self._inverses[key] = K.inverse(K.transpose(self.basis_change[key]))
        return self._inverses[key]

    def homogeneous_coordinates(self, b: str, c: str, vec: Sequence) -> Vector:
        """Coordinates y of a canonical vector x = Σ y_i·(homogeneous vector i)."""
        if not vec:
            return ()
        return self.field.mat_vec(self.inverse_transpose(b, c), vec)

    def degree_of(self, b: str, c: str, vec: Sequence) -> Optional[GroupElement]:
        """The degree of vec if it is nonzero and homogeneous, otherwise None."""
        coords = self.homogeneous_coordinates(b, c, vec)
        found = {self.degrees[(b, c)][i] for i in self.field.support(coords)}
        return found.pop() if len(found) == 1 else None

    def edges(self) -> List[WalkEdge]:
        """Homogeneous basis vectors in canonical order."""
        out = []
        for b in self.category.objects:
            for c in self.category.objects:
                for i, d in enumerate(self.degrees[(b, c)]):
                    out.append(WalkEdge(b, c, i, self.labels[(b, c)][i], d))
        return out

    def with_degrees(self, group: Group, degrees: Mapping[HomKey, Sequence[GroupElement]]) -> "Grading":
        """Same homogeneous bases, new group and degrees."""
        degs = {key: tuple(in_group(group, d) for d in degrees[key]) for key in self.degrees}
        return Grading(self.category, group, dict(self.basis_change), degs, dict(self.labels))

    def to_json(self) -> dict:
        K = self.field
        data = {
            "group": self.group.to_json(),
            "degrees": {hom_key(*k): [d.to_json() for d in v] for k, v in self.degrees.items() if v},
        }
        changes = {
            hom_key(*k): [[K.format(a) for a in row] for row in rows]
            for k, rows in self.basis_change.items()
            if rows and not K.is_identity(rows)
        }
        if changes:
            data["basis_change"] = changes
        names = {}
        for k, rows in self.basis_change.items():
            if not rows:
                continue
            default = self.category.homs[k] if K.is_identity(rows) else tuple(
                self.category.vector_label(k[0], k[1], r) for r in rows)
            if self.labels[k] != default:
                names[hom_key(*k)] = list(self.labels[k])
        if names:
            data["labels"] = names
        return data


def trivial_grading(cat: FinCategory, group: Optional[Group] = None) -> Grading:
    """Every canonical basis vector homogeneous of trivial degree."""
    group = group or trivial_group()
    e = group.identity()
    return Grading.build(cat, group, {k: [e] * len(v) for k, v in cat.homs.items()})


def grading_equal(a: Grading, b: Grading) -> bool:
    """Equality of gradings ignoring the labels of homogeneous vectors."""
    return (
        a.category == b.category
        and a.group == b.group
        and a.basis_change == b.basis_change
        and a.degrees == b.degrees
    )


# Validation

class GradingViolationKind(Enum):
    """Grading axiom that failed."""
    COMPOSITE_DEGREE = "composite-degree"
    IDENTITY_DEGREE = "identity-degree"


@dataclass
class GradingViolation:
    """
    A failed grading axiom.

    For composites, outer∘inner has a nonzero component on target whose degree
    is found instead of expected.
    """
    kind: GradingViolationKind
    inner: Optional[str]
    outer: Optional[str]
    target: str
    expected: str
    found: str

    @property
    def composite(self) -> Tuple[str, str]:
        return (self.outer, self.inner)

    def to_json(self) -> dict:
        data = {
            "kind": self.kind.value,
            "target": self.target,
            "expected_degree": self.expected,
            "found_degree": self.found,
        }
        if self.kind == GradingViolationKind.COMPOSITE_DEGREE:
            data["composite"] = [self.outer, self.inner]
        return data


@dataclass
class GradingReport:
    """Result of validate_grading."""
    violations: List[GradingViolation] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"valid": self.valid, "violations": [v.to_json() for v in self.violations]}


def validate_grading(g: Grading) -> GradingReport:
    """
    Check that identities have trivial degree and that composites of
    homogeneous vectors land in the product degree.

    Raises:
        MalformedGradingError: if some change of basis is not invertible
    """
    cat, K, G = g.category, g.field, g.group
    for (b, c) in cat.homs:
        g.inverse_transpose(b, c)
    report = GradingReport()
    e = G.identity()

    for b in cat.objects:
        coords = g.homogeneous_coordinates(b, b, cat.identities[b])
        for i in K.support(coords):
            if g.degree(b, b, i) != e:
                report.violations.append(GradingViolation(
                    GradingViolationKind.IDENTITY_DEGREE, None, None,
                    g.label(b, b, i), e.label, g.degree(b, b, i).label))

    objs = cat.objects
    for b in objs:
        for c in objs:
            for i in range(cat.dim(b, c)):
                s = g.degree(b, c, i)
                f_vec = g.vector(b, c, i)
                for d in objs:
                    if not cat.dim(b, d):
                        continue
                    for j in range(cat.dim(c, d)):
                        t = g.degree(c, d, j)
                        expected = G.multiply(t, s)
                        composite = cat.compose(g.vector(c, d, j), f_vec, b, c, d)
                        coords = g.homogeneous_coordinates(b, d, composite)
                        for k in K.support(coords):
                            if g.degree(b, d, k) != expected:
                                report.violations.append(GradingViolation(
                                    GradingViolationKind.COMPOSITE_DEGREE,
                                    g.label(b, c, i), g.label(c, d, j), g.label(b, d, k),
                                    expected.label, g.degree(b, d, k).label))
    return report


# Walks

def walk_graph(g: Grading) -> nx.MultiDiGraph:
    """Objects as vertices, one edge per homogeneous basis vector carrying its degree."""
    graph = nx.MultiDiGraph()
    graph.add_nodes_from(g.category.objects)
    for e in g.edges():
        graph.add_edge(e.source, e.target, key=e.label, degree=e.degree)
    return graph


@dataclass
class ConjugationFamily:
    """One group element per object; base names the object whose entry anchors the family."""
    values: Dict[str, GroupElement]
    base: Optional[str] = None

    def __getitem__(self, b: str) -> GroupElement:
        try:
            return self.values[b]
        except KeyError:
            raise DomainError(f"conjugation family has no entry for object '{b}'")

    @property
    def at_base(self) -> Optional[GroupElement]:
        return self.values.get(self.base) if self.base is not None else None

    def inverse(self) -> "ConjugationFamily":
        return ConjugationFamily({b: x.inverse() for b, x in self.values.items()}, self.base)

    def to_json(self) -> dict:
        return {b: x.to_json() for b, x in self.values.items()}


@dataclass
class SpanningTree:
    """Breadth-first spanning tree of a walk graph: parent edge and direction per object."""
    root: str
    order: List[str]
    parent: Dict[str, Tuple[int, bool]]

    def tree_edges(self) -> set:
        return {i for i, _ in self.parent.values()}

    def degrees(self, edges: Sequence, degree_of, group: Group) -> Dict[str, GroupElement]:
        """
        Degrees v_b of the tree walks from the root, for a degree assignment on edges.

        Args:
            edges: the edge list the tree was built from
            degree_of: callable edge index -> GroupElement
            group: group of the degrees
        """
        v = {self.root: group.identity()}
        for b in self.order[1:]:
            index, forward = self.parent[b]
            e = edges[index]
            d = degree_of(index)
            if forward:
                v[b] = group.multiply(d, v[e.source])
            else:
                v[b] = group.multiply(group.inverse(d), v[e.target])
        return v


def spanning_tree(objects: Sequence[str], edges: Sequence[WalkEdge], root: str,
                  edge_order: Optional[Sequence[int]] = None) -> SpanningTree:
    """BFS spanning tree; edge_order (a permutation of edge indices) sets the scan order."""
    order_idx = list(edge_order) if edge_order is not None else list(range(len(edges)))
    if sorted(order_idx) != list(range(len(edges))):
        raise DomainError("edge order must be a permutation of the edge indices")
    parent: Dict[str, Tuple[int, bool]] = {}
    seen = {root}
    order = [root]
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for i in order_idx:
            e = edges[i]
            if e.source == x and e.target not in seen:
                parent[e.target] = (i, True)
                nxt = e.target
            elif e.target == x and e.source not in seen:
                parent[e.source] = (i, False)
                nxt = e.source
            else:
                continue
            seen.add(nxt)
            order.append(nxt)
            queue.append(nxt)
    if len(seen) != len(objects):
        raise DomainError("category is not connected")
    return SpanningTree(root, order, parent)


@dataclass
class WalkGroup:
    """Γ_{b0}: degrees of closed homogeneous walks at the base object."""
    base: str
    subgroup: Subgroup
    family: ConjugationFamily
    tree: SpanningTree
    generators: List[GroupElement]

    def __iter__(self):
        return iter((self.subgroup, self.family))

    def to_json(self) -> dict:
        return {
            "base_object": self.base,
            "subgroup": self.subgroup.to_json(),
            "family": self.family.to_json(),
        }


def _require_connected(cat: FinCategory):
    if not is_connected_category(cat):
        raise DomainError("category is not connected")


def walk_group(g: Grading, b0: str, edge_order: Optional[Sequence[int]] = None) -> WalkGroup:
    """
    Walk-degree subgroup at b0 and the tree-walk family v.

    Non-tree edges b -> c of degree s contribute generators v_c⁻¹·s·v_b.

    Raises:
        DomainError: if the category is disconnected or b0 is unknown
    """
    cat, G = g.category, g.group
    cat.check_object(b0)
    _require_connected(cat)
    edges = g.edges()
    tree = spanning_tree(cat.objects, edges, b0, edge_order)
    v = tree.degrees(edges, lambda i: edges[i].degree, G)
    used = tree.tree_edges()
    gens = [
        G.multiply(G.multiply(G.inverse(v[e.target]), e.degree), v[e.source])
        for i, e in enumerate(edges) if i not in used
    ]
    subgroup = subgroup_generated(G, gens)
    return WalkGroup(b0, subgroup, ConjugationFamily(v, b0), tree, gens)


@dataclass
class WalkCoset:
    """The set representative·subgroup."""
    representative: GroupElement
    subgroup: Subgroup

    def contains(self, x: GroupElement) -> bool:
        G = self.representative.group
        return self.subgroup.contains(G.multiply(G.inverse(self.representative), in_group(G, x)))

    def elements(self) -> List[GroupElement]:
        G = self.representative.group
        return [G.multiply(self.representative, in_group(G, h)) for h in self.subgroup.elements()]

    def to_json(self) -> dict:
        return {"representative": self.representative.to_json(), "subgroup": self.subgroup.to_json()}


def walk_degree_coset(g: Grading, b1: str, b2: str) -> WalkCoset:
    """Degrees of all homogeneous walks from b1 to b2."""
    g.category.check_object(b2)
    wg = walk_group(g, b1)
    G = g.group
    rep = G.multiply(wg.family[b2], G.inverse(wg.family[b1]))
    return WalkCoset(rep, wg.subgroup)


def is_connected_grading(g: Grading, b0: str) -> bool:
    return walk_group(g, b0).subgroup == g.group.carrier()


# Restriction, conjugation, components, extension

def restrict_grading(g: Grading, objs: Union[ObjectSubset, Iterable[str]]) -> Grading:
    """The same group and homogeneous data on the full subcategory on objs."""
    sub = full_subcategory(g.category, objs)
    keys = list(sub.homs)
    return Grading(
        sub, g.group,
        {k: g.basis_change[k] for k in keys},
        {k: g.degrees[k] for k in keys},
        {k: g.labels[k] for k in keys},
    )


def conjugate_grading(g: Grading, a: Union[ConjugationFamily, Mapping[str, GroupElement]]) -> Grading:
    """Same homogeneous bases; a vector b -> c of degree t gets degree a_c⁻¹·t·a_b."""
    family = a if isinstance(a, ConjugationFamily) else ConjugationFamily(dict(a))
    G = g.group
    values = {b: in_group(G, family[b]) for b in g.category.objects}
    degrees = {
        (b, c): tuple(G.multiply(G.multiply(G.inverse(values[c]), t), values[b]) for t in ds)
        for (b, c), ds in g.degrees.items()
    }
    return g.with_degrees(G, degrees)


class BaseComponent(NamedTuple):
    """Conjugating family v and the connected grading g′ over Γ_{b0}."""
    family: ConjugationFamily
    grading: Grading
    subgroup: Subgroup


def base_component_grading(g: Grading, b0: str, edge_order: Optional[Sequence[int]] = None) -> BaseComponent:
    """
    Grading of the connected component of (b0, 1) in the smash product.

    The conjugate of g by the tree-walk family v has all degrees in Γ_{b0};
    it is returned as a grading by Γ_{b0} itself.

    Raises:
        DomainError: if the category is disconnected
        InvariantFailure: if a conjugated degree leaves Γ_{b0}
    """
    wg = walk_group(g, b0, edge_order)
    conjugated = conjugate_grading(g, wg.family)
    group = as_group(wg.subgroup)
    for key, ds in conjugated.degrees.items():
        for d in ds:
            if not wg.subgroup.contains(d):
                raise InvariantFailure(f"degree {d.label} on {hom_key(*key)} lies outside the walk group")
    return BaseComponent(wg.family, conjugated.with_degrees(group, conjugated.degrees), wg.subgroup)


@dataclass
class ExtensionResult:
    """Outcome of extend_trivial: the extended grading, or the offending composites."""
    candidate: Grading
    violations: List[GradingViolation]
    warnings: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def grading(self) -> Optional[Grading]:
        return self.candidate if self.ok else None

    def to_json(self) -> dict:
        data = {"valid": self.ok, "violations": [v.to_json() for v in self.violations]}
        if self.ok:
            data["grading"] = self.candidate.to_json()
        return data


def extend_trivial(gD: Grading, cat: FinCategory, objs: Union[ObjectSubset, Iterable[str]]) -> ExtensionResult:
    """
    Extend a grading of the full subcategory on objs to cat by giving trivial
    degree to every canonical basis vector with source or target outside objs.

    The candidate is validated rather than assumed to be a grading. The
    extension is asserted connected only when gD itself is connected and cat
    is connected; a disconnected gD gives no connectivity guarantee.

    Raises:
        PreconditionError: if objs is not convex (witness attached)
        InvariantFailure: if gD is connected but the extension is not
        DomainError: if gD does not grade the full subcategory on objs
    """
    subset = object_subset(cat, objs)
    convex = is_convex(cat, subset)
    if not convex:
        f, g = convex.witness
        raise PreconditionError(f"object set is not convex: {g}∘{f} factors outside", witness=convex.witness)
    if gD.category != full_subcategory(cat, subset):
        raise DomainError("grading does not live on the full subcategory of the given objects")
    K, G = cat.field, gD.group
    e = G.identity()
    changes, degrees, labels = {}, {}, {}
    for key, basis in cat.homs.items():
        if key in gD.degrees:
            changes[key] = gD.basis_change[key]
            degrees[key] = gD.degrees[key]
            labels[key] = gD.labels[key]
        else:
            changes[key] = K.identity_matrix(len(basis))
            degrees[key] = tuple(e for _ in basis)
            labels[key] = basis
    candidate = Grading(cat, G, changes, degrees, labels)
    report = validate_grading(candidate)
    result = ExtensionResult(candidate, report.violations)
    if not result.ok:
        result.warnings.append(
            "extension by trivial degrees is not a grading: "
            + ", ".join(f"{v.outer}∘{v.inner}" for v in report.violations
                        if v.kind == GradingViolationKind.COMPOSITE_DEGREE)
        )
        return result
    if is_connected_category(cat):
        base = next(b for b in cat.objects if b in subset)
        if is_connected_grading(gD, base) and not is_connected_grading(candidate, base):
            raise InvariantFailure("extension of a connected grading is not connected")
    else:
        result.warnings.append("category is not connected; connectivity of the extension not checked")
    return result
