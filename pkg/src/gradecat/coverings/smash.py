"""
Smash-product coverings B#Z of a graded category.

Objects of B#Z are pairs (b, s); hom((b, s), (c, t)) is spanned by the
homogeneous vectors of hom(b, c) of degree t⁻¹s, so a vector of degree d
leaving (b, s) arrives at (c, s·d⁻¹). The grading group acts on B#Z by left
multiplication on the second coordinate.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from ..algebra.groups import GroupElement, in_group
from ..categories.fincat import (
    BasisRef,
    FinCategory,
    full_subcategory,
    hom_key,
    is_connected_category,
    object_graph,
)
from ..categories.grading import Grading
from ..errors import MalformedGradingError, UnsupportedError

SMASH_SEPARATOR = "⋊"

Point = Tuple[str, GroupElement]


def smash_indices(g: Grading, b: str, s: GroupElement, c: str, t: GroupElement) -> List[int]:
    """Indices of the homogeneous vectors of hom(b, c) of degree t⁻¹s."""
    G = g.group
    wanted = G.multiply(G.inverse(in_group(G, t)), in_group(G, s))
    return [i for i, d in enumerate(g.degrees[(b, c)]) if d == wanted]


def smash_hom(g: Grading, source: Point, target: Point) -> List[str]:
    """
    Basis of hom((b, s), (c, t)) in B#Z, as labels of homogeneous vectors of hom(b, c).

    Works for infinite groups too; nothing is materialized.
    """
    (b, s), (c, t) = source, target
    g.category.check_object(b)
    g.category.check_object(c)
    return [g.label(b, c, i) for i in smash_indices(g, b, s, c, t)]


@dataclass
class SmashCovering:
    """
    Materialized smash product with its covering functor.

    lifts[(x, y)][k] is the index of the homogeneous vector of the base hom-space
    that the k-th basis vector of hom(x, y) maps to; points projects objects.
    """
    grading: Grading
    category: FinCategory
    points: Dict[str, Point]
    names: Dict[Point, str]
    lifts: Dict[Tuple[str, str], Tuple[int, ...]]

    def name(self, b: str, s: GroupElement) -> str:
        return self.names[(b, in_group(self.grading.group, s))]

    def project(self, x: str) -> str:
        return self.points[x][0]

    def fibre(self, b: str) -> List[str]:
        return [x for x in self.category.objects if self.points[x][0] == b]

    def vector_map(self, x: str, y: str) -> List[Tuple]:
        """Images of the basis of hom(x, y) in canonical coordinates of the base hom-space."""
        b, c = self.project(x), self.project(y)
        return [self.grading.vector(b, c, i) for i in self.lifts[(x, y)]]

    def to_json(self) -> dict:
        return self.category.to_json()


def _object_label(b: str, s: GroupElement) -> str:
    return f"{b}{SMASH_SEPARATOR}{s.label}"


def smash_product(g: Grading, max_enum: int = 10 ** 6) -> SmashCovering:
    """
    Materialize B#Z.

    Args:
        g: a valid grading by a finite group
        max_enum: bound on the number of object pairs

    Raises:
        UnsupportedError: for infinite groups or oversized products
        MalformedGradingError: if a composite leaves its homogeneous component
    """
    G, cat, K = g.group, g.category, g.field
    if not G.is_finite:
        raise UnsupportedError(f"cannot materialize the smash product over the infinite group {G!r}; use smash_hom")
    n = len(cat.objects) * G.order
    if n * n > max_enum:
        raise UnsupportedError(f"smash product with {n} objects exceeds the enumeration bound {max_enum}")

    elements = G.elements()
    points: Dict[str, Point] = {}
    names: Dict[Point, str] = {}
    for b in cat.objects:
        for s in elements:
            label = _object_label(b, s)
            points[label] = (b, s)
            names[(b, s)] = label
    objects = tuple(points)

    homs: Dict[Tuple[str, str], Tuple[str, ...]] = {}
    lifts: Dict[Tuple[str, str], Tuple[int, ...]] = {}
    for x in objects:
        b, s = points[x]
        for y in objects:
            c, t = points[y]
            idx = tuple(smash_indices(g, b, s, c, t))
            lifts[(x, y)] = idx
            homs[(x, y)] = tuple(f"{g.label(b, c, i)}{SMASH_SEPARATOR}{s.label}" for i in idx)

    def restrict(x: str, y: str, vec: Sequence) -> Tuple:
        b, c = points[x][0], points[y][0]
        coords = g.homogeneous_coordinates(b, c, vec)
        keep = lifts[(x, y)]
        stray = [i for i in K.support(coords) if i not in keep]
        if stray:
            raise MalformedGradingError(
                f"{g.label(b, c, stray[0])} appears in a composite outside its degree; the grading is not valid")
        return tuple(coords[i] for i in keep)

    identities = {x: restrict(x, x, cat.identities[points[x][0]]) for x in objects}
    composition = {}
    for x in objects:
        b = points[x][0]
        for y in objects:
            c = points[y][0]
            if not lifts[(x, y)]:
                continue
            for z in objects:
                d = points[z][0]
                for j, gi in enumerate(lifts[(y, z)]):
                    for i, fi in enumerate(lifts[(x, y)]):
                        vec = cat.compose(g.vector(c, d, gi), g.vector(b, c, fi), b, c, d)
                        composition[(BasisRef(y, z, j), BasisRef(x, y, i))] = restrict(x, z, vec)
    smash = FinCategory(K, objects, homs, identities, composition)
    return SmashCovering(g, smash, points, names, lifts)


# Verification

@dataclass
class StarFailure:
    """The star map at fibre object x over base object b is not an isomorphism."""
    base_object: str
    fibre_object: str
    detail: str

    def to_json(self) -> dict:
        return {"base_object": self.base_object, "fibre_object": self.fibre_object, "detail": self.detail}


@dataclass
class CoveringReport:
    """Result of verify_covering."""
    failures: List[StarFailure] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.valid

    def to_json(self) -> dict:
        return {"valid": self.valid, "failures": [f.to_json() for f in self.failures]}


def verify_covering(cov: SmashCovering) -> CoveringReport:
    """
    Check that the projection induces isomorphisms on all stars and respects composition.

    For each fibre object x over b and each base object c, the vectors leaving x
    over hom(b, c) must map to a basis of hom(b, c); likewise for vectors entering x.
    """
    g, cat = cov.grading, cov.grading.category
    K = cat.field
    report = CoveringReport()
    smash = cov.category
    for x in smash.objects:
        b = cov.project(x)
        for c in cat.objects:
            n = cat.dim(b, c)
            out = [v for y in cov.fibre(c) for v in cov.vector_map(x, y)]
            if len(out) != n or K.rank(out, n) != n:
                report.failures.append(StarFailure(
                    b, x, f"outgoing vectors over {hom_key(b, c)}: {len(out)} images, dimension {n}"))
            m = cat.dim(c, b)
            inc = [v for y in cov.fibre(c) for v in cov.vector_map(y, x)]
            if len(inc) != m or K.rank(inc, m) != m:
                report.failures.append(StarFailure(
                    b, x, f"incoming vectors over {hom_key(c, b)}: {len(inc)} images, dimension {m}"))

    for (gref, fref), vec in smash.composition.items():
        x, y, z = fref.source, fref.target, gref.target
        b, c, d = cov.project(x), cov.project(y), cov.project(z)
        outer, inner, result = cov.lifts[(y, z)], cov.lifts[(x, y)], cov.lifts[(x, z)]
        if gref.index >= len(outer) or fref.index >= len(inner) or len(vec) != len(result):
            continue
        below = cat.compose(g.vector(c, d, outer[gref.index]), g.vector(b, c, inner[fref.index]), b, c, d)
        image = K.zeros(cat.dim(b, d))
        for k, a in enumerate(vec):
            if a:
                image = K.add(image, K.scale(a, g.vector(b, d, result[k])))
        if image != below:
            report.failures.append(StarFailure(
                b, x, f"{smash.label(gref)}∘{smash.label(fref)} does not lie over the composite in the base"))
    return report


def deck_action(cov: SmashCovering, q: GroupElement) -> Dict[str, str]:
    """Object permutation (b, s) ↦ (b, q·s) of the deck transformation q."""
    G = cov.grading.group
    q = in_group(G, q)
    return {x: cov.names[(b, G.multiply(q, s))] for x, (b, s) in cov.points.items()}


@dataclass
class DeckReport:
    """Freeness and transitivity of the deck group on every fibre."""
    free: bool
    transitive: bool
    functorial: bool
    detail: Optional[str] = None

    @property
    def valid(self) -> bool:
        return self.free and self.transitive and self.functorial

    def to_json(self) -> dict:
        return {"free": self.free, "transitive": self.transitive, "functorial": self.functorial, "detail": self.detail}


def verify_deck_action(cov: SmashCovering) -> DeckReport:
    """Check every deck transformation preserves lifts, acts freely and that fibres are single orbits."""
    G = cov.grading.group
    free, transitive, functorial = True, True, True
    detail = None
    for q in G.elements():
        perm = deck_action(cov, q)
        if not q.is_identity() and any(perm[x] == x for x in perm):
            free, detail = False, f"{q.label} fixes a fibre object"
        for (x, y), idx in cov.lifts.items():
            if cov.lifts[(perm[x], perm[y])] != idx:
                functorial, detail = False, f"{q.label} does not preserve hom({x}, {y})"
                break
    for b in cov.grading.category.objects:
        fibre = cov.fibre(b)
        orbit = {deck_action(cov, q)[fibre[0]] for q in G.elements()}
        if orbit != set(fibre):
            transitive, detail = False, f"fibre over {b} is not a single orbit"
    return DeckReport(free, transitive, functorial, detail)


@dataclass
class GaloisReport:
    """A smash covering is Galois when its total category is connected and the deck group acts simply transitively on the base fibre."""
    base_object: str
    connected: bool
    deck: DeckReport

    @property
    def galois(self) -> bool:
        return self.connected and self.deck.free and self.deck.transitive

    def __bool__(self) -> bool:
        return self.galois

    def to_json(self) -> dict:
        return {
            "base_object": self.base_object,
            "galois": self.galois,
            "connected": self.connected,
            "deck": self.deck.to_json(),
        }


def verify_galois(cov: SmashCovering, b0: str) -> GaloisReport:
    cov.grading.category.check_object(b0)
    return GaloisReport(b0, is_connected_category(cov.category), verify_deck_action(cov))


def connected_component(cov: SmashCovering, obj: str) -> FinCategory:
    """Full subcategory of the smash product on the connected component of obj."""
    smash = cov.category
    smash.check_object(obj)
    return full_subcategory(smash, nx.node_connected_component(object_graph(smash), obj))
