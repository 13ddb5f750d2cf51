"""
Brute-force oracles over finite groups.

None of these reuse the spanning-tree machinery; they enumerate walks, smash
objects and object maps directly, so they can be compared against it.
"""
import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

from ..algebra.groups import GroupElement, in_group
from ..categories.fincat import BasisRef, FinCategory
from ..categories.grading import Grading, base_component_grading
from ..coverings.morphisms import BaseAutomorphism, transport_grading
from ..coverings.smash import connected_component, smash_product, verify_covering
from ..errors import UnsupportedError

ObjectTables = Dict[str, Dict[str, str]]


def _require_finite(g: Grading, what: str):
    if not g.group.is_finite:
        raise UnsupportedError(f"{what} needs a finite grading group")


@dataclass
class WalkOracle:
    """Degrees of homogeneous walks b1 -> b2, found by breadth-first search on (object, degree)."""
    degrees: Set[GroupElement]
    length: int
    stabilized: bool


def walk_degrees(g: Grading, b1: str, b2: str, max_length: Optional[int] = None,
                 max_enum: int = 10 ** 6) -> WalkOracle:
    """
    Grow walks from b1 one step at a time, forward or backward along each
    homogeneous basis vector, until no new (object, degree) state appears.
    """
    _require_finite(g, "walk enumeration")
    G = g.group
    cat = g.category
    cat.check_object(b1)
    cat.check_object(b2)
    if len(cat.objects) * G.order > max_enum:
        raise UnsupportedError(f"walk enumeration exceeds the bound {max_enum}")
    edges = g.edges()
    seen = {(b1, G.identity())}
    frontier = set(seen)
    length = 0
    while frontier and (max_length is None or length < max_length):
        step = set()
        for (x, s) in frontier:
            for e in edges:
                if e.source == x:
                    step.add((e.target, G.multiply(e.degree, s)))
                if e.target == x:
                    step.add((e.source, G.multiply(G.inverse(e.degree), s)))
        frontier = step - seen
        seen |= frontier
        length += 1
    return WalkOracle({s for (x, s) in seen if x == b2}, length, not frontier)


@dataclass
class ComponentCheck:
    """Comparison of the component of (b0, 1) with the smash of the base component grading."""
    ok: bool
    failures: List[str] = field(default_factory=list)


def component_isomorphism(g: Grading, b0: str, max_enum: int = 10 ** 6) -> ComponentCheck:
    """
    The map (b, h) ↦ (b, h·v_b⁻¹) from B#g′ to the component of (b0, 1) in B#g
    must be a bijection on objects that preserves every hom-space over the base,
    and the deck group of the component must be Γ_{b0}.
    """
    _require_finite(g, "component comparison")
    G = g.group
    full = smash_product(g, max_enum)
    component = connected_component(full, full.name(b0, G.identity()))
    v, gp, subgroup = base_component_grading(g, b0)
    small = smash_product(gp, max_enum)
    check = ComponentCheck(True)

    def fail(msg: str):
        check.ok = False
        check.failures.append(msg)

    image = {}
    for x, (b, h) in small.points.items():
        image[x] = full.name(b, G.multiply(in_group(G, h), G.inverse(v[b])))
    if set(image.values()) != set(component.objects) or len(set(image.values())) != len(image):
        fail("objects of the component do not match the smash of the base component grading")
        return check
    for (x, y), idx in small.lifts.items():
        if full.lifts[(image[x], image[y])] != idx:
            fail(f"hom({x}, {y}) differs from hom({image[x]}, {image[y]})")
            break
    deck = {s for (b, s) in (full.points[z] for z in component.objects) if b == b0}
    if deck != {in_group(G, q) for q in subgroup.elements()}:
        fail("deck group of the component is not the walk-degree subgroup")
    for cov, name in ((full, "smash"), (small, "component smash")):
        if not verify_covering(cov).valid:
            fail(f"{name} is not a covering")
    return check


def exhaustive_morphisms(X: Grading, Xp: Grading, b0: str, J: Optional[BaseAutomorphism] = None,
                         max_enum: int = 10 ** 6) -> List[ObjectTables]:
    """
    All object maps H with F′H = JF between the smash products, found by fixing
    H(b0, 1) and propagating along every homogeneous vector.

    Only connected sources are supported: propagation from (b0, 1) must reach
    every smash object.
    """
    _require_finite(X, "morphism enumeration")
    _require_finite(Xp, "morphism enumeration")
    G, Gp = X.group, Xp.group
    target = transport_grading(Xp, J) if J is not None else Xp
    cat = X.category
    if len(cat.objects) * G.order * Gp.order > max_enum:
        raise UnsupportedError(f"morphism enumeration exceeds the bound {max_enum}")
    moves = []
    for e in X.edges():
        dp = target.degree_of(e.source, e.target, X.vector(e.source, e.target, e.index))
        if dp is None:
            return []
        moves.append((e.source, e.target, e.degree, dp))

    found: List[ObjectTables] = []
    for c in Gp.elements():
        H: Dict[Tuple[str, GroupElement], GroupElement] = {(b0, G.identity()): c}
        queue = [(b0, G.identity())]
        consistent = True
        while queue and consistent:
            b, s = queue.pop()
            t = H[(b, s)]
            for (src, dst, d, dp) in moves:
                steps = []
                if src == b:
                    steps.append(((dst, G.multiply(s, G.inverse(d))), Gp.multiply(t, Gp.inverse(dp))))
                if dst == b:
                    steps.append(((src, G.multiply(s, d)), Gp.multiply(t, dp)))
                for key, value in steps:
                    if key not in H:
                        H[key] = value
                        queue.append(key)
                    elif H[key] != value:
                        consistent = False
        if not consistent:
            continue
        if len(H) != len(cat.objects) * G.order:
            raise UnsupportedError("source smash product is not connected")
        found.append({
            b: {s.label: H[(b, s)].label for s in G.elements()} for b in cat.objects
        })
    return found


def associativity_holds(cat: FinCategory) -> bool:
    """Associativity on all basis triples, computed from the structure constants directly."""
    K = cat.field
    for a, b, c, d in itertools.product(cat.objects, repeat=4):
        for i, j, k in itertools.product(range(cat.dim(a, b)), range(cat.dim(b, c)), range(cat.dim(c, d))):
            f, g, h = BasisRef(a, b, i), BasisRef(b, c, j), BasisRef(c, d, k)
            n = cat.dim(a, d)
            left, right = list(K.zeros(n)), list(K.zeros(n))
            for m, coeff in enumerate(cat.composition[(h, g)]):
                if coeff:
                    left = [x + coeff * y for x, y in zip(left, cat.composition[(BasisRef(b, d, m), f)])]
            for m, coeff in enumerate(cat.composition[(g, f)]):
                if coeff:
                    right = [x + coeff * y for x, y in zip(right, cat.composition[(h, BasisRef(a, c, m))])]
            if left != right:
                return False
    return True
