"""
Seeded random small instances for property runs.

Three shapes of category are drawn:

- radical-square-zero quiver categories, where every composite of two arrows
  is zero;
- path categories of a quiver modulo monomial relations, truncated at a small
  path length, so that arrow composites are nonzero paths;
- group algebras kC_n on one object, where every composite is nonzero.

Degrees are chosen on the generators (arrows, or the generator x of C_n) and
multiplied along composites, so instances are gradings by construction.
"""
import random
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from ..algebra.fields import FieldConfig
from ..algebra.groups import AbelianGroup, FiniteGroup, Group, GroupElement
from ..categories.fincat import BasisRef, FinCategory, HomKey
from ..categories.grading import ConjugationFamily, Grading

MAX_OBJECTS = 4
MAX_ARROWS = 6
MAX_PATH_LENGTH = 3
MAX_PATHS = 14
MAX_CYCLIC = 4

RADICAL_SQUARE_ZERO = "radical-square-zero"
MONOMIAL = "monomial"
GROUP_ALGEBRA = "group-algebra"
SHAPES = (RADICAL_SQUARE_ZERO, MONOMIAL, GROUP_ALGEBRA)

# Arrow indices of a path, first arrow first; () is an identity.
Word = Tuple[int, ...]


def _catalogue() -> Dict[str, Group]:
    groups: Dict[str, Group] = {f"C{n}": FiniteGroup.cyclic(n) for n in range(1, 9)}
    groups["Z2xZ2"] = AbelianGroup(0, (2, 2))
    groups["Z2xZ4"] = AbelianGroup(0, (2, 4))
    groups["S3"] = FiniteGroup.symmetric(3)
    groups["D4"] = FiniteGroup.dihedral(4)
    return groups


GROUPS: Dict[str, Group] = _catalogue()

FIELDS = (FieldConfig.rationals(), FieldConfig.prime(2), FieldConfig.prime(3))


def group_names(max_order: Optional[int] = None) -> List[str]:
    return [name for name, G in GROUPS.items() if max_order is None or G.order <= max_order]


@dataclass
class Instance:
    """One random graded category; index and seed reproduce it."""
    seed: int
    index: int
    group_name: str
    grading: Grading
    shape: str = RADICAL_SQUARE_ZERO

    @property
    def category(self) -> FinCategory:
        return self.grading.category

    @property
    def base(self) -> str:
        return self.grading.category.objects[0]

    def describe(self) -> str:
        cat = self.grading.category
        basis = sum(len(v) for v in cat.homs.values()) - len(cat.objects)
        return (f"#{self.index} {self.shape}, {len(cat.objects)} objects, {basis} non-identity basis vectors "
                f"over {self.group_name} ({cat.field})")


def instance_rng(seed: int, index: int) -> random.Random:
    return random.Random(seed * 1_000_003 + index)


def random_element(rng: random.Random, G: Group) -> GroupElement:
    return rng.choice(G.elements())


# Quivers with monomial relations

def _word_label(word: Word) -> str:
    return "".join(f"a{k}" for k in reversed(word))


@dataclass
class Quiver:
    """
    A quiver and the nonzero paths of its path category modulo monomial relations.

    paths[(b, c)] lists the words spanning hom(b, c), the identity word first on
    the diagonal. The set of nonzero words is closed under subwords, so the
    composite of two paths is their concatenation when that is listed and zero
    otherwise.
    """
    objects: List[str]
    arrows: List[Tuple[str, str]]
    paths: Dict[HomKey, List[Word]]

    def category(self, field: FieldConfig) -> FinCategory:
        homs = {key: [f"1{key[0]}" if not w else _word_label(w) for w in ws] for key, ws in self.paths.items()}
        index = {key: {w: i for i, w in enumerate(ws)} for key, ws in self.paths.items()}
        composites = {}
        for (b, c), inner in self.paths.items():
            for d in self.objects:
                for p in inner:
                    for q in self.paths.get((c, d), []):
                        if not p or not q:
                            continue
                        pos = index.get((b, d), {}).get(p + q)
                        if pos is not None:
                            composites[(homs[(c, d)][index[(c, d)][q]], homs[(b, c)][index[(b, c)][p]])] = \
                                field.unit(len(homs[(b, d)]), pos)
        identities = {b: field.unit(len(homs[(b, b)]), 0) for b in self.objects}
        return FinCategory.build(field, self.objects, homs, identities, composites)

    def grading(self, cat: FinCategory, G: Group, arrow_degrees: Sequence[GroupElement],
                changes: Optional[Dict[HomKey, list]] = None) -> Grading:
        """Degree of a path a_k∘…∘a_1 is d(a_k)·…·d(a_1)."""
        degrees = {}
        for key, ws in self.paths.items():
            ds = []
            for w in ws:
                d = G.identity()
                for k in w:
                    d = G.multiply(arrow_degrees[k], d)
                ds.append(d)
            degrees[key] = ds
        return Grading.build(cat, G, degrees, changes)


def quiver(objects: Sequence[str], arrows: Sequence[Tuple[str, str]], max_length: int = 1,
           killed: FrozenSet[Tuple[int, int]] = frozenset(), max_paths: Optional[int] = None) -> Quiver:
    """
    Nonzero paths of length at most max_length avoiding the killed arrow pairs.

    A pair (i, j) in killed sets a_j∘a_i = 0. Paths are added level by level and
    only when both their longest prefix and suffix are present; max_paths caps
    the number of non-identity paths.
    """
    objects = list(objects)
    arrows = list(arrows)
    paths: Dict[HomKey, List[Word]] = {(b, b): [()] for b in objects}
    present = set()
    level = []
    for k in range(len(arrows)):
        if max_paths is not None and len(present) >= max_paths:
            break
        level.append((k,))
        present.add((k,))
    for _ in range(max_length - 1):
        nxt = []
        for w in level:
            for k, (b, _) in enumerate(arrows):
                if b != arrows[w[-1]][1] or (w[-1], k) in killed:
                    continue
                word = w + (k,)
                if word[1:] not in present or (max_paths is not None and len(present) >= max_paths):
                    continue
                nxt.append(word)
                present.add(word)
        level = nxt
    for w in sorted(present, key=lambda w: (len(w), w)):
        key = (arrows[w[0]][0], arrows[w[-1]][1])
        paths.setdefault(key, []).append(w)
    return Quiver(objects, arrows, paths)


def random_quiver(rng: random.Random, max_objects: int = MAX_OBJECTS, max_arrows: int = MAX_ARROWS,
                  max_length: int = 1) -> Quiver:
    """
    Connected quiver; the first n-1 arrows join each new object to an earlier
    one in a random direction, the rest are placed anywhere, loops included.
    """
    n = rng.randint(1, max_objects)
    objects = [f"o{i}" for i in range(n)]
    arrows: List[Tuple[str, str]] = []
    for i in range(1, n):
        j = rng.randrange(i)
        arrows.append((objects[j], objects[i]) if rng.random() < 0.5 else (objects[i], objects[j]))
    extra = rng.randint(1 if n == 1 else 0, max(0, max_arrows - len(arrows)))
    for _ in range(extra):
        arrows.append((rng.choice(objects), rng.choice(objects)))
    killed = frozenset(
        (i, j) for i, (_, c) in enumerate(arrows) for j, (b, _) in enumerate(arrows)
        if c == b and rng.random() < 0.3
    )
    return quiver(objects, arrows, max_length, killed, MAX_PATHS)


def random_category(rng: random.Random, field: Optional[FieldConfig] = None,
                    max_objects: int = MAX_OBJECTS, max_arrows: int = MAX_ARROWS,
                    max_length: int = 1) -> FinCategory:
    """Connected quiver category; max_length 1 is radical-square-zero."""
    field = field or rng.choice(FIELDS)
    return random_quiver(rng, max_objects, max_arrows, max_length).category(field)


def random_quiver_grading(rng: random.Random, q: Quiver, cat: FinCategory, G: Group,
                          shear: float = 0.25) -> Grading:
    """
    Random arrow degrees multiplied along paths.

    Cross hom-spaces starting with two arrows are sometimes given equal arrow
    degrees and the sheared homogeneous basis (a, a+b).
    """
    degrees = [random_element(rng, G) for _ in q.arrows]
    K = cat.field
    changes = {}
    for (b, c), ws in q.paths.items():
        if b == c or len(ws) < 2 or len(ws[0]) != 1 or len(ws[1]) != 1 or rng.random() >= shear:
            continue
        degrees[ws[1][0]] = degrees[ws[0][0]]
        rows = [list(r) for r in K.identity_matrix(len(ws))]
        rows[1][0] = K.one
        changes[(b, c)] = rows
    return q.grading(cat, G, degrees, changes)


# Group algebras

def group_algebra(field: FieldConfig, n: int) -> FinCategory:
    """kC_n on one object u with basis 1u, x, x2, …, x{n-1} and x^i·x^j = x^(i+j mod n)."""
    labels = ["1u", "x"] + [f"x{i}" for i in range(2, n)]
    composites = {
        (labels[j], labels[i]): field.unit(n, (i + j) % n)
        for i in range(1, n) for j in range(1, n)
    }
    return FinCategory.build(field, ["u"], {("u", "u"): labels}, {"u": field.unit(n, 0)}, composites)


def group_algebra_grading(rng: random.Random, cat: FinCategory, G: Group) -> Grading:
    """x gets a random degree d with d^n = 1, and x^i gets d^i."""
    n = cat.dim("u", "u")
    roots = [x for x in G.elements() if G.power(x, n).is_identity()]
    d = rng.choice(roots)
    return Grading.build(cat, G, {("u", "u"): [G.power(d, i) for i in range(n)]})


def random_family(rng: random.Random, cat: FinCategory, G: Group, base_identity: bool = False) -> ConjugationFamily:
    values = {b: random_element(rng, G) for b in cat.objects}
    if base_identity:
        values[cat.objects[0]] = G.identity()
    return ConjugationFamily(values, cat.objects[0])


def random_instance(seed: int, index: int, groups: Optional[Sequence[str]] = None,
                    shapes: Optional[Sequence[str]] = None) -> Instance:
    """The index-th instance of a seeded run; groups and shapes are drawn from the catalogues."""
    rng = instance_rng(seed, index)
    name = rng.choice(list(groups or GROUPS))
    shape = rng.choice(list(shapes or SHAPES))
    G = GROUPS[name]
    field = rng.choice(FIELDS)
    if shape == GROUP_ALGEBRA:
        cat = group_algebra(field, rng.randint(2, MAX_CYCLIC))
        return Instance(seed, index, name, group_algebra_grading(rng, cat, G), shape)
    max_length = 1 if shape == RADICAL_SQUARE_ZERO else rng.randint(2, MAX_PATH_LENGTH)
    q = random_quiver(rng, max_length=max_length)
    cat = q.category(field)
    return Instance(seed, index, name, random_quiver_grading(rng, q, cat, G), shape)


def nonzero_composites(cat: FinCategory) -> List[Tuple[str, str]]:
    """Labels (g, f) of composable basis vectors, neither the first on its diagonal, with g∘f ≠ 0."""
    unit = {BasisRef(b, b, 0) for b in cat.objects}
    K = cat.field
    return sorted(
        (cat.label(g), cat.label(f)) for (g, f), vec in cat.composition.items()
        if g not in unit and f not in unit and not K.is_zero_vector(vec)
    )


def mutate_composite(rng: random.Random, cat: FinCategory) -> Tuple[FinCategory, Optional[Tuple[str, str]]]:
    """
    Copy of cat with one arrow composite g∘f replaced by a random nonzero vector.

    Returns (cat, None) when no two arrows compose into a nonzero hom-space.
    """
    K = cat.field
    unit = {BasisRef(b, b, 0) for b in cat.objects}
    candidates = [
        (g, f) for (g, f) in cat.composition
        if g not in unit and f not in unit and cat.dim(f.source, g.target)
    ]
    if not candidates:
        return cat, None
    g, f = rng.choice(sorted(candidates))
    n = cat.dim(f.source, g.target)
    vec = tuple(K.scalar(rng.randrange(3)) for _ in range(n))
    if K.is_zero_vector(vec):
        vec = K.unit(n, rng.randrange(n))
    composition = dict(cat.composition)
    composition[(g, f)] = vec
    mutated = FinCategory(K, cat.objects, dict(cat.homs), dict(cat.identities), composition)
    return mutated, (cat.label(g), cat.label(f))
