"""
Groups used as grading groups and as deck groups of coverings.

Three realizations are supported: finite groups given by a Cayley table,
finite permutation groups, and finitely generated abelian groups
Z^r x Z/d_1 x ... x Z/d_k. Subgroups of any of them can be turned back into
groups (EmbeddedGroup), which is how walk-degree subgroups become grading
groups of their own.
"""
import itertools
import re
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from sympy.combinatorics import Permutation

from ..errors import DomainError, GroupError, NotAHomomorphismError, UnsupportedError
from . import lattice
from .lattice import IntVector


class GroupKind(Enum):
    """How a group is realized."""
    FINITE_TABLE = "finite-table"
    FINITE_PERMUTATION = "finite-permutation"
    FG_ABELIAN = "fg-abelian"
    SUBGROUP = "subgroup"


class GroupElement:
    """An element of a group; equality is group equality plus payload equality."""

    __slots__ = ("group", "payload")

    def __init__(self, group: "Group", payload: Any):
        self.group = group
        self.payload = payload

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.payload == other.payload and self.group == other.group

    def __hash__(self) -> int:
        return hash((self.group.key, self.payload))

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return self.group.multiply(self, other)

    def inverse(self) -> "GroupElement":
        return self.group.inverse(self)

    def is_identity(self) -> bool:
        return self.payload == self.group.identity().payload

    @property
    def label(self) -> str:
        return self.group.label(self)

    def to_json(self) -> Any:
        return self.group.payload_json(self)

    def __repr__(self) -> str:
        return f"GroupElement({self.label})"


@dataclass(frozen=True)
class AbelianPresentation:
    """
    Presentation Z^m / <relations> of an abelian group.

    basis holds lifts of the generators as integer vectors in the coordinates
    of the fg-abelian root group; relations are columns in generator coordinates.
    """
    group: "Group"
    basis: Tuple[IntVector, ...]
    relations: Tuple[IntVector, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def generators(self) -> List[GroupElement]:
        return [self.group.element(b) for b in self.basis]

    def coordinates(self, x: GroupElement) -> IntVector:
        coords = lattice.lattice_coordinates(self.basis, x.payload)
        if coords is None:
            raise DomainError(f"{x.label} is not an element of the presented group")
        return coords

    def element(self, coords: Sequence[int]) -> GroupElement:
        n = self.group.root.dimension
        v = [0] * n
        for c, b in zip(coords, self.basis):
            v = [a + c * e for a, e in zip(v, b)]
        return self.group.element(tuple(v))


class Group:
    """Common interface of all group realizations."""

    kind: GroupKind

    @property
    def key(self) -> tuple:
        return self._key

    @cached_property
    def _key(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other) -> bool:
        if not isinstance(other, Group):
            return NotImplemented
        return self is other or self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    @property
    def root(self) -> "Group":
        return self

    # Payload-level arithmetic, implemented by subclasses

    def _mul(self, p, q):
        raise NotImplementedError

    def _inv(self, p):
        raise NotImplementedError

    def _identity_payload(self):
        raise NotImplementedError

    def _canonical(self, payload):
        """Validate and canonicalize a payload; raise DomainError if invalid."""
        raise NotImplementedError

    # Element-level API

    def element(self, payload: Any) -> GroupElement:
        return GroupElement(self, self._canonical(payload))

    def identity(self) -> GroupElement:
        return GroupElement(self, self._identity_payload())

    def check(self, x: GroupElement) -> GroupElement:
        if not isinstance(x, GroupElement) or x.group != self:
            raise DomainError(f"{x!r} does not belong to {self}")
        return x

    def __contains__(self, x) -> bool:
        return isinstance(x, GroupElement) and x.group == self

    def multiply(self, x: GroupElement, y: GroupElement) -> GroupElement:
        self.check(x)
        self.check(y)
        return GroupElement(self, self._mul(x.payload, y.payload))

    def inverse(self, x: GroupElement) -> GroupElement:
        self.check(x)
        return GroupElement(self, self._inv(x.payload))

    def product(self, factors: Iterable[GroupElement]) -> GroupElement:
        result = self.identity()
        for f in factors:
            result = self.multiply(result, f)
        return result

    def power(self, x: GroupElement, n: int) -> GroupElement:
        self.check(x)
        if n < 0:
            x, n = self.inverse(x), -n
        result, base = self.identity(), x
        while n:
            if n & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            n >>= 1
        return result

    def conjugate(self, s: GroupElement, a: GroupElement) -> GroupElement:
        """a⁻¹ · s · a"""
        return self.multiply(self.multiply(self.inverse(a), s), a)

    @property
    def is_finite(self) -> bool:
        raise NotImplementedError

    @property
    def order(self) -> Optional[int]:
        raise NotImplementedError

    def elements(self) -> List[GroupElement]:
        raise NotImplementedError

    def generators(self) -> List[GroupElement]:
        raise NotImplementedError

    def is_abelian(self) -> bool:
        gens = self.generators()
        return all(self.multiply(x, y) == self.multiply(y, x) for x in gens for y in gens)

    def presentation(self) -> Optional[AbelianPresentation]:
        """Lattice presentation, available when the root group is fg-abelian."""
        return None

    def carrier(self) -> "Subgroup":
        """The set of elements of this group, as a subgroup of the root group."""
        raise NotImplementedError

    def label(self, x: GroupElement) -> str:
        raise NotImplementedError

    def parse(self, obj: Any) -> GroupElement:
        """Element from its JSON payload or label."""
        raise NotImplementedError

    def payload_json(self, x: GroupElement) -> Any:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


def _cycle_label(perm: Permutation) -> str:
    cycles = perm.cyclic_form
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cycles)


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Permutation from 1-based cycle notation such as "(1 2)(3 4)"."""
    stripped = text.replace(" ", "").replace(",", "")
    if stripped and not re.fullmatch(r"(\([0-9]*\))+", text.replace(" ", "").replace(",", "")):
        raise DomainError(f"'{text}' is not in cycle notation")
    cycles = []
    for m in _CYCLE.finditer(text):
        points = [int(t) - 1 for t in m.group(1).replace(",", " ").split()]
        if any(p < 0 or p >= degree for p in points):
            raise DomainError(f"cycle '{m.group(0)}' moves points outside 1..{degree}")
        if len(points) > 1:
            cycles.append(points)
    perm = Permutation(list(range(degree)))
    for c in cycles:
        perm = Permutation([c], size=degree) * perm
    return perm


class FiniteGroup(Group):
    """Finite group given by labels and a Cayley table (payload = element index)."""

    def __init__(
        self,
        labels: Sequence[str],
        table: Sequence[Sequence[int]],
        kind: GroupKind = GroupKind.FINITE_TABLE,
        degree: Optional[int] = None,
        permutation_generators: Optional[Sequence[str]] = None,
    ):
        """
        Build and exhaustively validate a finite group.

        Args:
            labels: element labels, unique
            table: table[i][j] is the index of labels[i]·labels[j]
            kind: FINITE_TABLE or FINITE_PERMUTATION
            degree: number of points (permutation groups only)
            permutation_generators: generators in cycle notation (permutation groups only)

        Raises:
            GroupError: if the table is not a group table
        """
        self.kind = kind
        self.labels = tuple(str(l) for l in labels)
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        self.degree = degree
        self.permutation_generators = tuple(permutation_generators or ())
        self._validate()
        self._index = {l: i for i, l in enumerate(self.labels)}

    def _validate(self):
        n = len(self.labels)
        if n == 0:
            raise GroupError("a group has at least one element")
        if len(set(self.labels)) != n:
            raise GroupError("element labels are not unique")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise GroupError(f"multiplication table must be {n}x{n}")
        if any(v < 0 or v >= n for row in self.table for v in row):
            raise GroupError("multiplication table refers to unknown elements")
        ids = [e for e in range(n)
               if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n))]
        if len(ids) != 1:
            raise GroupError("no unique identity element")
        self.e = ids[0]
        inverses = []
        for x in range(n):
            inv = [y for y in range(n) if self.table[x][y] == self.e and self.table[y][x] == self.e]
            if len(inv) != 1:
                raise GroupError(f"element {self.labels[x]} has no unique inverse")
            inverses.append(inv[0])
        self.inverses = tuple(inverses)
        t = self.table
        for x, y, z in itertools.product(range(n), repeat=3):
            if t[t[x][y]][z] != t[x][t[y][z]]:
                raise GroupError(
                    f"not associative: ({self.labels[x]}·{self.labels[y]})·{self.labels[z]}"
                )

    @classmethod
    def from_table(cls, labels: Sequence[str], table: Sequence[Sequence[int]]) -> "FiniteGroup":
        return cls(labels, table)

    @classmethod
    def from_permutations(cls, generators: Sequence[Union[str, Permutation]], degree: int) -> "FiniteGroup":
        """
        Permutation group generated by the given permutations of 1..degree.

        Elements are enumerated breadth-first from the identity and labelled in
        cycle notation. The product x·y is the composite x∘y (apply y first).
        """
        perms = [g if isinstance(g, Permutation) else parse_cycles(g, degree) for g in generators]
        perms = [Permutation(p.array_form + list(range(p.size, degree))) for p in perms]
        identity = Permutation(list(range(degree)))
        elements = [identity]
        index = {tuple(identity.array_form): 0}
        queue = deque([identity])
        while queue:
            x = queue.popleft()
            for g in perms:
                y = g * x  # sympy composes left to right, so this is x∘g
                key = tuple(y.array_form)
                if key not in index:
                    index[key] = len(elements)
                    elements.append(y)
                    queue.append(y)
        table = [[index[tuple((y * x).array_form)] for y in elements] for x in elements]
        return cls(
            [_cycle_label(p) for p in elements],
            table,
            kind=GroupKind.FINITE_PERMUTATION,
            degree=degree,
            permutation_generators=[_cycle_label(p) for p in perms],
        )

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        return cls([str(i) for i in range(n)], [[(i + j) % n for j in range(n)] for i in range(n)])

    @classmethod
    def symmetric(cls, n: int) -> "FiniteGroup":
        if n == 1:
            return cls.from_permutations([], 1)
        return cls.from_permutations(["(1 2)", "(" + " ".join(str(i) for i in range(1, n + 1)) + ")"], n)

    @classmethod
    def dihedral(cls, n: int) -> "FiniteGroup":
        """Symmetries of the n-gon (order 2n) acting on its vertices."""
        rotation = "(" + " ".join(str(i) for i in range(1, n + 1)) + ")"
        reflection = "".join(f"({i} {n + 1 - i})" for i in range(1, n // 2 + 1))
        return cls.from_permutations([rotation, reflection], n)

    @cached_property
    def _key(self) -> tuple:
        return ("finite", self.labels, self.table)

    def _mul(self, p, q):
        return self.table[p][q]

    def _inv(self, p):
        return self.inverses[p]

    def _identity_payload(self):
        return self.e

    def _canonical(self, payload):
        if isinstance(payload, bool) or not isinstance(payload, int) or not 0 <= payload < len(self.labels):
            raise DomainError(f"{payload!r} is not an element index of {self}")
        return payload

    @property
    def is_finite(self) -> bool:
        return True

    @property
    def order(self) -> int:
        return len(self.labels)

    def elements(self) -> List[GroupElement]:
        return [GroupElement(self, i) for i in range(len(self.labels))]

    def generators(self) -> List[GroupElement]:
        gens: List[GroupElement] = []
        span = {self.e}
        for i in range(len(self.labels)):
            if i not in span:
                gens.append(GroupElement(self, i))
                span = _closure(self, span | {i})
            if len(span) == len(self.labels):
                break
        return gens

    def carrier(self) -> "Subgroup":
        return Subgroup(self, members=frozenset(range(len(self.labels))))

    def label(self, x: GroupElement) -> str:
        return self.labels[x.payload]

    def parse(self, obj: Any) -> GroupElement:
        if isinstance(obj, str):
            if obj in self._index:
                return GroupElement(self, self._index[obj])
            if self.kind == GroupKind.FINITE_PERMUTATION:
                key = _cycle_label(parse_cycles(obj, self.degree))
                if key in self._index:
                    return GroupElement(self, self._index[key])
            raise DomainError(f"'{obj}' is not an element of {self}")
        return self.element(obj)

    def payload_json(self, x: GroupElement) -> Any:
        return self.labels[x.payload]

    def to_json(self) -> dict:
        if self.kind == GroupKind.FINITE_PERMUTATION:
            return {
                "kind": self.kind.value,
                "degree": self.degree,
                "generators": list(self.permutation_generators),
            }
        return {"kind": self.kind.value, "elements": list(self.labels), "table": [list(r) for r in self.table]}

    def __repr__(self) -> str:
        return f"FiniteGroup(order={len(self.labels)})"


def _closure(group: FiniteGroup, seeds: Iterable[int]) -> set:
    """Indices of the subgroup generated by the seed indices."""
    gens = list(seeds)
    span = {group.e}
    queue = deque([group.e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = group.table[x][g]
            if y not in span:
                span.add(y)
                queue.append(y)
    return span


class AbelianGroup(Group):
    """Z^free_rank x Z/d_1 x ... x Z/d_k with elements as reduced integer vectors."""

    kind = GroupKind.FG_ABELIAN

    def __init__(self, free_rank: int = 0, torsion: Sequence[int] = ()):
        if free_rank < 0:
            raise DomainError("free rank must be non-negative")
        mods = []
        for d in torsion:
            d = int(d)
            if d <= 0:
                raise DomainError(f"torsion modulus {d} must be positive")
            if d > 1:
                mods.append(d)
        self.free_rank = int(free_rank)
        self.torsion = tuple(mods)

    @classmethod
    def integers(cls) -> "AbelianGroup":
        return cls(1, ())

    @classmethod
    def cyclic(cls, n: int) -> "AbelianGroup":
        return cls(0, (n,))

    @classmethod
    def trivial(cls) -> "AbelianGroup":
        return cls(0, ())

    @property
    def dimension(self) -> int:
        return self.free_rank + len(self.torsion)

    @cached_property
    def _key(self) -> tuple:
        return ("abelian", self.free_rank, self.torsion)

    def reduce(self, v: Sequence[int]) -> IntVector:
        r = self.free_rank
        return tuple(int(a) for a in v[:r]) + tuple(int(a) % d for a, d in zip(v[r:], self.torsion))

    def torsion_columns(self) -> List[IntVector]:
        n, r = self.dimension, self.free_rank
        return [tuple(d if i == r + k else 0 for i in range(n)) for k, d in enumerate(self.torsion)]

    def _mul(self, p, q):
        return self.reduce([a + b for a, b in zip(p, q)])

    def _inv(self, p):
        return self.reduce([-a for a in p])

    def _identity_payload(self):
        return tuple(0 for _ in range(self.dimension))

    def _canonical(self, payload):
        if isinstance(payload, int) and not isinstance(payload, bool):
            payload = (payload,)
        try:
            v = tuple(payload)
        except TypeError:
            raise DomainError(f"{payload!r} is not an integer vector")
        if len(v) != self.dimension or any(isinstance(a, bool) or not isinstance(a, int) for a in v):
            raise DomainError(f"{payload!r} is not an element of {self}")
        return self.reduce(v)

    def power(self, x: GroupElement, n: int) -> GroupElement:
        self.check(x)
        return GroupElement(self, self.reduce([n * a for a in x.payload]))

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> Optional[int]:
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def elements(self) -> List[GroupElement]:
        if not self.is_finite:
            raise UnsupportedError(f"cannot enumerate the infinite group {self}")
        return [GroupElement(self, tuple(v)) for v in itertools.product(*(range(d) for d in self.torsion))]

    def generators(self) -> List[GroupElement]:
        n = self.dimension
        return [GroupElement(self, tuple(1 if i == j else 0 for i in range(n))) for j in range(n)]

    def is_abelian(self) -> bool:
        return True

    def presentation(self) -> AbelianPresentation:
        n = self.dimension
        basis = tuple(tuple(1 if i == j else 0 for i in range(n)) for j in range(n))
        return AbelianPresentation(self, basis, tuple(self.torsion_columns()))

    def carrier(self) -> "Subgroup":
        n = self.dimension
        return Subgroup(self, lattice_basis=tuple(tuple(1 if i == j else 0 for i in range(n)) for j in range(n)))

    def label(self, x: GroupElement) -> str:
        v = x.payload
        if len(v) == 1:
            return str(v[0])
        return "(" + ",".join(str(a) for a in v) + ")"

    def parse(self, obj: Any) -> GroupElement:
        if isinstance(obj, str):
            text = obj.strip()
            if text.startswith("(") and text.endswith(")"):
                text = text[1:-1]
            try:
                obj = [int(t) for t in text.split(",") if t.strip()]
            except ValueError:
                raise DomainError(f"'{obj}' is not an element of {self}")
        return self.element(obj)

    def payload_json(self, x: GroupElement) -> Any:
        return list(x.payload)

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __repr__(self) -> str:
        parts = (["Z"] * self.free_rank) + [f"Z/{d}" for d in self.torsion]
        return " x ".join(parts) if parts else "1"


class Subgroup:
    """
    Subgroup of a root group (FiniteGroup or AbelianGroup).

    Finite roots store the member indices. Abelian roots store the canonical
    Hermite basis of the lifted lattice L ⊆ Z^n, which always contains the
    torsion relations; the subgroup is L modulo those relations.
    """

    def __init__(self, ambient: Group, members: Optional[frozenset] = None,
                 lattice_basis: Optional[Tuple[IntVector, ...]] = None):
        self.ambient = ambient
        self.members = members
        self.lattice_basis = lattice_basis

    @property
    def data(self) -> tuple:
        if self.members is not None:
            return ("members", tuple(sorted(self.members)))
        return ("lattice", self.lattice_basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.ambient == other.ambient and self.data == other.data

    def __hash__(self) -> int:
        return hash((self.ambient.key, self.data))

    def contains_payload(self, payload) -> bool:
        if self.members is not None:
            return payload in self.members
        return lattice.contains(self.lattice_basis, payload)

    def contains(self, x: GroupElement) -> bool:
        return x.group.root == self.ambient and self.contains_payload(x.payload)

    def __contains__(self, x) -> bool:
        return isinstance(x, GroupElement) and self.contains(x)

    def is_whole(self) -> bool:
        return self == self.ambient.carrier()

    def is_trivial(self) -> bool:
        if self.members is not None:
            return len(self.members) == 1
        return all(not any(self.ambient.reduce(b)) for b in self.lattice_basis)

    def structure(self) -> Tuple[int, List[int]]:
        """(free rank, invariant factors) of an abelian subgroup."""
        if self.lattice_basis is None:
            raise DomainError("structure is only computed for abelian subgroups")
        return lattice.quotient_structure(self.lattice_basis, self.ambient.torsion_columns())

    def is_finite(self) -> bool:
        if self.members is not None:
            return True
        return self.structure()[0] == 0

    @property
    def order(self) -> Optional[int]:
        if self.members is not None:
            return len(self.members)
        free, torsion = self.structure()
        if free:
            return None
        n = 1
        for d in torsion:
            n *= d
        return n

    def index(self) -> Optional[int]:
        """Index in the root group, None when infinite."""
        if self.members is not None:
            return self.ambient.order // len(self.members)
        return lattice.index_in(self.ambient.carrier().lattice_basis, self.lattice_basis)

    def elements(self) -> List[GroupElement]:
        if self.members is not None:
            return [GroupElement(self.ambient, i) for i in sorted(self.members)]
        if not self.ambient.is_finite:
            raise UnsupportedError("cannot enumerate a subgroup of an infinite group")
        return [x for x in self.ambient.elements() if self.contains_payload(x.payload)]

    def generators(self) -> List[GroupElement]:
        if self.members is not None:
            gens: List[GroupElement] = []
            span = {self.ambient.e}
            for i in sorted(self.members):
                if i not in span:
                    gens.append(GroupElement(self.ambient, i))
                    span = _closure(self.ambient, span | {i})
            return gens
        out = []
        for b in self.lattice_basis:
            x = self.ambient.element(b)
            if not x.is_identity():
                out.append(x)
        return out

    def to_json(self) -> dict:
        data: Dict[str, Any] = {"generators": [g.to_json() for g in self.generators()], "index": self.index()}
        if self.members is not None:
            data["kind"] = "finite"
            data["order"] = len(self.members)
            data["elements"] = [x.label for x in self.elements()]
        else:
            free, torsion = self.structure()
            data["kind"] = "fg-abelian"
            data["free_rank"] = free
            data["torsion"] = torsion
        return data

    def __repr__(self) -> str:
        return f"Subgroup({[g.label for g in self.generators()]} of {self.ambient!r})"


class EmbeddedGroup(Group):
    """A subgroup viewed as a group; elements keep the payloads of the root group."""

    kind = GroupKind.SUBGROUP

    def __init__(self, subgroup: Subgroup):
        self.subgroup = subgroup
        self._root = subgroup.ambient

    @property
    def root(self) -> Group:
        return self._root

    @cached_property
    def _key(self) -> tuple:
        if self.subgroup.is_whole():
            return self._root.key
        return ("subgroup", self._root.key, self.subgroup.data)

    @property
    def dimension(self) -> int:
        return self._root.dimension

    def _mul(self, p, q):
        return self._root._mul(p, q)

    def _inv(self, p):
        return self._root._inv(p)

    def _identity_payload(self):
        return self._root._identity_payload()

    def _canonical(self, payload):
        p = self._root._canonical(payload)
        if not self.subgroup.contains_payload(p):
            raise DomainError(f"{payload!r} does not lie in {self.subgroup!r}")
        return p

    @property
    def is_finite(self) -> bool:
        return self.subgroup.is_finite()

    @property
    def order(self) -> Optional[int]:
        return self.subgroup.order

    def elements(self) -> List[GroupElement]:
        return [GroupElement(self, x.payload) for x in self.subgroup.elements()]

    def generators(self) -> List[GroupElement]:
        return [GroupElement(self, x.payload) for x in self.subgroup.generators()]

    def presentation(self) -> Optional[AbelianPresentation]:
        if self.subgroup.lattice_basis is None:
            return None
        basis = self.subgroup.lattice_basis
        relations = tuple(lattice.lattice_coordinates(basis, t) for t in self._root.torsion_columns())
        return AbelianPresentation(self, basis, relations)

    def carrier(self) -> Subgroup:
        return self.subgroup

    def label(self, x: GroupElement) -> str:
        return self._root.label(GroupElement(self._root, x.payload))

    def parse(self, obj: Any) -> GroupElement:
        return self.element(self._root.parse(obj).payload)

    def payload_json(self, x: GroupElement) -> Any:
        return self._root.payload_json(GroupElement(self._root, x.payload))

    def include(self, x: GroupElement) -> GroupElement:
        """The same element seen in the root group."""
        self.check(x)
        return GroupElement(self._root, x.payload)

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "ambient": self._root.to_json(),
            "generators": [g.to_json() for g in self.generators()],
        }

    def __repr__(self) -> str:
        return f"EmbeddedGroup({self.subgroup!r})"


def trivial_group() -> AbelianGroup:
    return AbelianGroup.trivial()


def as_group(subgroup: Subgroup) -> Group:
    """The subgroup as a group; the root itself when the subgroup is everything."""
    if subgroup.is_whole():
        return subgroup.ambient
    return EmbeddedGroup(subgroup)


def in_group(group: Group, x: GroupElement) -> GroupElement:
    """Re-home x (an element of a group with the same root) into group."""
    if x.group == group:
        return x
    if x.group.root != group.root:
        raise DomainError(f"{x.label} and {group!r} have different root groups")
    return group.element(x.payload)


def group_from_json(data: Mapping[str, Any]) -> Group:
    """Group from its JSON description; raises DomainError or KeyError on bad input."""
    kind = data["kind"]
    if kind == GroupKind.FG_ABELIAN.value:
        return AbelianGroup(int(data.get("free_rank", 0)), [int(d) for d in data.get("torsion", [])])
    if kind == GroupKind.FINITE_TABLE.value:
        return FiniteGroup(data["elements"], data["table"])
    if kind == GroupKind.FINITE_PERMUTATION.value:
        return FiniteGroup.from_permutations(list(data["generators"]), int(data["degree"]))
    if kind == GroupKind.SUBGROUP.value:
        ambient = group_from_json(data["ambient"])
        gens = [ambient.parse(g) for g in data.get("generators", [])]
        return EmbeddedGroup(subgroup_generated(ambient, gens))
    raise DomainError(f"unknown group kind '{kind}'")


# Subgroups

def subgroup_generated(group: Group, gens: Sequence[GroupElement]) -> Subgroup:
    """
    Smallest subgroup of group containing gens, as a subgroup of the root.

    Raises:
        DomainError: if a generator does not belong to group
    """
    root = group.root
    payloads = []
    for g in gens:
        if not isinstance(g, GroupElement) or g.group.root != root:
            raise DomainError(f"{g!r} does not belong to {group!r}")
        if g.group != group and group is not root and not group.carrier().contains_payload(g.payload):
            raise DomainError(f"{g.label} does not belong to {group!r}")
        payloads.append(g.payload)
    if isinstance(root, FiniteGroup):
        return Subgroup(root, members=frozenset(_closure(root, payloads)))
    columns = [tuple(p) for p in payloads] + root.torsion_columns()
    return Subgroup(root, lattice_basis=lattice.hnf_columns(columns, root.dimension))


# Homomorphisms

class GroupHom:
    """
    Verified homomorphism between groups.

    Sources with an abelian presentation are stored by the images of the
    presentation generators; other (finite) sources by a full element table.
    """

    def __init__(self, source: Group, target: Group,
                 table: Optional[Dict[Any, Any]] = None,
                 images: Optional[Tuple[Any, ...]] = None):
        self.source = source
        self.target = target
        self.table = table
        self.images = images

    def __call__(self, x: GroupElement) -> GroupElement:
        self.source.check(x)
        if self.table is not None:
            return GroupElement(self.target, self.table[x.payload])
        pres = self.source.presentation()
        coords = pres.coordinates(x)
        result = self.target.identity()
        for c, img in zip(coords, self.images):
            if c:
                result = self.target.multiply(result, self.target.power(GroupElement(self.target, img), c))
        return result

    def generator_images(self) -> List[Tuple[GroupElement, GroupElement]]:
        pres = self.source.presentation()
        gens = pres.generators() if pres is not None else self.source.generators()
        return [(g, self(g)) for g in gens]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupHom):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        return all(self(g) == other(g) for g, _ in self.generator_images())

    def __hash__(self) -> int:
        return hash((self.source.key, self.target.key, tuple(y.payload for _, y in self.generator_images())))

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """self ∘ inner"""
        if inner.target != self.source:
            raise DomainError("homomorphisms are not composable")
        return hom_build(inner.source, self.target, lambda x: self(inner(x)))

    def is_identity(self) -> bool:
        return self.source == self.target and all(g == y for g, y in self.generator_images())

    def image(self) -> Subgroup:
        return subgroup_generated(self.target, [y for _, y in self.generator_images()])

    def is_surjective(self) -> bool:
        return is_surjective(self)

    def is_injective(self) -> bool:
        if self.source.is_finite:
            images = {self(x).payload for x in self.source.elements()}
            return len(images) == self.source.order
        src, dst = self.source.presentation(), self.target.presentation()
        if dst is None:
            return False
        columns = [dst.coordinates(y) for _, y in self.generator_images()]
        kernel = presentation_kernel(columns, dst.relations, dst.rank)
        relation_lattice = lattice.hnf_columns(src.relations, src.rank)
        return all(lattice.contains(relation_lattice, k) for k in kernel)

    def to_json(self) -> dict:
        pairs = self.generator_images()
        return {
            "generators": [g.label for g, _ in pairs],
            "images": [y.label for _, y in pairs],
        }

    def __repr__(self) -> str:
        body = ", ".join(f"{g.label}->{y.label}" for g, y in self.generator_images())
        return f"GroupHom({body})"


def presentation_kernel(columns: Sequence[IntVector], target_relations: Sequence[IntVector], target_rank: int) -> List[IntVector]:
    """
    Lattice of x with A·x in the relation lattice of the target.

    Args:
        columns: images of the source generators in target coordinates (A's columns)
        target_relations: relation columns of the target presentation
        target_rank: number of target generators
    """
    m = len(columns)
    kernel, _ = lattice.hnf_with_transform(list(columns) + [tuple(-a for a in r) for r in target_relations], target_rank)
    return [k[:m] for k in kernel if any(k[:m])]


def _to_element(group: Group, value: Any) -> GroupElement:
    if isinstance(value, GroupElement):
        return in_group(group, value)
    return group.parse(value)


def _verify_table(source: Group, target: Group, table: Dict[Any, Any]):
    elems = source.elements()
    for x in elems:
        for y in elems:
            xy = source.multiply(x, y)
            lhs = table[xy.payload]
            rhs = target._mul(table[x.payload], table[y.payload])
            if lhs != rhs:
                raise NotAHomomorphismError(
                    f"h({x.label}·{y.label}) != h({x.label})·h({y.label})",
                    pair=(x.label, y.label),
                )


def _verify_presentation(source: Group, target: Group, images: Tuple[Any, ...]):
    pres = source.presentation()
    imgs = [GroupElement(target, p) for p in images]
    for i, a in enumerate(imgs):
        for b in imgs[i + 1:]:
            if target.multiply(a, b) != target.multiply(b, a):
                raise NotAHomomorphismError(
                    f"images {a.label} and {b.label} of commuting generators do not commute",
                    pair=(a.label, b.label),
                )
    gens = pres.generators()
    for rel in pres.relations:
        value = target.product(target.power(img, c) for img, c in zip(imgs, rel) if c)
        if not value.is_identity():
            word = " + ".join(f"{c}*{g.label}" for g, c in zip(gens, rel) if c)
            raise NotAHomomorphismError(f"relation {word} = 0 maps to {value.label}",
                                        pair=(word, value.label))


def hom_build(source: Group, target: Group, assignment: Union[Mapping, Callable, Sequence]) -> GroupHom:
    """
    Build and verify a homomorphism.

    Args:
        source: source group
        target: target group
        assignment: a mapping element -> image (all elements for table sources,
            at least the presentation generators otherwise), a callable, or a
            sequence of images of the source's canonical generators

    Returns:
        Verified GroupHom

    Raises:
        NotAHomomorphismError: when multiplicativity fails, naming the pair
        DomainError: when the assignment does not cover the source
    """
    pres = source.presentation()

    def lookup(x: GroupElement) -> GroupElement:
        if callable(assignment) and not isinstance(assignment, Mapping):
            return _to_element(target, assignment(x))
        keys = [x, x.payload, x.label]
        if isinstance(x.payload, tuple) and len(x.payload) == 1:
            keys.append(x.payload[0])
        for key in keys:
            try:
                if key in assignment:
                    return _to_element(target, assignment[key])
            except TypeError:
                continue
        raise DomainError(f"assignment does not cover {x.label}")

    if isinstance(assignment, Sequence) and not isinstance(assignment, (str, Mapping)):
        gens = pres.generators() if pres is not None else source.generators()
        if len(assignment) != len(gens):
            raise DomainError(f"expected {len(gens)} generator images, got {len(assignment)}")
        if pres is None:
            return hom_from_family(source, target, gens, [_to_element(target, a) for a in assignment])
        images = tuple(_to_element(target, a).payload for a in assignment)
        hom = GroupHom(source, target, images=images)
    elif pres is None:
        table = {x.payload: lookup(x).payload for x in source.elements()}
        hom = GroupHom(source, target, table=table)
    else:
        if isinstance(assignment, Mapping) and source.is_finite:
            table = {x.payload: lookup(x).payload for x in source.elements()}
            _verify_table(source, target, table)
        images = tuple(lookup(g).payload for g in pres.generators())
        hom = GroupHom(source, target, images=images)

    if hom.table is not None:
        _verify_table(source, target, hom.table)
    else:
        _verify_presentation(source, target, hom.images)
        if source.is_finite and source.order * source.order <= 10 ** 6:
            _verify_table(source, target, {x.payload: hom(x).payload for x in source.elements()})
    return hom


def hom_from_family(source: Group, target: Group, gens: Sequence[GroupElement], images: Sequence[GroupElement]) -> GroupHom:
    """
    Homomorphism determined by the images of a generating family.

    Raises:
        NotAHomomorphismError: if no homomorphism sends gens to images
        DomainError: if gens do not generate the source
    """
    if len(gens) != len(images):
        raise DomainError("generators and images differ in length")
    gens = [_to_element(source, g) for g in gens]
    images = [_to_element(target, y) for y in images]
    pres = source.presentation()
    if pres is None:
        table: Dict[Any, Any] = {source.identity().payload: target.identity().payload}
        queue = deque([source.identity()])
        while queue:
            x = queue.popleft()
            hx = GroupElement(target, table[x.payload])
            for g, y in zip(gens, images):
                xg = source.multiply(x, g)
                value = target.multiply(hx, y).payload
                if xg.payload not in table:
                    table[xg.payload] = value
                    queue.append(xg)
                elif table[xg.payload] != value:
                    raise NotAHomomorphismError(
                        f"inconsistent images for {xg.label} = {x.label}·{g.label}",
                        pair=(x.label, g.label),
                    )
        if len(table) != source.order:
            raise DomainError("the family does not generate the source group")
        _verify_table(source, target, table)
        return GroupHom(source, target, table=table)

    for i, a in enumerate(images):
        for b in images[i + 1:]:
            if target.multiply(a, b) != target.multiply(b, a):
                raise NotAHomomorphismError(
                    f"images {a.label} and {b.label} do not commute", pair=(a.label, b.label))
    columns = [pres.coordinates(g) for g in gens] + list(pres.relations)
    own = []
    for j in range(pres.rank):
        unit = tuple(1 if i == j else 0 for i in range(pres.rank))
        w = lattice.solve_integer(columns, pres.rank, unit)
        if w is None:
            raise DomainError("the family does not generate the source group")
        own.append(target.product(target.power(y, c) for y, c in zip(images, w[:len(gens)]) if c).payload)
    hom = GroupHom(source, target, images=tuple(own))
    _verify_presentation(source, target, hom.images)
    for g, y in zip(gens, images):
        if hom(g) != y:
            raise NotAHomomorphismError(f"{g.label} cannot map to {y.label}", pair=(g.label, y.label))
    return hom


def identity_hom(group: Group) -> GroupHom:
    return hom_build(group, group, lambda x: x)


def trivial_hom(source: Group, target: Group) -> GroupHom:
    return hom_build(source, target, lambda x: target.identity())


def is_surjective(h: GroupHom) -> bool:
    """True iff the image of h is the whole target."""
    return h.image() == h.target.carrier()


def conjugation_hom(group: Group, a: GroupElement) -> GroupHom:
    """The automorphism s ↦ a⁻¹·s·a."""
    group.check(a)
    return hom_build(group, group, lambda s: group.conjugate(s, a))
