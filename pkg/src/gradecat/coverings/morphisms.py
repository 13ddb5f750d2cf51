"""
Morphisms between smash coverings B#X -> B#X′ over a base automorphism J.

Every such morphism sends (b, s) to (b, λ(s)·h_b) for a group map λ and one
offset h_b per object, so it is stored as the pair (λ, h). A vector of
X-degree d from b to c whose J-image has X′-degree d′ forces

    h_c = λ(d)·h_b·d′⁻¹

which is the transport rule used by the search and by verification.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Mapping, Optional, Sequence

from ..algebra.fields import Matrix
from ..algebra.groups import (
    Group,
    GroupElement,
    GroupHom,
    hom_build,
    hom_from_family,
    identity_hom,
    in_group,
)
from ..categories.fincat import FinCategory, HomKey, hom_key
from ..categories.grading import (
    ConjugationFamily,
    Grading,
    conjugate_grading,
    is_connected_grading,
    spanning_tree,
    walk_group,
)
from ..errors import (
    DomainError,
    InvariantFailure,
    NotAHomomorphismError,
    PreconditionError,
    TheoremViolation,
    UnsupportedError,
)

IDENTITY_J = "identity"


# Base automorphisms

@dataclass
class BaseAutomorphism:
    """
    Identity-on-objects linear automorphism J of the base category.

    matrices[(b, c)] row i is J(e_i) in canonical coordinates of hom(b, c).
    """
    name: str
    category: FinCategory
    matrices: Dict[HomKey, Matrix]

    @classmethod
    def identity(cls, cat: FinCategory) -> "BaseAutomorphism":
        K = cat.field
        return cls(IDENTITY_J, cat, {k: K.identity_matrix(len(v)) for k, v in cat.homs.items()})

    @classmethod
    def build(cls, cat: FinCategory, matrices: Mapping[HomKey, Sequence[Sequence]], name: str = "J") -> "BaseAutomorphism":
        """
        Assemble and check J; hom-spaces without a matrix are mapped identically.

        Raises:
            DomainError: if J is not an invertible functor that fixes objects
        """
        K = cat.field
        full = {}
        for key, basis in cat.homs.items():
            rows = matrices.get(key)
            if rows is None:
                full[key] = K.identity_matrix(len(basis))
                continue
            rows = tuple(tuple(K.coerce(a) for a in r) for r in rows)
            if len(rows) != len(basis) or any(len(r) != len(basis) for r in rows):
                raise DomainError(f"matrix of {name} on {hom_key(*key)} must be {len(basis)}x{len(basis)}")
            full[key] = rows
        for key in matrices:
            if key not in cat.homs:
                raise DomainError(f"{name} refers to unknown hom-space {hom_key(*key)}")
        J = cls(name, cat, full)
        problems = J.problems()
        if problems:
            raise DomainError(f"{name} is not a base automorphism: {problems[0]}")
        return J

    def apply(self, b: str, c: str, vec: Sequence) -> tuple:
        return self.category.field.vec_mat(vec, self.matrices[(b, c)])

    def is_identity(self) -> bool:
        K = self.category.field
        return all(K.is_identity(m) for m in self.matrices.values())

    def problems(self) -> List[str]:
        """Failed functor or invertibility conditions, empty when J is an automorphism."""
        cat, K = self.category, self.category.field
        out = []
        for key, rows in self.matrices.items():
            if rows and K.rank(rows, len(rows)) != len(rows):
                out.append(f"not invertible on {hom_key(*key)}")
        for b in cat.objects:
            if self.apply(b, b, cat.identities[b]) != cat.identities[b]:
                out.append(f"does not fix the identity of {b}")
        for (g, f), vec in cat.composition.items():
            b, c, d = f.source, f.target, g.target
            left = self.apply(b, d, vec)
            right = cat.compose(self.matrices[(c, d)][g.index], self.matrices[(b, c)][f.index], b, c, d)
            if left != right:
                out.append(f"J({cat.label(g)}∘{cat.label(f)}) != J({cat.label(g)})∘J({cat.label(f)})")
        return out

    def to_json(self) -> dict:
        K = self.category.field
        return {
            "name": self.name,
            "matrices": {
                hom_key(*k): [[K.format(a) for a in r] for r in rows]
                for k, rows in self.matrices.items() if rows and not K.is_identity(rows)
            },
        }


def transport_grading(Xp: Grading, J: BaseAutomorphism) -> Grading:
    """
    The grading X″ whose homogeneous vectors are the J-preimages of those of X′.

    A pair (H, J): B#X -> B#X′ is the same data as an identity-J morphism B#X -> B#X″.
    """
    if J.category != Xp.category:
        raise DomainError("base automorphism and grading live on different categories")
    if J.is_identity():
        return Xp
    K = Xp.field
    changes = {}
    for key, rows in Xp.basis_change.items():
        changes[key] = K.mat_mul(rows, K.inverse(J.matrices[key])) if rows else rows
    return Grading.build(Xp.category, Xp.group, Xp.degrees, changes)


# Morphisms

@dataclass
class CoveringMorphism:
    """(H, J): B#X -> B#X′ with H(b, s) = (b, λ(s)·h_b)."""
    source: Grading
    target: Grading
    lam: GroupHom
    offsets: Dict[str, GroupElement]
    base: str
    J: Optional[BaseAutomorphism] = None

    @property
    def j_name(self) -> str:
        return self.J.name if self.J is not None else IDENTITY_J

    def transported_target(self) -> Grading:
        return transport_grading(self.target, self.J) if self.J is not None else self.target

    def object_map(self, b: str, s: GroupElement) -> GroupElement:
        """H_b(s)"""
        Gp = self.target.group
        return Gp.multiply(self.lam(in_group(self.source.group, s)), self.offsets[b])

    def object_table(self, b: str) -> Dict[str, str]:
        return {s.label: self.object_map(b, s).label for s in self.source.group.elements()}

    def is_normalized(self) -> bool:
        return self.offsets[self.base].is_identity()

    def to_json(self) -> dict:
        data = {
            "base_object": self.base,
            "J": self.j_name,
            "lambda": self.lam.to_json(),
            "offsets": {b: h.to_json() for b, h in self.offsets.items()},
        }
        if self.source.group.is_finite:
            data["object_maps"] = {b: self.object_table(b) for b in self.source.category.objects}
        return data


class ObstructionKind(Enum):
    """Why no morphism exists."""
    NON_HOMOGENEOUS = "non-homogeneous"
    INCONSISTENT_TRANSPORT = "inconsistent-transport"


@dataclass
class Obstruction:
    kind: ObstructionKind
    vector: Optional[str]
    detail: str

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "vector": self.vector, "detail": self.detail}


@dataclass
class SearchResult:
    """Normalized morphism found by find_identityJ_morphism, or the first obstruction."""
    morphism: Optional[CoveringMorphism] = None
    obstruction: Optional[Obstruction] = None

    def __bool__(self) -> bool:
        return self.morphism is not None

    def to_json(self) -> dict:
        if self.morphism is not None:
            return {"exists": True, "morphism": self.morphism.to_json(), "mu": canonical_mu(self.morphism).to_json()}
        return {"exists": False, "obstruction": self.obstruction.to_json()}


def _check_pair(X: Grading, Xp: Grading, b0: Optional[str]) -> str:
    if X.category != Xp.category:
        raise DomainError("gradings live on different categories")
    b0 = X.category.objects[0] if b0 is None else X.category.check_object(b0)
    for name, g in (("source", X), ("target", Xp)):
        if not is_connected_grading(g, b0):
            raise PreconditionError(f"{name} grading is not connected at {b0}",
                                    witness=walk_group(g, b0).to_json())
    return b0


def find_identityJ_morphism(X: Grading, Xp: Grading, b0: Optional[str] = None,
                            J: Optional[BaseAutomorphism] = None,
                            edge_order: Optional[Sequence[int]] = None) -> SearchResult:
    """
    Search the normalized morphism B#X -> B#X′ over J (identity by default).

    Each X-homogeneous basis vector must be homogeneous for X′ (after J). With
    tree-walk families v, v′ along a common spanning tree, λ is forced on the
    closed-walk generators v_c⁻¹·d·v_b ↦ v′_c⁻¹·d′·v′_b, and then h_b = λ(v_b)·v′_b⁻¹.

    Args:
        X: connected source grading
        Xp: connected target grading of the same category
        b0: base object (first object by default)
        J: declared base automorphism
        edge_order: optional scan order selecting the spanning tree

    Returns:
        SearchResult with the normalized morphism, or with the first obstruction

    Raises:
        DomainError: if the gradings live on different categories
        PreconditionError: if either grading is not connected
        TheoremViolation: if the derived λ is not surjective
    """
    b0 = _check_pair(X, Xp, b0)
    target = transport_grading(Xp, J) if J is not None else Xp
    cat = X.category
    G, Gp = X.group, Xp.group
    edges = X.edges()
    dprime: List[GroupElement] = []
    for e in edges:
        d = target.degree_of(e.source, e.target, X.vector(e.source, e.target, e.index))
        if d is None:
            return SearchResult(obstruction=Obstruction(
                ObstructionKind.NON_HOMOGENEOUS, e.label,
                f"{e.label} in {hom_key(e.source, e.target)} is not homogeneous for the target grading"))
        dprime.append(d)

    tree = spanning_tree(cat.objects, edges, b0, edge_order)
    v = tree.degrees(edges, lambda i: edges[i].degree, G)
    vp = tree.degrees(edges, lambda i: dprime[i], Gp)
    used = tree.tree_edges()
    gens, images = [], []
    for i, e in enumerate(edges):
        if i in used:
            continue
        gens.append(G.multiply(G.multiply(G.inverse(v[e.target]), e.degree), v[e.source]))
        images.append(Gp.multiply(Gp.multiply(Gp.inverse(vp[e.target]), dprime[i]), vp[e.source]))
    try:
        lam = hom_from_family(G, Gp, gens, images)
    except NotAHomomorphismError as err:
        return SearchResult(obstruction=Obstruction(ObstructionKind.INCONSISTENT_TRANSPORT, None, str(err)))

    offsets = {b: Gp.multiply(lam(v[b]), Gp.inverse(vp[b])) for b in cat.objects}
    m = CoveringMorphism(X, Xp, lam, offsets, b0, J)
    report = verify_morphism(m)
    if not report.valid:
        raise InvariantFailure(f"search produced an invalid morphism: {report.failures[0]}")
    if not lam.is_surjective():
        raise TheoremViolation(f"λ of the morphism {m.j_name} is not surjective")
    return SearchResult(morphism=m)


@dataclass
class MorphismReport:
    """Result of verify_morphism."""
    failures: List[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"valid": self.valid, "failures": list(self.failures)}


def verify_morphism(m: CoveringMorphism, max_enum: int = 10 ** 6) -> MorphismReport:
    """
    Check GH = JF: every X-homogeneous vector is carried to an X′-homogeneous one
    between the images of its endpoints.
    """
    X, G, Gp = m.source, m.source.group, m.target.group
    target = m.transported_target()
    report = MorphismReport()
    if m.lam.source != G or m.lam.target != Gp:
        report.failures.append("λ has the wrong source or target group")
        return report
    exhaustive = G.is_finite and G.order * len(X.edges()) <= max_enum
    for e in X.edges():
        b, c = e.source, e.target
        dp = target.degree_of(b, c, X.vector(b, c, e.index))
        if dp is None:
            report.failures.append(f"{e.label} is not homogeneous for the target grading")
            continue
        expected = Gp.multiply(Gp.multiply(m.lam(e.degree), m.offsets[b]), Gp.inverse(dp))
        if m.offsets[c] != expected:
            report.failures.append(f"transport along {e.label}: h_{c} = {m.offsets[c].label}, expected {expected.label}")
            continue
        if exhaustive:
            for s in G.elements():
                end = G.multiply(s, G.inverse(e.degree))
                if m.object_map(c, end) != Gp.multiply(m.object_map(b, s), Gp.inverse(dp)):
                    report.failures.append(f"{e.label} from ({b}, {s.label}) lands outside H")
                    break
    return report


def lambda_of(m: CoveringMorphism) -> GroupHom:
    """
    λ_H(s) = H_{b0}(s)·H_{b0}(1)⁻¹, checked to be the same at every object and surjective.

    Raises:
        InvariantFailure: if λ depends on the object
        TheoremViolation: if λ is not surjective
    """
    G, Gp = m.source.group, m.target.group
    if G.is_finite:
        for b in m.source.category.objects:
            base = m.object_map(b, G.identity())
            for s in G.elements():
                if Gp.multiply(m.object_map(b, s), Gp.inverse(base)) != m.lam(s):
                    raise InvariantFailure(f"λ computed at {b} differs from λ at {m.base}")
    if not m.lam.is_surjective():
        raise TheoremViolation("λ of a covering morphism is not surjective")
    return m.lam


def canonical_mu(m: CoveringMorphism) -> GroupHom:
    """μ = c⁻¹·λ·c with c = H_{b0}(1)."""
    c = m.offsets[m.base]
    if c.is_identity():
        return m.lam
    Gp = m.target.group
    return hom_build(m.source.group, Gp, lambda s: Gp.conjugate(m.lam(s), c))


def normalize(m: CoveringMorphism) -> CoveringMorphism:
    """The member H_{b0}(1)⁻¹·H of the deck orbit of m."""
    c = m.offsets[m.base]
    Gp = m.target.group
    cinv = Gp.inverse(c)
    offsets = {b: Gp.multiply(cinv, h) for b, h in m.offsets.items()}
    return CoveringMorphism(m.source, m.target, canonical_mu(m), offsets, m.base, m.J)


def left_translate(m: CoveringMorphism, q: GroupElement) -> CoveringMorphism:
    """q·H, with λ_{qH} = q·λ·q⁻¹ and offsets q·h_b."""
    Gp = m.target.group
    q = in_group(Gp, q)
    qinv = Gp.inverse(q)
    lam = m.lam if q.is_identity() else hom_build(m.source.group, Gp, lambda s: Gp.conjugate(m.lam(s), qinv))
    offsets = {b: Gp.multiply(q, h) for b, h in m.offsets.items()}
    return CoveringMorphism(m.source, m.target, lam, offsets, m.base, m.J)


@dataclass
class MorphismOrbit:
    """All morphisms over one J: the deck orbit {q·N} of the normalized N, or nothing."""
    normalized: Optional[CoveringMorphism]
    group: Group
    obstruction: Optional[Obstruction] = None

    def __bool__(self) -> bool:
        return self.normalized is not None

    @property
    def size(self) -> Optional[int]:
        if self.normalized is None:
            return 0
        return self.group.order

    def __len__(self) -> int:
        size = self.size
        if size is None:
            raise UnsupportedError("the orbit is infinite")
        return size

    def members(self) -> List[CoveringMorphism]:
        if self.normalized is None:
            return []
        if not self.group.is_finite:
            raise UnsupportedError(f"the orbit over {self.group!r} is infinite")
        return [left_translate(self.normalized, q) for q in self.group.elements()]

    def __iter__(self):
        return iter(self.members())

    def contains(self, m: CoveringMorphism) -> bool:
        if self.normalized is None:
            return False
        n = normalize(m)
        ref = self.normalized
        return (n.source == ref.source and n.target == ref.target and n.j_name == ref.j_name
                and n.lam == ref.lam and n.offsets == ref.offsets)

    def to_json(self) -> dict:
        if self.normalized is None:
            return {"exists": False, "size": 0, "obstruction": self.obstruction.to_json() if self.obstruction else None}
        data = {"exists": True, "normalized": self.normalized.to_json()}
        if self.group.is_finite:
            data["size"] = self.group.order
            data["members"] = [m.to_json() for m in self.members()]
        else:
            data["size"] = None
            data["orbit"] = "q·N for q in the target group"
        return data


def enumerate_identityJ_morphisms(X: Grading, Xp: Grading, b0: Optional[str] = None,
                                  J: Optional[BaseAutomorphism] = None) -> MorphismOrbit:
    """All morphisms B#X -> B#X′ over J, as the deck orbit of the normalized one."""
    result = find_identityJ_morphism(X, Xp, b0, J)
    return MorphismOrbit(result.morphism, Xp.group, result.obstruction)


def conjugation_covering_morphism(X: Grading, a, b0: Optional[str] = None) -> CoveringMorphism:
    """
    The morphism B#X -> B#(ᵃX), (b, s) ↦ (b, s·a_b), identity on underlying vectors.

    Raises:
        InvariantFailure: if it fails verification against the conjugated grading
    """
    family = a if isinstance(a, ConjugationFamily) else ConjugationFamily(dict(a))
    b0 = X.category.objects[0] if b0 is None else X.category.check_object(b0)
    G = X.group
    target = conjugate_grading(X, family)
    offsets = {b: in_group(G, family[b]) for b in X.category.objects}
    m = CoveringMorphism(X, target, identity_hom(G), offsets, b0)
    report = verify_morphism(m)
    if not report.valid:
        raise InvariantFailure(f"conjugation morphism does not verify: {report.failures[0]}")
    return m


def from_object_maps(X: Grading, Xp: Grading, tables: Mapping[str, Mapping], b0: Optional[str] = None,
                     J: Optional[BaseAutomorphism] = None) -> CoveringMorphism:
    """
    Morphism from explicit object maps {b: {s: H_b(s)}} over finite groups.

    Raises:
        UnsupportedError: if the source group is infinite
        DomainError: if the tables are incomplete or not equivariant
        NotAHomomorphismError: if the derived λ is not a homomorphism
    """
    G, Gp = X.group, Xp.group
    if not G.is_finite:
        raise UnsupportedError("object maps can only be tabulated over finite groups")
    b0 = X.category.objects[0] if b0 is None else X.category.check_object(b0)
    maps: Dict[str, Dict[GroupElement, GroupElement]] = {}
    for b in X.category.objects:
        if b not in tables:
            raise DomainError(f"no object map for {b}")
        raw = {G.parse(k): Gp.parse(v) for k, v in tables[b].items()}
        if len(raw) != G.order:
            raise DomainError(f"object map for {b} does not cover the group")
        maps[b] = raw
    e = G.identity()
    c0 = maps[b0][e]
    lam = hom_build(G, Gp, {s: Gp.multiply(t, Gp.inverse(c0)) for s, t in maps[b0].items()})
    offsets = {b: maps[b][e] for b in X.category.objects}
    for b, table in maps.items():
        for s, t in table.items():
            if Gp.multiply(lam(s), offsets[b]) != t:
                raise DomainError(f"object map for {b} is not equivariant at {s.label}")
    return CoveringMorphism(X, Xp, lam, offsets, b0, J)
