"""
Integer lattice normal forms.

Lattices are given by generating column vectors in Z^n. The canonical basis
is the Hermite normal form computed by sympy: each basis column has a pivot
(its last nonzero row) with a positive entry, and pivot rows strictly
increase from column to column.
"""
from typing import List, Optional, Sequence, Tuple

from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form, invariant_factors

IntVector = Tuple[int, ...]


def _columns_to_matrix(columns: Sequence[Sequence[int]], nrows: int) -> DomainMatrix:
    rows = [[ZZ(int(col[i])) for col in columns] for i in range(nrows)]
    return DomainMatrix(rows, (nrows, len(columns)), ZZ)


def _matrix_columns(M: DomainMatrix) -> List[IntVector]:
    nrows, ncols = M.shape
    dense = M.to_Matrix()
    return [tuple(int(dense[i, j]) for i in range(nrows)) for j in range(ncols)]


def pivot_row(column: Sequence[int]) -> int:
    for i in range(len(column) - 1, -1, -1):
        if column[i]:
            return i
    return -1


def hnf_columns(columns: Sequence[Sequence[int]], nrows: int) -> Tuple[IntVector, ...]:
    """
    Canonical basis of the lattice spanned by the given columns.

    Args:
        columns: generating vectors of length nrows
        nrows: ambient dimension

    Returns:
        Tuple of basis columns in Hermite normal form (empty for the zero lattice)
    """
    nonzero = [tuple(int(a) for a in c) for c in columns if any(c)]
    if not nonzero or nrows == 0:
        return ()
    W = hermite_normal_form(_columns_to_matrix(nonzero, nrows))
    return tuple(c for c in _matrix_columns(W) if any(c))


def lattice_coordinates(basis: Sequence[Sequence[int]], v: Sequence[int]) -> Optional[IntVector]:
    """
    Coordinates of v in a Hermite basis, or None if v is not in the lattice.
    """
    rest = [int(a) for a in v]
    coords = [0] * len(basis)
    for j in range(len(basis) - 1, -1, -1):
        col = basis[j]
        p = pivot_row(col)
        if rest[p] % col[p]:
            return None
        c = rest[p] // col[p]
        if c:
            coords[j] = c
            rest = [a - c * b for a, b in zip(rest, col)]
    if any(rest):
        return None
    return tuple(coords)


def contains(basis: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    return lattice_coordinates(basis, v) is not None


def hnf_with_transform(columns: Sequence[Sequence[int]], nrows: int) -> Tuple[List[IntVector], List[Tuple[IntVector, IntVector]]]:
    """
    Kernel and image data of the integer matrix whose columns are given.

    Runs the Hermite normal form of the stacked matrix [I; A]. Columns whose
    A-part vanishes span the kernel; the others give a Hermite basis of the
    image together with a preimage of each basis vector.

    Returns:
        (kernel basis, [(image basis column, preimage coefficients), ...])
    """
    k = len(columns)
    if k == 0:
        return [], []
    stacked = []
    for j, col in enumerate(columns):
        stacked.append(tuple(1 if i == j else 0 for i in range(k)) + tuple(int(a) for a in col))
    basis = hnf_columns(stacked, k + nrows)
    kernel: List[IntVector] = []
    image: List[Tuple[IntVector, IntVector]] = []
    for col in basis:
        top, bottom = col[:k], col[k:]
        if any(bottom):
            image.append((bottom, top))
        else:
            kernel.append(top)
    return kernel, image


def solve_integer(columns: Sequence[Sequence[int]], nrows: int, v: Sequence[int]) -> Optional[IntVector]:
    """An integer vector w with A·w = v, or None when v is not in the image of A."""
    _, image = hnf_with_transform(columns, nrows)
    if not any(v):
        return tuple(0 for _ in columns)
    coords = lattice_coordinates([b for b, _ in image], v)
    if coords is None:
        return None
    w = [0] * len(columns)
    for c, (_, pre) in zip(coords, image):
        w = [a + c * b for a, b in zip(w, pre)]
    return tuple(w)


def quotient_structure(basis: Sequence[Sequence[int]], sub: Sequence[Sequence[int]]) -> Tuple[int, List[int]]:
    """
    Structure of L / S for a Hermite basis of L and generators of S ⊆ L.

    Returns:
        (free rank, invariant factors > 1 in divisibility order)
    """
    m = len(basis)
    if m == 0:
        return 0, []
    coords = []
    for v in sub:
        c = lattice_coordinates(basis, v)
        if c is None:
            raise ValueError("sublattice generator outside the lattice")
        if any(c):
            coords.append(c)
    if not coords:
        return m, []
    factors = [abs(int(d)) for d in invariant_factors(_columns_to_matrix(coords, m))]
    nonzero = [d for d in factors if d]
    return m - len(nonzero), [d for d in nonzero if d != 1]


def index_in(basis: Sequence[Sequence[int]], sub: Sequence[Sequence[int]]) -> Optional[int]:
    """Index [L : S], or None when it is infinite."""
    free, torsion = quotient_structure(basis, sub)
    if free:
        return None
    index = 1
    for d in torsion:
        index *= d
    return index
