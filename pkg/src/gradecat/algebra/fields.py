"""
Exact scalar fields (rationals and prime fields) and the small amount of
linear algebra the categories need.
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Any, List, Optional, Sequence, Tuple

from sympy import Rational, isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

from ..errors import DomainError, MalformedGradingError

Vector = Tuple[Any, ...]
Matrix = Tuple[Vector, ...]


@dataclass(frozen=True)
class FieldConfig:
    """Exact field: the rationals ("Q") or a prime field ("Fp" with prime p)."""
    kind: str = "Q"
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("Q", "Fp"):
            raise DomainError(f"unknown field type '{self.kind}'")
        if self.kind == "Fp":
            if self.p is None or not isprime(self.p):
                raise DomainError(f"field characteristic {self.p} is not prime")
        elif self.p is not None:
            raise DomainError("the rational field takes no characteristic")

    @classmethod
    def rationals(cls) -> "FieldConfig":
        return cls("Q")

    @classmethod
    def prime(cls, p: int) -> "FieldConfig":
        return cls("Fp", p)

    @cached_property
    def domain(self):
        """The sympy domain realizing this field."""
        if self.kind == "Q":
            return QQ
        return GF(self.p, symmetric=False)

    @property
    def zero(self):
        return self.domain.zero

    @property
    def one(self):
        return self.domain.one

    def __str__(self) -> str:
        return "Q" if self.kind == "Q" else f"F_{self.p}"

    # Scalars

    def scalar(self, value: Any):
        """
        Convert an int, a Rational or a decimal/fraction string to a field element.

        Args:
            value: "3/2", "-1", 5, Rational(1, 2) ...

        Returns:
            Element of self.domain
        """
        K = self.domain
        try:
            r = Rational(value) if not isinstance(value, Rational) else value
        except (TypeError, ValueError, SyntaxError, AttributeError) as e:
            raise DomainError(f"'{value}' is not an exact scalar") from e
        if not r.is_Rational:
            raise DomainError(f"'{value}' is not an exact scalar")
        if self.kind == "Q":
            return K.from_sympy(r)
        if r.q % self.p == 0:
            raise DomainError(f"'{value}' has a denominator divisible by {self.p}")
        return K.quo(K(int(r.p)), K(int(r.q)))

    def coerce(self, value: Any):
        """Pass field elements through; convert ints, strings and Rationals."""
        if not isinstance(value, (bool, int, str, Rational)) and self.domain.of_type(value):
            return value
        return self.scalar(value)

    def format(self, x) -> str:
        """Canonical decimal string: reduced "p/q" over Q, a residue in [0, p) over F_p."""
        if self.kind == "Q":
            return str(QQ.to_sympy(x))
        return str(int(x) % self.p)

    def is_zero(self, x) -> bool:
        return not x

    def to_json(self) -> dict:
        if self.kind == "Q":
            return {"type": "Q"}
        return {"type": "Fp", "p": self.p}

    # Vectors

    def zeros(self, n: int) -> Vector:
        return tuple(self.zero for _ in range(n))

    def unit(self, n: int, i: int) -> Vector:
        return tuple(self.one if j == i else self.zero for j in range(n))

    def add(self, u: Sequence, v: Sequence) -> Vector:
        return tuple(a + b for a, b in zip(u, v))

    def scale(self, c, u: Sequence) -> Vector:
        return tuple(c * a for a in u)

    def support(self, u: Sequence) -> List[int]:
        return [i for i, a in enumerate(u) if a]

    def is_zero_vector(self, u: Sequence) -> bool:
        return not any(u)

    # Matrices (row-major tuples of tuples)

    def identity_matrix(self, n: int) -> Matrix:
        return tuple(self.unit(n, i) for i in range(n))

    def is_identity(self, rows: Matrix) -> bool:
        return rows == self.identity_matrix(len(rows))

    def domain_matrix(self, rows: Sequence[Sequence], ncols: int) -> DomainMatrix:
        return DomainMatrix([list(r) for r in rows], (len(rows), ncols), self.domain)

    def rank(self, rows: Sequence[Sequence], ncols: int) -> int:
        if not rows or ncols == 0:
            return 0
        return self.domain_matrix(rows, ncols).rank()

    def inverse(self, rows: Matrix) -> Matrix:
        """
        Inverse of a square matrix.

        Raises:
            MalformedGradingError: if the matrix is not square or not invertible
        """
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise MalformedGradingError(f"{n}x? change of basis is not square")
        if n == 0:
            return ()
        M = self.domain_matrix(rows, n)
        if M.rank() != n:
            raise MalformedGradingError("change of basis is not invertible")
        inv = M.inv()
        return tuple(tuple(inv[i, j].element for j in range(n)) for i in range(n))

    def mat_vec(self, rows: Matrix, v: Sequence) -> Vector:
        """rows · v for a column vector v."""
        return tuple(sum((a * b for a, b in zip(r, v)), self.zero) for r in rows)

    def vec_mat(self, v: Sequence, rows: Matrix) -> Vector:
        """v · rows for a row vector v."""
        ncols = len(rows[0]) if rows else 0
        out = [self.zero] * ncols
        for c, r in zip(v, rows):
            if c:
                for j, a in enumerate(r):
                    out[j] += c * a
        return tuple(out)

    def mat_mul(self, a: Matrix, b: Matrix) -> Matrix:
        return tuple(self.vec_mat(r, b) for r in a)

    def transpose(self, rows: Matrix) -> Matrix:
        if not rows:
            return ()
        return tuple(zip(*rows))
