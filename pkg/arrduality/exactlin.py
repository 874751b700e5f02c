"""Exact linear algebra over the rationals, the integers and prime fields.

Everything here is a thin, typed layer over ``sympy.polys.matrices.DomainMatrix``:
the matrix containers are immutable dataclasses holding Python ``int`` /
``Fraction`` entries, and each operation converts to the matching sympy
domain (``ZZ``, ``QQ`` or ``GF(p)``) to do the actual elimination.

Pivoting follows sympy's row-echelon routines, which pick the first nonzero
entry in row-major order, so results are reproducible run to run.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from sympy import isprime
from sympy.polys.domains import GF, QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form, smith_normal_decomp

from .exceptions import FieldError

logger = logging.getLogger(__name__)

Number = Union[int, Fraction, str]
RationalVector = Tuple[Fraction, ...]
IntegerVector = Tuple[int, ...]


def as_fraction(value: Number) -> Fraction:
    """Convert ints, Fractions and ``p/q`` strings to a Fraction in lowest terms."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(value, (int, str)):
        return Fraction(value)
    # sympy rationals (PythonMPQ / mpq) expose numerator and denominator
    return Fraction(int(value.numerator), int(value.denominator))


def _shape(entries: Sequence[Sequence[object]], cols: Optional[int]) -> Tuple[int, int]:
    rows = len(entries)
    if rows == 0:
        return 0, cols or 0
    width = len(entries[0])
    if any(len(row) != width for row in entries):
        raise ValueError("ragged matrix rows")
    if cols is not None and cols != width:
        raise ValueError(f"expected {cols} columns, got {width}")
    return rows, width


@dataclass(frozen=True)
class RationalMatrix:
    """Matrix with exact rational entries, stored in lowest terms."""
    entries: Tuple[RationalVector, ...]
    cols: int = 0

    def __post_init__(self) -> None:
        normalized = tuple(tuple(as_fraction(e) for e in row) for row in self.entries)
        rows, cols = _shape(normalized, self.cols if not normalized else None)
        object.__setattr__(self, "entries", normalized)
        object.__setattr__(self, "cols", cols)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Number]], cols: int = 0) -> "RationalMatrix":
        return cls(tuple(tuple(row) for row in rows), cols)

    @property
    def rows(self) -> int:
        return len(self.entries)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(tuple(zip(*self.entries)), self.rows)

    def to_domain(self) -> DomainMatrix:
        data = [[QQ(e.numerator, e.denominator) for e in row] for row in self.entries]
        return DomainMatrix(data, (self.rows, self.cols), QQ)


@dataclass(frozen=True)
class IntegerMatrix:
    """Matrix with arbitrary-precision integer entries."""
    entries: Tuple[IntegerVector, ...]
    cols: int = 0

    def __post_init__(self) -> None:
        normalized = tuple(tuple(int(e) for e in row) for row in self.entries)
        rows, cols = _shape(normalized, self.cols if not normalized else None)
        object.__setattr__(self, "entries", normalized)
        object.__setattr__(self, "cols", cols)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], cols: int = 0) -> "IntegerMatrix":
        return cls(tuple(tuple(row) for row in rows), cols)

    @classmethod
    def identity(cls, size: int) -> "IntegerMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(size)) for i in range(size)), size)

    @property
    def rows(self) -> int:
        return len(self.entries)

    def to_domain(self) -> DomainMatrix:
        data = [[ZZ(e) for e in row] for row in self.entries]
        return DomainMatrix(data, (self.rows, self.cols), ZZ)

    @classmethod
    def from_domain(cls, dm: DomainMatrix) -> "IntegerMatrix":
        rows, cols = dm.shape
        return cls(tuple(tuple(int(e) for e in row) for row in dm.to_list()), cols)

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        return IntegerMatrix.from_domain(self.to_domain() * other.to_domain())

    def to_rational(self) -> RationalMatrix:
        return RationalMatrix(self.entries, self.cols)

    def reduce_mod(self, modulus: int) -> "PrimeFieldMatrix":
        return PrimeFieldMatrix(modulus, self.entries, self.cols)


@dataclass(frozen=True)
class PrimeFieldMatrix:
    """Matrix over GF(p); entries are reduced into {0, ..., p-1} on construction."""
    modulus: int
    entries: Tuple[IntegerVector, ...]
    cols: int = 0

    def __post_init__(self) -> None:
        p = int(self.modulus)
        normalized = tuple(tuple(int(e) % p for e in row) for row in self.entries)
        rows, cols = _shape(normalized, self.cols if not normalized else None)
        object.__setattr__(self, "modulus", p)
        object.__setattr__(self, "entries", normalized)
        object.__setattr__(self, "cols", cols)

    @property
    def rows(self) -> int:
        return len(self.entries)

    def to_domain(self) -> DomainMatrix:
        field = GF(self.modulus)
        data = [[field(e) for e in row] for row in self.entries]
        return DomainMatrix(data, (self.rows, self.cols), field)


def check_prime(modulus: int) -> int:
    """Return ``modulus`` if it is a prime >= 3, else raise FieldError."""
    if modulus < 3 or not isprime(modulus):
        raise FieldError(f"modulus {modulus} is not a prime >= 3")
    return modulus


def rational_rank(m: RationalMatrix) -> int:
    """Rank over Q, computed exactly."""
    if m.rows == 0 or m.cols == 0:
        return 0
    return m.to_domain().rank()


def prime_field_rank(m: PrimeFieldMatrix) -> int:
    """Rank over GF(p) by Gaussian elimination."""
    check_prime(m.modulus)
    if m.rows == 0 or m.cols == 0:
        return 0
    return m.to_domain().rank()


def smith_normal_form(
    m: IntegerMatrix,
) -> Tuple[Tuple[int, ...], IntegerMatrix, IntegerMatrix]:
    """Smith normal form ``left * m * right = diag(d_1, ..., d_k)``.

    Returns the ``min(rows, cols)`` diagonal entries (trailing zeros included),
    with ``d_1 | d_2 | ...`` and ``d_i >= 0``, and the unimodular transforms.
    """
    if m.rows == 0 or m.cols == 0:
        return (), IntegerMatrix.identity(m.rows), IntegerMatrix.identity(m.cols)
    smf, left, right = smith_normal_decomp(m.to_domain())
    dense = smf.to_list()
    diagonal = tuple(abs(int(dense[i][i])) for i in range(min(m.rows, m.cols)))
    return diagonal, IntegerMatrix.from_domain(left), IntegerMatrix.from_domain(right)


def determinant(m: IntegerMatrix) -> int:
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    if m.rows == 0:
        return 1
    return int(m.to_domain().det())


def is_unimodular(m: IntegerMatrix) -> bool:
    return m.rows == m.cols and abs(determinant(m)) == 1


def nullspace_rational(m: RationalMatrix) -> List[RationalVector]:
    """Basis of the right kernel; ``len(result) == cols - rank``."""
    if m.cols == 0:
        return []
    if m.rows == 0 or rational_rank(m) == 0:
        return [tuple(Fraction(int(i == j)) for j in range(m.cols)) for i in range(m.cols)]
    kernel = m.to_domain().nullspace()
    return [tuple(as_fraction(e) for e in row) for row in kernel.to_list()]


def rref_rows(m: RationalMatrix) -> Tuple[Tuple[RationalVector, ...], Tuple[int, ...]]:
    """Nonzero rows of the reduced row-echelon form, with pivot columns."""
    if m.rows == 0 or m.cols == 0:
        return (), ()
    reduced, pivots = m.to_domain().rref()
    rows = tuple(
        tuple(as_fraction(e) for e in row) for row in reduced.to_list()[: len(pivots)]
    )
    return rows, tuple(pivots)


def rref_key(rows: Sequence[Sequence[Number]], cols: int) -> Tuple[RationalVector, ...]:
    """Canonical, order-independent key of the row space of ``rows``."""
    reduced, _ = rref_rows(RationalMatrix.from_rows(rows, cols))
    return reduced


def solve_affine(
    rows: Sequence[Sequence[Number]], rhs: Sequence[Number], cols: int
) -> Optional[Tuple[RationalVector, List[RationalVector]]]:
    """Solve ``rows . x = rhs``; return (particular point, kernel basis) or None.

    Free variables are set to zero in the particular solution.
    """
    if not rows:
        return tuple(Fraction(0) for _ in range(cols)), nullspace_rational(
            RationalMatrix((), cols)
        )
    augmented = RationalMatrix.from_rows(
        (list(row) + [b] for row, b in zip(rows, rhs)), cols + 1
    )
    reduced, pivots = rref_rows(augmented)
    if cols in pivots:
        return None
    point = [Fraction(0)] * cols
    for row, pivot in zip(reduced, pivots):
        point[pivot] = row[cols]
    basis = nullspace_rational(RationalMatrix.from_rows(rows, cols))
    return tuple(point), basis


def hermite_basis(rows: Sequence[Sequence[int]], cols: int) -> Tuple[IntegerVector, ...]:
    """Canonical basis of the integer row lattice spanned by ``rows``."""
    nonzero = [tuple(int(e) for e in row) for row in rows if any(row)]
    if not nonzero:
        return ()
    transposed = IntegerMatrix(tuple(zip(*nonzero)), len(nonzero)).to_domain()
    hnf = hermite_normal_form(transposed).to_list()
    basis = tuple(zip(*hnf)) if hnf and hnf[0] else ()
    return tuple(tuple(int(e) for e in vec) for vec in basis if any(vec))


def dot(u: Sequence[Number], v: Sequence[Number]) -> Fraction:
    return sum((as_fraction(a) * as_fraction(b) for a, b in zip(u, v)), Fraction(0))


def integer_inverse(m: IntegerMatrix) -> IntegerMatrix:
    """Inverse of a unimodular integer matrix."""
    if not is_unimodular(m):
        raise ValueError("only unimodular matrices have integer inverses")
    if m.rows == 0:
        return m
    inverse = m.to_domain().convert_to(QQ).inv()
    rows = [[as_fraction(e) for e in row] for row in inverse.to_list()]
    return IntegerMatrix(tuple(tuple(int(e) for e in row) for row in rows), m.cols)
