"""Linear algebra over F_q and over the Euclidean domain F_q[T], on galois arrays and polys."""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import galois
import numpy as np

from drinfeld_census.apoly import APoly
from drinfeld_census.errors import (
    ContextMismatchError,
    InvariantViolationError,
    MultipleSolutionsError,
    NoSolutionError,
)
from drinfeld_census.fields import FiniteField


@dataclass(frozen=True, slots=True)
class Matrix:
    """Square or rectangular matrix of F_q codes, stored row-major."""

    field: FiniteField
    rows: Tuple[Tuple[int, ...], ...]

    @classmethod
    def identity(cls, field: FiniteField, n: int) -> "Matrix":
        return cls.from_galois(field, field.gf.Identity(n))

    @classmethod
    def from_galois(cls, field: FiniteField, array: galois.FieldArray) -> "Matrix":
        return cls(field, tuple(tuple(row) for row in array.view(np.ndarray).tolist()))

    def to_galois(self) -> galois.FieldArray:
        return self.field.gf(np.array(self.rows, dtype=int))

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def _check(self, other: "Matrix") -> None:
        if other.field is not self.field:
            raise ContextMismatchError("matrices over different fields")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix.from_galois(self.field, self.to_galois() + other.to_galois())

    def __mul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix.from_galois(self.field, self.to_galois() @ other.to_galois())

    def __pow__(self, e: int) -> "Matrix":
        return Matrix.from_galois(self.field, np.linalg.matrix_power(self.to_galois(), e))

    def characteristic_polynomial(self) -> APoly:
        """det(T·I − M), monic of degree n."""
        return APoly.from_galois(self.field, self.to_galois().characteristic_poly())

    def characteristic_matrix(self) -> List[List[APoly]]:
        """``T·I − M`` as a matrix over F_q[T]."""
        f = self.field
        n = len(self.rows)
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                entry = f.neg(self.rows[i][j])
                row.append(APoly(f, (entry, 1) if i == j else (entry,)))
            out.append(row)
        return out


def solve_unique(
    field: FiniteField, rows: Sequence[Sequence[int]], rhs: Sequence[int]
) -> List[int]:
    """Solve ``rows · x = rhs`` over a finite field, requiring a unique solution.

    Raises:
        NoSolutionError: The system is inconsistent.
        MultipleSolutionsError: The solution space has positive dimension.
    """
    width = len(rows[0]) if rows else 0
    augmented = field.gf(np.array([list(r) + [b] for r, b in zip(rows, rhs)], dtype=int))
    reduced = augmented.row_reduce().view(np.ndarray)
    pivots = []
    for row in reduced:
        nonzero = np.flatnonzero(row)
        if nonzero.size == 0:
            break
        pivots.append(int(nonzero[0]))
    if pivots and pivots[-1] == width:
        raise NoSolutionError("inconsistent linear system")
    if len(pivots) < width:
        raise MultipleSolutionsError(f"solution space has dimension {width - len(pivots)}")
    return [int(reduced[i, width]) for i in range(width)]


def _monic(poly: galois.Poly) -> galois.Poly:
    return poly // galois.Poly(poly.coeffs[:1], field=poly.field)


def _min_degree_entry(
    mat: List[List[galois.Poly]], start: int, zero: galois.Poly
) -> Optional[Tuple[int, int]]:
    best = None
    best_deg = None
    n = len(mat)
    for i in range(start, n):
        for j in range(start, len(mat[i])):
            entry = mat[i][j]
            if entry == zero:
                continue
            if best_deg is None or entry.degree < best_deg:
                best, best_deg = (i, j), entry.degree
    return best


def smith_diagonal(matrix: Sequence[Sequence[APoly]]) -> List[APoly]:
    """Diagonal of the Smith normal form of a square matrix over F_q[T].

    Elementary row and column operations on ``galois.Poly`` entries: move a
    nonzero entry of least degree to the pivot, clear its row and column by
    division with remainder, and fold in any entry the pivot does not divide.
    The diagonal entries are monic (or zero) and each divides the next.
    """
    n = len(matrix)
    if n == 0:
        return []
    field = matrix[0][0].field
    zero = galois.Poly.Zero(field=field.gf)
    mat = [[entry.to_galois() for entry in row] for row in matrix]
    diagonal: List[galois.Poly] = []
    for k in range(n):
        while True:
            pos = _min_degree_entry(mat, k, zero)
            if pos is None:
                diagonal.extend(zero for _ in range(k, n))
                return [APoly.from_galois(field, d) for d in diagonal]
            i, j = pos
            mat[k], mat[i] = mat[i], mat[k]
            for row in mat:
                row[k], row[j] = row[j], row[k]
            pivot = mat[k][k]
            dirty = False
            for i in range(k + 1, n):
                if mat[i][k] == zero:
                    continue
                quot, rem = divmod(mat[i][k], pivot)
                mat[i] = [a - quot * b for a, b in zip(mat[i], mat[k])]
                dirty = dirty or rem != zero
            for j in range(k + 1, n):
                if mat[k][j] == zero:
                    continue
                quot, rem = divmod(mat[k][j], pivot)
                for row in mat:
                    row[j] = row[j] - quot * row[k]
                dirty = dirty or rem != zero
            if dirty:
                continue
            offender = next(
                (
                    i
                    for i in range(k + 1, n)
                    for j in range(k + 1, n)
                    if mat[i][j] % pivot != zero
                ),
                None,
            )
            if offender is None:
                break
            mat[k] = [a + b for a, b in zip(mat[k], mat[offender])]
        diagonal.append(_monic(mat[k][k]))
    return [APoly.from_galois(field, d) for d in diagonal]


def invariant_factors(matrix: Matrix) -> List[APoly]:
    """Nontrivial invariant factors of ``T·I − M``, ascending (each divides the next).

    Raises:
        InvariantViolationError: If their product differs from the characteristic polynomial.
    """
    factors = [d for d in smith_diagonal(matrix.characteristic_matrix()) if d.degree >= 1]
    product = APoly.one(matrix.field)
    for f in factors:
        product = product * f
    if product != matrix.characteristic_polynomial():
        raise InvariantViolationError("invariant factors do not multiply to det(T·I − M)")
    return factors
