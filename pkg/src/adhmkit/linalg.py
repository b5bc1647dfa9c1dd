"""Exact matrices and subspaces over the Gaussian rationals.

Rank uses fraction-free (Bareiss) elimination on a denominator-cleared
copy to keep intermediate entries integral; kernels and echelon bases
use ordinary reduced row echelon form over the field. Empty matrices
(zero rows or columns) are legal everywhere.

Subspaces are stored as reduced-echelon row bases, so two subspaces are
equal as sets exactly when they are structurally equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .scalars import ONE, ZERO, Scalar


class LinAlgError(ValueError):
    pass


def _coerce_scalar(value) -> Scalar:
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction)):
        return Scalar(Fraction(value))
    raise LinAlgError(f"not a scalar entry: {value!r}")


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise LinAlgError("negative matrix dimensions")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise LinAlgError("entry grid does not match declared dimensions")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        data = tuple(tuple(_coerce_scalar(v) for v in row) for row in rows)
        if data:
            width = len(data[0])
        elif cols is not None:
            width = cols
        else:
            width = 0
        return cls(len(data), width, data)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, tuple((ZERO,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(
            tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)
        ))

    @classmethod
    def column(cls, values: Sequence) -> "Matrix":
        return cls.from_rows([[v] for v in values], cols=1)

    # -- basic access ------------------------------------------------------

    def entry(self, i: int, j: int) -> Scalar:
        return self.entries[i][j]

    def row(self, i: int) -> tuple[Scalar, ...]:
        return self.entries[i]

    def col(self, j: int) -> tuple[Scalar, ...]:
        return tuple(r[j] for r in self.entries)

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(ra, rb))
            for ra, rb in zip(self.entries, other.entries)
        ))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(
            tuple(a - b for a, b in zip(ra, rb))
            for ra, rb in zip(self.entries, other.entries)
        ))

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(
            tuple(-a for a in row) for row in self.entries
        ))

    def _same_shape(self, other: "Matrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise LinAlgError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise LinAlgError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        other_cols = [other.col(j) for j in range(other.cols)]
        data = []
        for row in self.entries:
            out_row = []
            for col in other_cols:
                acc = ZERO
                for a, b in zip(row, col):
                    if (a.re or a.im) and (b.re or b.im):
                        acc = acc + a * b
                out_row.append(acc)
            data.append(tuple(out_row))
        return Matrix(self.rows, other.cols, tuple(data))

    def scale(self, value) -> "Matrix":
        s = _coerce_scalar(value)
        return Matrix(self.rows, self.cols, tuple(
            tuple(a * s for a in row) for row in self.entries
        ))

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(
            tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)
        ))

    def trace(self) -> Scalar:
        if not self.is_square():
            raise LinAlgError("trace of a non-square matrix")
        return sum((self.entries[i][i] for i in range(self.rows)), ZERO)

    def commutator(self, other: "Matrix") -> "Matrix":
        return self @ other - other @ self

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise LinAlgError("hstack row mismatch")
        return Matrix(self.rows, self.cols + other.cols, tuple(
            ra + rb for ra, rb in zip(self.entries, other.entries)
        ))

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise LinAlgError("vstack column mismatch")
        return Matrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def submatrix(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> "Matrix":
        data = tuple(
            tuple(self.entries[i][j] for j in col_indices) for i in row_indices
        )
        return Matrix(len(row_indices), len(col_indices), data)

    def apply(self, vector: Sequence[Scalar]) -> tuple[Scalar, ...]:
        if len(vector) != self.cols:
            raise LinAlgError("vector length does not match columns")
        return tuple(
            sum((a * v for a, v in zip(row, vector)), ZERO) for row in self.entries
        )

    # -- elimination -------------------------------------------------------

    def rank(self) -> int:
        """Rank via fraction-free Bareiss elimination on a
        denominator-cleared Gaussian-integer copy."""
        if self.rows == 0 or self.cols == 0:
            return 0
        grid = []
        complex_entries = False
        for row in self.entries:
            lcm = 1
            for e in row:
                lcm = math.lcm(lcm, e.re.denominator, e.im.denominator)
            cleared = []
            for e in row:
                a = int(e.re * lcm)
                b = int(e.im * lcm)
                complex_entries = complex_entries or bool(b)
                cleared.append((a, b))
            grid.append(cleared)
        if complex_entries:
            return _bareiss_rank_gaussian(grid, self.rows, self.cols)
        return _bareiss_rank_int([[a for a, _ in row] for row in grid],
                                 self.rows, self.cols)

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and the pivot column indices."""
        m = [list(row) for row in self.entries]
        pivots: list[int] = []
        lead_row = 0
        for j in range(self.cols):
            pivot_i = None
            for i in range(lead_row, self.rows):
                if not m[i][j].is_zero():
                    pivot_i = i
                    break
            if pivot_i is None:
                continue
            m[lead_row], m[pivot_i] = m[pivot_i], m[lead_row]
            inv = m[lead_row][j].inverse()
            m[lead_row] = [e * inv for e in m[lead_row]]
            for i in range(self.rows):
                if i != lead_row and not m[i][j].is_zero():
                    factor = m[i][j]
                    m[i] = [a - factor * b for a, b in zip(m[i], m[lead_row])]
            pivots.append(j)
            lead_row += 1
            if lead_row == self.rows:
                break
        return Matrix(self.rows, self.cols, tuple(tuple(r) for r in m)), tuple(pivots)

    def right_kernel(self) -> "Subspace":
        """The right kernel {v : M v = 0} as a subspace of k^cols."""
        reduced, pivots = self.rref()
        pivot_set = set(pivots)
        free_cols = [j for j in range(self.cols) if j not in pivot_set]
        basis_rows = []
        for free in free_cols:
            v = [ZERO] * self.cols
            v[free] = ONE
            for r, pj in enumerate(pivots):
                v[pj] = -reduced.entries[r][free]
            basis_rows.append(v)
        return Subspace.from_rows(self.cols, basis_rows)

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise LinAlgError("inverse of a non-square matrix")
        n = self.rows
        augmented = self.hstack(Matrix.identity(n))
        reduced, pivots = augmented.rref()
        if tuple(pivots[:n]) != tuple(range(n)) or len(pivots) < n:
            raise LinAlgError("matrix is singular")
        return reduced.submatrix(range(n), range(n, 2 * n))

    def det(self) -> Scalar:
        """Determinant by fraction-free elimination (det of 0x0 is 1)."""
        if not self.is_square():
            raise LinAlgError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return ONE
        m = [list(row) for row in self.entries]
        prev = ONE
        sign = 1
        for k in range(n - 1):
            if m[k][k].is_zero():
                swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
                if swap is None:
                    return ZERO
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            pivot = m[k][k]
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (pivot * m[i][j] - m[i][k] * m[k][j]) / prev
                m[i][k] = ZERO
            prev = pivot
        result = m[n - 1][n - 1]
        return result if sign > 0 else -result

    def __str__(self) -> str:
        return "[" + "; ".join(
            " ".join(str(e) for e in row) for row in self.entries
        ) + "]"


def _bareiss_rank_int(m: list[list[int]], rows: int, cols: int) -> int:
    rank = 0
    prev = 1
    pivot_row = 0
    while pivot_row < rows:
        located = None
        for i in range(pivot_row, rows):
            row = m[i]
            for j in range(cols):
                if row[j]:
                    located = (i, j)
                    break
            if located:
                break
        if located is None:
            break
        pi, pj = located
        m[pivot_row], m[pi] = m[pi], m[pivot_row]
        pivot_values = m[pivot_row]
        pivot = pivot_values[pj]
        for i in range(pivot_row + 1, rows):
            row = m[i]
            head = row[pj]
            m[i] = [(pivot * row[j] - head * pivot_values[j]) // prev
                    for j in range(cols)]
        prev = pivot
        pivot_row += 1
        rank += 1
    return rank


def _bareiss_rank_gaussian(m: list[list[tuple[int, int]]], rows: int, cols: int) -> int:
    rank = 0
    prev = (1, 0)
    pivot_row = 0
    while pivot_row < rows:
        located = None
        for i in range(pivot_row, rows):
            row = m[i]
            for j in range(cols):
                if row[j] != (0, 0):
                    located = (i, j)
                    break
            if located:
                break
        if located is None:
            break
        pi, pj = located
        m[pivot_row], m[pi] = m[pi], m[pivot_row]
        pivot_values = m[pivot_row]
        pa, pb = pivot_values[pj]
        qa, qb = prev
        qn = qa * qa + qb * qb
        for i in range(pivot_row + 1, rows):
            row = m[i]
            ha, hb = row[pj]
            new_row = []
            for j in range(cols):
                xa, xb = row[j]
                ya, yb = pivot_values[j]
                na = pa * xa - pb * xb - ha * ya + hb * yb
                nb = pa * xb + pb * xa - ha * yb - hb * ya
                new_row.append(((na * qa + nb * qb) // qn, (nb * qa - na * qb) // qn))
            m[i] = new_row
        prev = (pa, pb)
        pivot_row += 1
        rank += 1
    return rank


@dataclass(frozen=True)
class Subspace:
    """A subspace of k^n held as a reduced-echelon row basis."""

    ambient_dim: int
    basis: Matrix

    def __post_init__(self) -> None:
        if self.basis.cols != self.ambient_dim:
            raise LinAlgError("basis width does not match ambient dimension")

    @classmethod
    def from_rows(cls, ambient_dim: int, rows: Sequence[Sequence]) -> "Subspace":
        m = Matrix.from_rows(rows, cols=ambient_dim)
        reduced, pivots = m.rref()
        kept = reduced.submatrix(range(len(pivots)), range(ambient_dim))
        return cls(ambient_dim, kept)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix.zero(0, ambient_dim))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def basis_vectors(self) -> tuple[tuple[Scalar, ...], ...]:
        return self.basis.entries

    def contains_vector(self, vector: Sequence[Scalar]) -> bool:
        stacked = self.basis.vstack(Matrix.from_rows([vector], cols=self.ambient_dim))
        return stacked.rank() == self.dim

    def contains(self, other: "Subspace") -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise LinAlgError("ambient dimension mismatch")
        stacked = self.basis.vstack(other.basis)
        return stacked.rank() == self.dim

    def add(self, other: "Subspace") -> "Subspace":
        if other.ambient_dim != self.ambient_dim:
            raise LinAlgError("ambient dimension mismatch")
        combined = self.basis.vstack(other.basis)
        return Subspace.from_rows(self.ambient_dim, combined.entries)

    def annihilator(self) -> "Subspace":
        """Vectors orthogonal to this subspace under the dot pairing."""
        return self.basis.right_kernel()

    def intersect(self, other: "Subspace") -> "Subspace":
        if other.ambient_dim != self.ambient_dim:
            raise LinAlgError("ambient dimension mismatch")
        cutting = self.annihilator().basis.vstack(other.annihilator().basis)
        return cutting.right_kernel()

    def preimage_under(self, operator: Matrix) -> "Subspace":
        """{v : M v in S} for a square operator M on the ambient space."""
        if operator.cols != self.ambient_dim or operator.rows != self.ambient_dim:
            raise LinAlgError("operator does not act on the ambient space")
        cutting = self.annihilator().basis @ operator
        return cutting.right_kernel()

    def apply(self, operator: Matrix) -> "Subspace":
        """The image subspace M(S)."""
        if operator.cols != self.ambient_dim:
            raise LinAlgError("operator does not act on the ambient space")
        mapped = self.basis @ operator.transpose()
        return Subspace.from_rows(operator.rows, mapped.entries)

    def __str__(self) -> str:
        return f"Subspace(dim {self.dim} of k^{self.ambient_dim})"


def column_span(matrix: Matrix) -> Subspace:
    return Subspace.from_rows(matrix.rows, matrix.transpose().entries)


def closure(generators: Subspace, operators: Iterable[Matrix]) -> Subspace:
    """Smallest subspace containing the generators and invariant under
    every operator (fixed point of one-step expansion)."""
    ops = list(operators)
    n = generators.ambient_dim
    for op in ops:
        if op.rows != n or op.cols != n:
            raise LinAlgError("closure operators must be square of ambient size")
    current = generators
    while True:
        rows = list(current.basis.entries)
        for op in ops:
            for vector in current.basis.entries:
                rows.append(op.apply(vector))
        grown = Subspace.from_rows(n, rows)
        if grown.dim == current.dim:
            return grown
        current = grown


def largest_invariant_inside(constraint: Subspace, operators: Iterable[Matrix]) -> Subspace:
    """Largest subspace of the constraint invariant under every operator,
    computed as the limit of S -> S cap (intersection of preimages)."""
    ops = list(operators)
    n = constraint.ambient_dim
    for op in ops:
        if op.rows != n or op.cols != n:
            raise LinAlgError("operators must be square of ambient size")
    current = constraint
    while True:
        refined = current
        for op in ops:
            refined = refined.intersect(current.preimage_under(op))
        if refined.dim == current.dim:
            return refined
        current = refined
