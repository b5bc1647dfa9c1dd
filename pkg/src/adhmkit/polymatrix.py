"""Matrices of exact polynomials: pencils, minors, substitution.

Every entry of a PolyMatrix declares the same variable list. Minors are
enumerated with lexicographic row-subset then column-subset order, so
determinantal certificates are reproducible. Two determinant paths are
provided: Laplace expansion and fraction-free elimination (which needs
exact polynomial division and is used as an independent cross-check).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .linalg import Matrix
from .poly import Poly, PolynomialError
from .scalars import ONE, Scalar


@dataclass(frozen=True)
class PolyMatrix:
    rows: int
    cols: int
    variables: tuple[str, ...]
    entries: tuple[tuple[Poly, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise PolynomialError("entry grid does not match declared dimensions")
        for row in self.entries:
            for p in row:
                if p.variables != self.variables:
                    raise PolynomialError(
                        f"entry over {p.variables}, expected {self.variables}"
                    )

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, variables: Iterable[str], rows: Sequence[Sequence[Poly]],
                  cols: int | None = None) -> "PolyMatrix":
        variables = tuple(variables)
        data = tuple(tuple(row) for row in rows)
        if data:
            width = len(data[0])
        else:
            width = 0 if cols is None else cols
        return cls(len(data), width, variables, data)

    @classmethod
    def zero(cls, rows: int, cols: int, variables: Iterable[str]) -> "PolyMatrix":
        variables = tuple(variables)
        z = Poly.zero(variables)
        return cls(rows, cols, variables, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def from_scalar_matrix(cls, m: Matrix, variables: Iterable[str],
                           multiplier: Poly | None = None) -> "PolyMatrix":
        """Lift a scalar matrix, optionally times a fixed polynomial."""
        variables = tuple(variables)
        if multiplier is None:
            multiplier = Poly.const(variables, ONE)
        data = tuple(
            tuple(multiplier.scale(e) for e in row) for row in m.entries
        )
        return cls(m.rows, m.cols, variables, data)

    @classmethod
    def identity_times(cls, n: int, factor: Poly) -> "PolyMatrix":
        z = Poly.zero(factor.variables)
        return cls(n, n, factor.variables, tuple(
            tuple(factor if i == j else z for j in range(n)) for i in range(n)
        ))

    # -- structure ---------------------------------------------------------

    def entry(self, i: int, j: int) -> Poly:
        return self.entries[i][j]

    def is_zero(self) -> bool:
        return all(p.is_zero() for row in self.entries for p in row)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        return all(p.is_homogeneous(degree) for row in self.entries for p in row)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.cols, self.rows, self.variables, tuple(
            tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)
        ))

    def submatrix(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> "PolyMatrix":
        data = tuple(
            tuple(self.entries[i][j] for j in col_indices) for i in row_indices
        )
        return PolyMatrix(len(row_indices), len(col_indices), self.variables, data)

    def hstack(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.rows != other.rows or self.variables != other.variables:
            raise PolynomialError("hstack mismatch")
        return PolyMatrix(self.rows, self.cols + other.cols, self.variables, tuple(
            ra + rb for ra, rb in zip(self.entries, other.entries)
        ))

    def vstack(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.cols or self.variables != other.variables:
            raise PolynomialError("vstack mismatch")
        return PolyMatrix(self.rows + other.rows, self.cols, self.variables,
                          self.entries + other.entries)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.rows, self.cols, self.variables) != (other.rows, other.cols, other.variables):
            raise PolynomialError("shape or variable mismatch")
        return PolyMatrix(self.rows, self.cols, self.variables, tuple(
            tuple(a + b for a, b in zip(ra, rb))
            for ra, rb in zip(self.entries, other.entries)
        ))

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + (-other)

    def __neg__(self) -> "PolyMatrix":
        return PolyMatrix(self.rows, self.cols, self.variables, tuple(
            tuple(-a for a in row) for row in self.entries
        ))

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows or self.variables != other.variables:
            raise PolynomialError("matmul mismatch")
        zero = Poly.zero(self.variables)
        data = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            data.append(tuple(row))
        return PolyMatrix(self.rows, other.cols, self.variables, tuple(data))

    def scale(self, value) -> "PolyMatrix":
        return PolyMatrix(self.rows, self.cols, self.variables, tuple(
            tuple(p.scale(value) for p in row) for row in self.entries
        ))

    # -- substitution and evaluation ----------------------------------------

    def substitute(self, assignment: Mapping[str, Poly | Scalar | int],
                   target_variables: Iterable[str]) -> "PolyMatrix":
        target = tuple(target_variables)
        data = tuple(
            tuple(p.substitute(assignment, target) for p in row) for row in self.entries
        )
        return PolyMatrix(self.rows, self.cols, target, data)

    def evaluate(self, assignment: Mapping[str, Scalar]) -> Matrix:
        data = tuple(
            tuple(p.evaluate(assignment) for p in row) for row in self.entries
        )
        return Matrix(self.rows, self.cols, data)

    def coefficient_matrix(self, variable: str) -> Matrix:
        """Coefficient of a variable in a matrix of linear forms."""
        if variable not in self.variables:
            raise PolynomialError(f"{variable!r} not among {self.variables}")
        exps = tuple(1 if v == variable else 0 for v in self.variables)
        data = tuple(
            tuple(p.coefficient(exps) for p in row) for row in self.entries
        )
        return Matrix(self.rows, self.cols, data)

    # -- determinants and minors --------------------------------------------

    def det(self) -> Poly:
        """Determinant by Laplace expansion along the sparsest row."""
        if self.rows != self.cols:
            raise PolynomialError("determinant of a non-square matrix")
        return _det_laplace(self.entries, self.variables)

    def det_fraction_free(self) -> Poly:
        """Determinant by Bareiss elimination with exact division."""
        if self.rows != self.cols:
            raise PolynomialError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return Poly.const(self.variables, ONE)
        m = [list(row) for row in self.entries]
        prev = Poly.const(self.variables, ONE)
        sign = 1
        for k in range(n - 1):
            if m[k][k].is_zero():
                swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
                if swap is None:
                    return Poly.zero(self.variables)
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            pivot = m[k][k]
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    numerator = pivot * m[i][j] - m[i][k] * m[k][j]
                    m[i][j] = exact_divide(numerator, prev)
                m[i][k] = Poly.zero(self.variables)
            prev = pivot
        result = m[n - 1][n - 1]
        return result if sign > 0 else -result

    def minors(self, size: int) -> list[Poly]:
        """All size x size minors in lexicographic subset order."""
        if size < 0 or size > min(self.rows, self.cols):
            raise PolynomialError(
                f"minor size {size} out of range for {self.rows}x{self.cols}"
            )
        out = []
        for row_idx in itertools.combinations(range(self.rows), size):
            for col_idx in itertools.combinations(range(self.cols), size):
                out.append(self.submatrix(row_idx, col_idx).det())
        return out

    def __str__(self) -> str:
        return "[" + "; ".join(
            " | ".join(str(p) for p in row) for row in self.entries
        ) + "]"


def _det_laplace(entries: tuple[tuple[Poly, ...], ...], variables: tuple[str, ...]) -> Poly:
    n = len(entries)
    if n == 0:
        return Poly.const(variables, ONE)
    if n == 1:
        return entries[0][0]
    zero_counts = [sum(1 for p in row if p.is_zero()) for row in entries]
    pivot_row = max(range(n), key=lambda i: zero_counts[i])
    acc = Poly.zero(variables)
    rest_rows = [entries[i] for i in range(n) if i != pivot_row]
    for j, p in enumerate(entries[pivot_row]):
        if p.is_zero():
            continue
        minor_entries = tuple(
            tuple(row[k] for k in range(n) if k != j) for row in rest_rows
        )
        cofactor = _det_laplace(minor_entries, variables)
        term = p * cofactor
        if (pivot_row + j) % 2:
            term = -term
        acc = acc + term
    return acc


def exact_divide(numerator: Poly, denominator: Poly) -> Poly:
    """Divide assuming exact divisibility (graded-lex leading terms)."""
    if denominator.is_zero():
        raise ZeroDivisionError("exact division by the zero polynomial")
    if numerator.is_zero():
        return numerator
    if denominator.is_constant():
        return numerator.scale(denominator.constant_value().inverse())
    remainder = numerator
    quotient = Poly.zero(numerator.variables)
    den_lead_exp, den_lead_coeff = denominator.sorted_terms()[0]
    while not remainder.is_zero():
        rem_lead_exp, rem_lead_coeff = remainder.sorted_terms()[0]
        diff = tuple(a - b for a, b in zip(rem_lead_exp, den_lead_exp))
        if any(d < 0 for d in diff):
            raise PolynomialError("division is not exact")
        piece = Poly(numerator.variables, {diff: rem_lead_coeff / den_lead_coeff})
        quotient = quotient + piece
        remainder = remainder - piece * denominator
    return quotient


def generic_rank_at_least(pm: PolyMatrix, size: int, variable: str) -> bool:
    """True when a univariate matrix has rank >= size over k(t).

    Sample evaluations give a fast certificate of fullness; the exact
    fallback eliminates fraction-free over the polynomial ring.
    """
    from fractions import Fraction

    for probe in (0, 1, -1, 2, 5, 7):
        value = pm.evaluate({variable: Scalar(Fraction(probe))})
        if value.rank() >= size:
            return True
    m = [list(row) for row in pm.entries]
    rows, cols = pm.rows, pm.cols
    prev = Poly.const(pm.variables, ONE)
    rank = 0
    pivot_row = 0
    while pivot_row < rows and rank < size:
        located = None
        for i in range(pivot_row, rows):
            for j in range(cols):
                if not m[i][j].is_zero():
                    located = (i, j)
                    break
            if located:
                break
        if located is None:
            break
        pi, pj = located
        m[pivot_row], m[pi] = m[pi], m[pivot_row]
        pivot = m[pivot_row][pj]
        for i in range(pivot_row + 1, rows):
            head = m[i][pj]
            m[i] = [exact_divide(pivot * m[i][j] - head * m[pivot_row][j], prev)
                    for j in range(cols)]
        prev = pivot
        pivot_row += 1
        rank += 1
    return rank >= size


def univariate_minor_gcd(pm: PolyMatrix, size: int, variable: str,
                         transpose: bool = False) -> Poly:
    """Monic gcd of all size x size minors of a univariate matrix
    (the zero polynomial when they all vanish identically).

    Zero and duplicate columns are dropped first; enumeration stops as
    soon as the running gcd becomes a nonzero constant. A generic-rank
    certificate short-circuits the identically-degenerate case.
    """
    from .poly import gcd_univariate

    if transpose:
        pm = pm.transpose()
    if size == 0:
        return Poly.const((variable,), ONE)
    seen = set()
    kept = []
    for j in range(pm.cols):
        col = tuple(pm.entries[i][j] for i in range(pm.rows))
        if all(p.is_zero() for p in col) or col in seen:
            continue
        seen.add(col)
        kept.append(j)
    reduced = pm.submatrix(range(pm.rows), kept)
    if reduced.cols < size or reduced.rows < size:
        return Poly.zero((variable,))
    if not generic_rank_at_least(reduced, size, variable):
        return Poly.zero((variable,))
    running: Poly | None = None
    for col_idx in itertools.combinations(range(reduced.cols), size):
        for row_idx in itertools.combinations(range(reduced.rows), size):
            minor = reduced.submatrix(row_idx, col_idx).det()
            if minor.is_zero():
                continue
            running = minor if running is None else gcd_univariate([running, minor], variable)
            if running.total_degree() == 0:
                return Poly.const((variable,), ONE)
    if running is None:
        raise ArithmeticError("generic rank certificate disagrees with minors")
    return gcd_univariate([running], variable)


def linear_pencil(variables: tuple[str, ...],
                  coefficient_matrices: Mapping[str, Matrix]) -> PolyMatrix:
    """Build sum_v (coefficient matrix of v) * v as a PolyMatrix."""
    items = list(coefficient_matrices.items())
    if not items:
        raise PolynomialError("empty pencil")
    rows, cols = items[0][1].rows, items[0][1].cols
    acc = PolyMatrix.zero(rows, cols, variables)
    for name, matrix in items:
        factor = Poly.variable(name, variables)
        acc = acc + PolyMatrix.from_scalar_matrix(matrix, variables, factor)
    return acc
