"""ADHM data on the projective line.

A datum is a quadruple of matrices of linear forms in (x0, x1): two
square pencils B1, B2 on V = k^c, a framing-in map i from W = k^r and a
framing-out map j to W. The canonical internal form is the eight
constant coefficient matrices

    B1 = B10*x0 + B11*x1,  B2 = B20*x0 + B21*x1,
    i  = i0*x0  + i1*x1,   j  = j0*x0  + j1*x1.

The moment map is mu(B1, B2, i, j) = [B1, B2] + i*j, a square matrix of
quadratic forms; its zero locus is the ADHM variety. Stability is the
reachability condition (no proper invariant subspace containing the
image of i), costability the observability condition (no nonzero
invariant subspace inside ker j); both are computed as fixed points of
one-step closure, which is the standard smallest/largest invariant
subspace argument. Pointwise stability over the line is certified by
the gcd of the maximal minors of a Krylov matrix on the chart [1:t],
with the point [0:1] checked separately.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .linalg import Matrix, Subspace, closure, column_span, largest_invariant_inside
from .poly import Poly, split_linear_factors, squarefree_part
from .polymatrix import PolyMatrix, linear_pencil, univariate_minor_gcd
from .scalars import ONE, ZERO, Scalar

P1_VARS = ("x0", "x1")
CHART_VAR = "t"


class AdhmError(ValueError):
    pass


class MomentNonzeroError(AdhmError):
    """An operation that needs the ADHM equation got a datum violating it."""


class NotStableError(AdhmError):
    pass


class SizeLimitError(AdhmError):
    """The charge exceeds the configured cap for exponential enumerations."""


class InvariantViolation(RuntimeError):
    """An internal consistency guarantee failed; never absorbed silently."""


# ---------------------------------------------------------------------------
# data types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AdhmDatum:
    c: int
    r: int
    b10: Matrix
    b11: Matrix
    b20: Matrix
    b21: Matrix
    i0: Matrix
    i1: Matrix
    j0: Matrix
    j1: Matrix

    def __post_init__(self) -> None:
        c, r = self.c, self.r
        if c < 0 or r < 0:
            raise AdhmError("negative dimensions")
        for name in ("b10", "b11", "b20", "b21"):
            m = getattr(self, name)
            if (m.rows, m.cols) != (c, c):
                raise AdhmError(f"{name} must be {c}x{c}, got {m.rows}x{m.cols}")
        for name in ("i0", "i1"):
            m = getattr(self, name)
            if (m.rows, m.cols) != (c, r):
                raise AdhmError(f"{name} must be {c}x{r}, got {m.rows}x{m.cols}")
        for name in ("j0", "j1"):
            m = getattr(self, name)
            if (m.rows, m.cols) != (r, c):
                raise AdhmError(f"{name} must be {r}x{c}, got {m.rows}x{m.cols}")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_pencils(cls, c: int, r: int, b10, b11, b20, b21, i0, i1, j0, j1) -> "AdhmDatum":
        return cls(c, r, b10, b11, b20, b21, i0, i1, j0, j1)

    @classmethod
    def from_linear_forms(cls, b1: PolyMatrix, b2: PolyMatrix,
                          i: PolyMatrix, j: PolyMatrix) -> "AdhmDatum":
        for m in (b1, b2, i, j):
            if m.variables != P1_VARS:
                raise AdhmError(f"linear forms must use variables {P1_VARS}")
            if not m.is_homogeneous(1) and not m.is_zero():
                raise AdhmError("entries must be homogeneous linear forms")
        c = b1.rows
        r = i.cols
        return cls(
            c, r,
            b1.coefficient_matrix("x0"), b1.coefficient_matrix("x1"),
            b2.coefficient_matrix("x0"), b2.coefficient_matrix("x1"),
            i.coefficient_matrix("x0"), i.coefficient_matrix("x1"),
            j.coefficient_matrix("x0"), j.coefficient_matrix("x1"),
        )

    @classmethod
    def zero(cls, c: int, r: int) -> "AdhmDatum":
        return cls(
            c, r,
            Matrix.zero(c, c), Matrix.zero(c, c),
            Matrix.zero(c, c), Matrix.zero(c, c),
            Matrix.zero(c, r), Matrix.zero(c, r),
            Matrix.zero(r, c), Matrix.zero(r, c),
        )

    # -- linear-form views ---------------------------------------------------

    def b1_form(self) -> PolyMatrix:
        return linear_pencil(P1_VARS, {"x0": self.b10, "x1": self.b11})

    def b2_form(self) -> PolyMatrix:
        return linear_pencil(P1_VARS, {"x0": self.b20, "x1": self.b21})

    def i_form(self) -> PolyMatrix:
        return linear_pencil(P1_VARS, {"x0": self.i0, "x1": self.i1})

    def j_form(self) -> PolyMatrix:
        return linear_pencil(P1_VARS, {"x0": self.j0, "x1": self.j1})

    def b_operators(self) -> tuple[Matrix, Matrix, Matrix, Matrix]:
        return (self.b10, self.b11, self.b20, self.b21)


@dataclass(frozen=True)
class ConstantDatum:
    """An ADHM quadruple of plain matrices (the value of a datum at a point)."""

    b1: Matrix
    b2: Matrix
    i: Matrix
    j: Matrix

    @property
    def c(self) -> int:
        return self.b1.rows

    @property
    def r(self) -> int:
        return self.i.cols

    def moment(self) -> Matrix:
        return self.b1.commutator(self.b2) + self.i @ self.j

    def reachable(self) -> Subspace:
        return closure(column_span(self.i), [self.b1, self.b2])

    def unobservable(self) -> Subspace:
        return largest_invariant_inside(self.j.right_kernel(), [self.b1, self.b2])

    def is_stable(self) -> bool:
        return self.reachable().is_full()

    def is_costable(self) -> bool:
        return self.unobservable().is_zero()

    def is_regular(self) -> bool:
        return self.is_stable() and self.is_costable()


@dataclass(frozen=True)
class MomentValue:
    """Value of the moment map: quadratic forms plus the component triple
    mu = mu1*x0^2 + mu2*x0*x1 + mu3*x1^2."""

    quadratic: PolyMatrix
    mu1: Matrix
    mu2: Matrix
    mu3: Matrix

    def is_zero(self) -> bool:
        return self.mu1.is_zero() and self.mu2.is_zero() and self.mu3.is_zero()

    def components(self) -> tuple[Matrix, Matrix, Matrix]:
        return (self.mu1, self.mu2, self.mu3)


@dataclass(frozen=True)
class GroupElement:
    """An invertible basis change on V with its inverse cached exactly."""

    matrix: Matrix
    inverse_matrix: Matrix

    @classmethod
    def from_matrix(cls, m: Matrix) -> "GroupElement":
        return cls(m, m.inverse())

    @classmethod
    def identity(cls, c: int) -> "GroupElement":
        eye = Matrix.identity(c)
        return cls(eye, eye)

    def compose(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.matrix @ other.matrix,
                            other.inverse_matrix @ self.inverse_matrix)

    def inverse(self) -> "GroupElement":
        return GroupElement(self.inverse_matrix, self.matrix)


@dataclass(frozen=True)
class P1Point:
    """A point [a:b] of the line, normalized so the first nonzero
    coordinate is 1."""

    a: Scalar
    b: Scalar

    @classmethod
    def of(cls, a, b) -> "P1Point":
        a = a if isinstance(a, Scalar) else Scalar(Fraction(a))
        b = b if isinstance(b, Scalar) else Scalar(Fraction(b))
        if a.is_zero() and b.is_zero():
            raise AdhmError("[0:0] is not a point of the line")
        if not a.is_zero():
            return cls(ONE, b / a)
        return cls(ZERO, ONE)

    def sort_key(self):
        return (self.a.re, self.a.im, self.b.re, self.b.im)

    def __str__(self) -> str:
        return f"[{self.a}:{self.b}]"


class LocusKind(str, Enum):
    WHOLE_LINE = "whole_line"
    FINITE_SET = "finite_set"


@dataclass(frozen=True)
class UnstableLocus:
    """Points of the line where a pointwise condition fails.

    For a finite locus the points with coordinates in Q(i) are listed
    explicitly; when the certificate gcd has factors that do not split
    over the base field, the squarefree residual polynomial in the
    chart parameter t (point = [1:t]) is attached verbatim.
    """

    kind: LocusKind
    points: tuple[P1Point, ...] = ()
    residual: Poly | None = None

    @classmethod
    def whole_line(cls) -> "UnstableLocus":
        return cls(LocusKind.WHOLE_LINE)

    @classmethod
    def finite(cls, points, residual: Poly | None = None) -> "UnstableLocus":
        pts = tuple(sorted(set(points), key=lambda p: p.sort_key()))
        return cls(LocusKind.FINITE_SET, pts, residual)

    def is_empty(self) -> bool:
        return (self.kind is LocusKind.FINITE_SET and not self.points
                and self.residual is None)


@dataclass(frozen=True)
class PolystableSplit:
    """Exact splitting x = x1 (+) x2 in a basis adapted to V1 (+) V2."""

    v1: Subspace
    v2: Subspace
    x1: AdhmDatum
    x2: AdhmDatum
    basis_change: GroupElement
    x1_regular: bool
    rank0_closed_orbit: str = "undetermined"


@dataclass(frozen=True)
class NotSplit:
    """Returned when the reachable and unobservable subspaces do not form
    a direct sum decomposition of V."""

    v1: Subspace
    v2: Subspace


@dataclass(frozen=True)
class DuDecomposition:
    v2: Subspace
    regular_part: AdhmDatum
    rank0_part: AdhmDatum
    c_prime: int
    basis_change: GroupElement
    input_stable: bool
    regular_part_regular: bool


# ---------------------------------------------------------------------------
# moment map, group action, evaluation
# ---------------------------------------------------------------------------


def moment_map(x: AdhmDatum) -> MomentValue:
    """mu(B1, B2, i, j) = [B1, B2] + i*j as quadratic forms."""
    mu1 = x.b10.commutator(x.b20) + x.i0 @ x.j0
    mu2 = (x.b10.commutator(x.b21) + x.b11.commutator(x.b20)
           + x.i0 @ x.j1 + x.i1 @ x.j0)
    mu3 = x.b11.commutator(x.b21) + x.i1 @ x.j1
    x0 = Poly.variable("x0", P1_VARS)
    x1 = Poly.variable("x1", P1_VARS)
    quad = (PolyMatrix.from_scalar_matrix(mu1, P1_VARS, x0 * x0)
            + PolyMatrix.from_scalar_matrix(mu2, P1_VARS, x0 * x1)
            + PolyMatrix.from_scalar_matrix(mu3, P1_VARS, x1 * x1))
    return MomentValue(quad, mu1, mu2, mu3)


def is_adhm(x: AdhmDatum) -> bool:
    return moment_map(x).is_zero()


def ensure_adhm(x: AdhmDatum) -> None:
    if not is_adhm(x):
        raise MomentNonzeroError("datum does not satisfy the ADHM equation")


def act(g: GroupElement, x: AdhmDatum) -> AdhmDatum:
    """g . (B1, B2, i, j) = (g B1 g^-1, g B2 g^-1, g i, j g^-1), pencil-wise."""
    if g.matrix.rows != x.c:
        raise AdhmError("group element size does not match the datum")
    gm, gi = g.matrix, g.inverse_matrix
    return AdhmDatum(
        x.c, x.r,
        gm @ x.b10 @ gi, gm @ x.b11 @ gi,
        gm @ x.b20 @ gi, gm @ x.b21 @ gi,
        gm @ x.i0, gm @ x.i1,
        x.j0 @ gi, x.j1 @ gi,
    )


def evaluate(x: AdhmDatum, p: P1Point) -> ConstantDatum:
    """Evaluate the pencils at [a:b], i.e. substitute (x0, x1) = (a, b)."""
    a, b = p.a, p.b
    return ConstantDatum(
        x.b10.scale(a) + x.b11.scale(b),
        x.b20.scale(a) + x.b21.scale(b),
        x.i0.scale(a) + x.i1.scale(b),
        x.j0.scale(a) + x.j1.scale(b),
    )


def chern(x: AdhmDatum) -> tuple[int, int]:
    """(rank, charge) of the associated perverse instanton."""
    return (x.r, x.c)


# ---------------------------------------------------------------------------
# stability
# ---------------------------------------------------------------------------


def reachable_subspace(x: AdhmDatum) -> Subspace:
    """Smallest subspace invariant under all four pencil coefficients
    that contains the columns of both coefficients of i."""
    generators = column_span(x.i0).add(column_span(x.i1))
    return closure(generators, x.b_operators())


def unobservable_subspace(x: AdhmDatum) -> Subspace:
    """Largest subspace of ker j0 and ker j1 invariant under all four
    pencil coefficients (limit of the decreasing preimage chain)."""
    constraint = x.j0.right_kernel().intersect(x.j1.right_kernel())
    return largest_invariant_inside(constraint, x.b_operators())


def is_stable(x: AdhmDatum) -> bool:
    return reachable_subspace(x).is_full()


def is_costable(x: AdhmDatum) -> bool:
    return unobservable_subspace(x).is_zero()


def is_regular(x: AdhmDatum) -> bool:
    return is_stable(x) and is_costable(x)


# ---------------------------------------------------------------------------
# pointwise stability over the line
# ---------------------------------------------------------------------------


def _words(letters: list[PolyMatrix], identity: PolyMatrix, max_len: int) -> list[PolyMatrix]:
    """Products over all words of length <= max_len, ordered by length
    then lexicographically in the letters."""
    levels: list[list[PolyMatrix]] = [[identity]]
    for _ in range(max_len):
        previous = levels[-1]
        levels.append([letter @ w for letter in letters for w in previous])
    return [w for level in levels for w in level]


def _chart_pencil(m0: Matrix, m1: Matrix) -> PolyMatrix:
    """m0 + t*m1 on the chart [1:t]."""
    t = Poly.variable(CHART_VAR, (CHART_VAR,))
    return (PolyMatrix.from_scalar_matrix(m0, (CHART_VAR,))
            + PolyMatrix.from_scalar_matrix(m1, (CHART_VAR,), t))


def krylov_chart_matrix(x: AdhmDatum) -> PolyMatrix:
    """Columns w(B1(t), B2(t)) i(t) e_m over words of length <= c-1."""
    b1 = _chart_pencil(x.b10, x.b11)
    b2 = _chart_pencil(x.b20, x.b21)
    i = _chart_pencil(x.i0, x.i1)
    eye = PolyMatrix.from_scalar_matrix(Matrix.identity(x.c), (CHART_VAR,))
    blocks = [w @ i for w in _words([b1, b2], eye, max(0, x.c - 1))]
    out = PolyMatrix.zero(x.c, 0, (CHART_VAR,))
    for block in blocks:
        out = out.hstack(block)
    return out


def observability_chart_matrix(x: AdhmDatum) -> PolyMatrix:
    """Rows e_m^T j(t) w(B1(t), B2(t)) over words of length <= c-1."""
    b1 = _chart_pencil(x.b10, x.b11)
    b2 = _chart_pencil(x.b20, x.b21)
    j = _chart_pencil(x.j0, x.j1)
    eye = PolyMatrix.from_scalar_matrix(Matrix.identity(x.c), (CHART_VAR,))
    blocks = [j @ w for w in _words([b1, b2], eye, max(0, x.c - 1))]
    out = PolyMatrix.zero(0, x.c, (CHART_VAR,))
    for block in blocks:
        out = out.vstack(block)
    return out


def _locus_from_chart_gcd(g: Poly, infinity_bad: bool) -> UnstableLocus:
    if g.is_zero():
        return UnstableLocus.whole_line()
    points: list[P1Point] = []
    if infinity_bad:
        points.append(P1Point.of(0, 1))
    sf = squarefree_part(g, CHART_VAR)
    roots, residual = split_linear_factors(sf, CHART_VAR)
    points.extend(P1Point.of(ONE, root) for root in roots)
    return UnstableLocus.finite(points, residual)


def _check_size(x: AdhmDatum, max_c: int) -> None:
    if x.c > max_c:
        raise SizeLimitError(
            f"charge {x.c} exceeds the cap {max_c} for Krylov enumeration"
        )


def unstable_locus(x: AdhmDatum, max_c: int = 8) -> UnstableLocus:
    """The exact set of points p with x(p) not stable."""
    _check_size(x, max_c)
    if x.c == 0:
        return UnstableLocus.finite([])
    kry = krylov_chart_matrix(x)
    g = univariate_minor_gcd(kry, x.c, CHART_VAR)
    if g.is_zero():
        if evaluate(x, P1Point.of(0, 1)).is_stable():
            raise InvariantViolation(
                "chart-wide instability with a stable point at infinity"
            )
        return UnstableLocus.whole_line()
    infinity_bad = not evaluate(x, P1Point.of(0, 1)).is_stable()
    return _locus_from_chart_gcd(g, infinity_bad)


def uncostable_locus(x: AdhmDatum, max_c: int = 8) -> UnstableLocus:
    """The exact set of points p with x(p) not costable."""
    _check_size(x, max_c)
    if x.c == 0:
        return UnstableLocus.finite([])
    obs = observability_chart_matrix(x)
    g = univariate_minor_gcd(obs, x.c, CHART_VAR, transpose=True)
    if g.is_zero():
        if evaluate(x, P1Point.of(0, 1)).is_costable():
            raise InvariantViolation(
                "chart-wide costability failure with a costable point at infinity"
            )
        return UnstableLocus.whole_line()
    infinity_bad = not evaluate(x, P1Point.of(0, 1)).is_costable()
    return _locus_from_chart_gcd(g, infinity_bad)


def is_fj_stable(x: AdhmDatum, max_c: int = 8) -> bool:
    """Stable at every point of the line."""
    return unstable_locus(x, max_c).is_empty()


def is_fj_semistable(x: AdhmDatum, max_c: int = 8) -> bool:
    """Stable at some point of the line."""
    return unstable_locus(x, max_c).kind is not LocusKind.WHOLE_LINE


def is_fj_costable(x: AdhmDatum, max_c: int = 8) -> bool:
    return uncostable_locus(x, max_c).is_empty()


def is_fj_regular(x: AdhmDatum, max_c: int = 8) -> bool:
    return is_fj_stable(x, max_c) and is_fj_costable(x, max_c)


# ---------------------------------------------------------------------------
# splittings
# ---------------------------------------------------------------------------


def _restrict_operator(m: Matrix, sub: Subspace) -> Matrix:
    """Matrix of m restricted to an m-invariant subspace, in the
    reduced-echelon basis of the subspace."""
    pivots = [next(k for k, e in enumerate(row) if not e.is_zero())
              for row in sub.basis.entries]
    image = m @ sub.basis.transpose()
    data = tuple(
        tuple(image.entries[p][col] for col in range(sub.dim)) for p in pivots
    )
    restricted = Matrix(sub.dim, sub.dim, data)
    if sub.basis.transpose() @ restricted != image:
        raise InvariantViolation("subspace is not invariant under the operator")
    return restricted


def _quotient_maps(sub: Subspace) -> tuple[Matrix, Matrix]:
    """(projection, section) matrices for V -> V/sub in complement
    coordinates (the non-pivot standard coordinates)."""
    n = sub.ambient_dim
    pivots = [next(k for k, e in enumerate(row) if not e.is_zero())
              for row in sub.basis.entries]
    pivot_set = set(pivots)
    complement = [m for m in range(n) if m not in pivot_set]
    proj_rows = []
    for m in complement:
        row = [ZERO] * n
        row[m] = ONE
        for basis_row, p in zip(sub.basis.entries, pivots):
            row[p] = -basis_row[m]
        proj_rows.append(row)
    projection = Matrix.from_rows(proj_rows, cols=n)
    section_rows = []
    for k in range(n):
        row = [ZERO] * len(complement)
        if k in complement:
            row[complement.index(k)] = ONE
        section_rows.append(row)
    section = Matrix.from_rows(section_rows, cols=len(complement))
    return projection, section


def restrict_to_invariant(x: AdhmDatum, sub: Subspace) -> AdhmDatum:
    """The rank-0 datum carried by an invariant subspace of V."""
    d = sub.dim
    return AdhmDatum(
        d, 0,
        _restrict_operator(x.b10, sub), _restrict_operator(x.b11, sub),
        _restrict_operator(x.b20, sub), _restrict_operator(x.b21, sub),
        Matrix.zero(d, 0), Matrix.zero(d, 0),
        Matrix.zero(0, d), Matrix.zero(0, d),
    )


def try_polystable_split(x: AdhmDatum) -> PolystableSplit | NotSplit:
    """Split off the rank-0 part when V decomposes as the direct sum of
    the reachable subspace V1 and the unobservable subspace V2."""
    ensure_adhm(x)
    v1 = reachable_subspace(x)
    v2 = unobservable_subspace(x)
    if v1.dim + v2.dim != x.c or not v1.intersect(v2).is_zero():
        return NotSplit(v1, v2)
    basis = v1.basis.vstack(v2.basis)
    g = GroupElement.from_matrix(basis.transpose().inverse())
    adapted = act(g, x)
    d1 = v1.dim
    top = range(d1)
    bottom = range(d1, x.c)
    for m in (adapted.b10, adapted.b11, adapted.b20, adapted.b21):
        if not m.submatrix(top, bottom).is_zero() or not m.submatrix(bottom, top).is_zero():
            raise InvariantViolation("adapted pencils are not block diagonal")
    if not (adapted.i0.submatrix(bottom, range(x.r)).is_zero()
            and adapted.i1.submatrix(bottom, range(x.r)).is_zero()):
        raise InvariantViolation("framing-in map does not land in V1")
    if not (adapted.j0.submatrix(range(x.r), bottom).is_zero()
            and adapted.j1.submatrix(range(x.r), bottom).is_zero()):
        raise InvariantViolation("framing-out map does not kill V2")
    x1 = AdhmDatum(
        d1, x.r,
        adapted.b10.submatrix(top, top), adapted.b11.submatrix(top, top),
        adapted.b20.submatrix(top, top), adapted.b21.submatrix(top, top),
        adapted.i0.submatrix(top, range(x.r)), adapted.i1.submatrix(top, range(x.r)),
        adapted.j0.submatrix(range(x.r), top), adapted.j1.submatrix(range(x.r), top),
    )
    d2 = v2.dim
    x2 = AdhmDatum(
        d2, 0,
        adapted.b10.submatrix(bottom, bottom), adapted.b11.submatrix(bottom, bottom),
        adapted.b20.submatrix(bottom, bottom), adapted.b21.submatrix(bottom, bottom),
        Matrix.zero(d2, 0), Matrix.zero(d2, 0),
        Matrix.zero(0, d2), Matrix.zero(0, d2),
    )
    return PolystableSplit(v1, v2, x1, x2, g, x1_regular=is_regular(x1))


def du_decompose(x: AdhmDatum, require_stable: bool = True) -> DuDecomposition:
    """Quotient out the unobservable subspace: the regular quotient datum
    plus the rank-0 datum carried by V2 (charge bookkeeping c = c' + dim V2).
    """
    ensure_adhm(x)
    stable = is_stable(x)
    if require_stable and not stable:
        raise NotStableError("decomposition requires a stable datum")
    v2 = unobservable_subspace(x)
    rank0_part = restrict_to_invariant(x, v2)
    projection, section = _quotient_maps(v2)
    c_prime = x.c - v2.dim
    regular_part = AdhmDatum(
        c_prime, x.r,
        projection @ x.b10 @ section, projection @ x.b11 @ section,
        projection @ x.b20 @ section, projection @ x.b21 @ section,
        projection @ x.i0, projection @ x.i1,
        x.j0 @ section, x.j1 @ section,
    )
    n = x.c
    pivots = [next(k for k, e in enumerate(row) if not e.is_zero())
              for row in v2.basis.entries]
    complement = [m for m in range(n) if m not in set(pivots)]
    rows = [
        [ONE if k == m else ZERO for k in range(n)] for m in complement
    ]
    basis = Matrix.from_rows(rows, cols=n).vstack(v2.basis) if rows else v2.basis
    g = GroupElement.from_matrix(basis.transpose().inverse())
    return DuDecomposition(
        v2=v2,
        regular_part=regular_part,
        rank0_part=rank0_part,
        c_prime=c_prime,
        basis_change=g,
        input_stable=stable,
        regular_part_regular=is_regular(regular_part),
    )


# ---------------------------------------------------------------------------
# direct sums (test and fixture plumbing)
# ---------------------------------------------------------------------------


def _block_diag(a: Matrix, b: Matrix) -> Matrix:
    top = a.hstack(Matrix.zero(a.rows, b.cols))
    bottom = Matrix.zero(b.rows, a.cols).hstack(b)
    return top.vstack(bottom)


def direct_sum_with_rank0(x: AdhmDatum, y: AdhmDatum) -> AdhmDatum:
    """x (+) y on V_x (+) V_y sharing the framing space of x; y must
    have rank 0 so the moment map stays zero blockwise."""
    if y.r != 0:
        raise AdhmError("second summand must have rank 0")
    return AdhmDatum(
        x.c + y.c, x.r,
        _block_diag(x.b10, y.b10), _block_diag(x.b11, y.b11),
        _block_diag(x.b20, y.b20), _block_diag(x.b21, y.b21),
        x.i0.vstack(Matrix.zero(y.c, x.r)), x.i1.vstack(Matrix.zero(y.c, x.r)),
        x.j0.hstack(Matrix.zero(x.r, y.c)), x.j1.hstack(Matrix.zero(x.r, y.c)),
    )


def direct_sum_framed(x: AdhmDatum, y: AdhmDatum) -> AdhmDatum:
    """x (+) y on V_x (+) V_y and W_x (+) W_y (both framings kept)."""
    return AdhmDatum(
        x.c + y.c, x.r + y.r,
        _block_diag(x.b10, y.b10), _block_diag(x.b11, y.b11),
        _block_diag(x.b20, y.b20), _block_diag(x.b21, y.b21),
        _block_diag(x.i0, y.i0), _block_diag(x.i1, y.i1),
        _block_diag(x.j0, y.j0), _block_diag(x.j1, y.j1),
    )
