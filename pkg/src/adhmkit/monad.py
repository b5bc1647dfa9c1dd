"""The monad on projective 3-space attached to an ADHM datum.

For a datum (B1, B2, i, j) the two maps of the three-term complex

    V(-1) --alpha--> (V + V + W) --beta--> V(1)

are assembled blockwise as

    alpha = [ B1 + 1*x2 ]        beta = [ -B2 - 1*x3 | B1 + 1*x2 | i ]
            [ B2 + 1*x3 ]
            [     j     ]

and beta*alpha vanishes identically exactly when the moment map does.
Away from the locus where alpha drops rank or beta fails to surject,
the middle cohomology is a sheaf of rank r; along the line at infinity
x0 = x1 = 0 both maps always have full rank and the W summand of the
middle term identifies the fiber with the framing space.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .adhm import AdhmDatum, InvariantViolation, MomentNonzeroError, is_adhm
from .linalg import Matrix
from .poly import Poly, split_linear_factors, squarefree_part
from .polymatrix import PolyMatrix, univariate_minor_gcd
from .scalars import ONE, Scalar

P3_VARS = ("x0", "x1", "x2", "x3")
LINE_VAR = "t"


class MonadError(ValueError):
    pass


class FramingError(InvariantViolation):
    """The restriction to the line at infinity is not the trivial rank-r
    sheaf; for an ADHM datum this is an internal inconsistency."""


@dataclass(frozen=True)
class P3Point:
    """A point of projective 3-space, normalized so the first nonzero
    coordinate is 1."""

    x0: Scalar
    x1: Scalar
    x2: Scalar
    x3: Scalar

    @classmethod
    def of(cls, x0, x1, x2, x3) -> "P3Point":
        coords = [
            v if isinstance(v, Scalar) else Scalar(Fraction(v))
            for v in (x0, x1, x2, x3)
        ]
        lead = next((v for v in coords if not v.is_zero()), None)
        if lead is None:
            raise MonadError("[0:0:0:0] is not a point")
        inv = lead.inverse()
        return cls(*(v * inv for v in coords))

    def coords(self) -> tuple[Scalar, Scalar, Scalar, Scalar]:
        return (self.x0, self.x1, self.x2, self.x3)

    def assignment(self) -> dict[str, Scalar]:
        return dict(zip(P3_VARS, self.coords()))

    def __str__(self) -> str:
        return f"[{self.x0}:{self.x1}:{self.x2}:{self.x3}]"


@dataclass(frozen=True)
class Monad:
    c: int
    r: int
    alpha: PolyMatrix
    beta: PolyMatrix


@dataclass(frozen=True)
class MonadPointReport:
    point: P3Point
    alpha_value: Matrix
    beta_value: Matrix
    rank_alpha: int
    rank_beta: int
    ker_alpha_dim: int
    coker_beta_dim: int
    fiber_dim: int | None

    def alpha_injective(self) -> bool:
        return self.ker_alpha_dim == 0

    def beta_surjective(self) -> bool:
        return self.coker_beta_dim == 0


@dataclass(frozen=True)
class FramingReport:
    valid: bool
    rank: int
    alpha_certificate: Poly
    beta_certificate: Poly
    w_summand: tuple[int, int]
    failure: str | None = None


@dataclass(frozen=True)
class LineLocus:
    """Degeneracy points along a parametrized line p0 + t*p1."""

    whole_line: bool
    params: tuple[Scalar, ...] = ()
    points: tuple[P3Point, ...] = ()
    infinity_degenerate: bool = False
    residual: Poly | None = None

    def is_empty(self) -> bool:
        return (not self.whole_line and not self.params
                and not self.infinity_degenerate and self.residual is None)


@dataclass(frozen=True)
class LineRestrictionReport:
    p0: P3Point
    p1: P3Point
    alpha_locus: LineLocus
    beta_locus: LineLocus


@dataclass(frozen=True)
class LinearSubspaceParam:
    """A linear subspace of P3 given parametrically: each coordinate is
    a linear form in parameters s0..sk; the coefficient matrix must
    have full rank."""

    forms: tuple[Poly, Poly, Poly, Poly]

    @classmethod
    def from_coefficients(cls, rows: list[list]) -> "LinearSubspaceParam":
        """rows[k] lists the coefficients of (s0..sk) in coordinate x_k."""
        if len(rows) != 4:
            raise MonadError("need exactly four coordinate forms")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise MonadError("ragged parameter coefficients")
        params = tuple(f"s{k}" for k in range(width))
        coeff = Matrix.from_rows(rows, cols=width)
        if coeff.rank() != width:
            raise MonadError("parametrization is not of full rank")
        forms = tuple(
            Poly.linear_form(params, dict(zip(params, row)))
            for row in coeff.entries
        )
        return cls(forms)  # type: ignore[arg-type]

    @property
    def parameters(self) -> tuple[str, ...]:
        return self.forms[0].variables

    def substitution(self) -> dict[str, Poly]:
        return dict(zip(P3_VARS, self.forms))


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------


def _lift(pm: PolyMatrix) -> PolyMatrix:
    return pm.substitute({}, P3_VARS)


def build_maps(x: AdhmDatum) -> tuple[PolyMatrix, PolyMatrix]:
    """The (alpha, beta) block matrices of any datum, gated by nothing."""
    c, r = x.c, x.r
    x2 = Poly.variable("x2", P3_VARS)
    x3 = Poly.variable("x3", P3_VARS)
    b1 = _lift(x.b1_form()) + PolyMatrix.identity_times(c, x2)
    b2 = _lift(x.b2_form()) + PolyMatrix.identity_times(c, x3)
    i = _lift(x.i_form())
    j = _lift(x.j_form())
    alpha = b1.vstack(b2).vstack(j)
    beta = (-b2).hstack(b1).hstack(i)
    return alpha, beta


def monad_identity_iff_moment(x: AdhmDatum) -> tuple[bool, bool]:
    """(beta*alpha == 0, moment map == 0); the two always agree."""
    alpha, beta = build_maps(x)
    return ((beta @ alpha).is_zero(), is_adhm(x))


def build_monad(x: AdhmDatum) -> Monad:
    if not is_adhm(x):
        raise MomentNonzeroError(
            "the complex is a monad only for data with vanishing moment map"
        )
    alpha, beta = build_maps(x)
    if not (beta @ alpha).is_zero():
        raise InvariantViolation("beta*alpha nonzero on an ADHM datum")
    return Monad(x.c, x.r, alpha, beta)


# ---------------------------------------------------------------------------
# pointwise evaluation and degeneracy loci
# ---------------------------------------------------------------------------


def eval_monad(m: Monad, p: P3Point) -> MonadPointReport:
    assignment = p.assignment()
    alpha_value = m.alpha.evaluate(assignment)
    beta_value = m.beta.evaluate(assignment)
    rank_alpha = alpha_value.rank()
    rank_beta = beta_value.rank()
    ker_alpha = m.c - rank_alpha
    coker_beta = m.c - rank_beta
    fiber = None
    if ker_alpha == 0:
        ker_beta_dim = (2 * m.c + m.r) - rank_beta
        fiber = ker_beta_dim - rank_alpha
    return MonadPointReport(
        point=p,
        alpha_value=alpha_value,
        beta_value=beta_value,
        rank_alpha=rank_alpha,
        rank_beta=rank_beta,
        ker_alpha_dim=ker_alpha,
        coker_beta_dim=coker_beta,
        fiber_dim=fiber,
    )


def alpha_degeneracy_minors(m: Monad) -> list[Poly]:
    """All c x c minors of alpha; their common zero locus is where alpha
    fails to be injective."""
    return m.alpha.minors(m.c)


def beta_degeneracy_minors(m: Monad) -> list[Poly]:
    """All c x c minors of beta; their common zero locus is where beta
    fails to be surjective."""
    return m.beta.minors(m.c)


def vanishes_on(poly: Poly, locus: LinearSubspaceParam) -> bool:
    """Substitute the parametrization and test for the zero polynomial."""
    return poly.substitute(locus.substitution(), locus.parameters).is_zero()


# ---------------------------------------------------------------------------
# the line at infinity
# ---------------------------------------------------------------------------


def _restrict_linf(pm: PolyMatrix, chart: str) -> PolyMatrix:
    zero = Poly.zero((LINE_VAR,))
    one = Poly.const((LINE_VAR,), ONE)
    t = Poly.variable(LINE_VAR, (LINE_VAR,))
    if chart == "x2":
        assignment = {"x0": zero, "x1": zero, "x2": one, "x3": t}
    else:
        assignment = {"x0": zero, "x1": zero, "x2": t, "x3": one}
    return pm.substitute(assignment, (LINE_VAR,))


def framing_on_linf(m: Monad) -> FramingReport:
    """Certify that the monad restricted to x0 = x1 = 0 is the trivial
    rank-r sheaf carried by the W summand of the middle term."""
    w_summand = (2 * m.c, 2 * m.c + m.r)
    alpha_cert = univariate_minor_gcd(_restrict_linf(m.alpha, "x2"), m.c, LINE_VAR)
    beta_cert = univariate_minor_gcd(_restrict_linf(m.beta, "x2"), m.c, LINE_VAR)
    failure = None
    if alpha_cert.is_zero() or alpha_cert.total_degree() > 0:
        failure = "alpha drops rank along the line at infinity"
    elif beta_cert.is_zero() or beta_cert.total_degree() > 0:
        failure = "beta drops rank along the line at infinity"
    else:
        for point in (P3Point.of(0, 0, 0, 1), P3Point.of(0, 0, 1, 0), P3Point.of(0, 0, 1, 1)):
            report = eval_monad(m, point)
            if report.rank_alpha != m.c or report.rank_beta != m.c:
                failure = f"rank drop at {point}"
                break
            if not _w_identification_ok(m, report):
                failure = f"W summand does not span the fiber at {point}"
                break
    return FramingReport(
        valid=failure is None,
        rank=m.r,
        alpha_certificate=alpha_cert,
        beta_certificate=beta_cert,
        w_summand=w_summand,
        failure=failure,
    )


def _w_identification_ok(m: Monad, report: MonadPointReport) -> bool:
    """The projection of ker beta(p) onto the W block must be onto and
    must kill im alpha(p); with full ranks this pins the fiber to W."""
    kernel = report.beta_value.right_kernel()
    projection = kernel.basis.submatrix(
        range(kernel.dim), range(2 * m.c, 2 * m.c + m.r)
    )
    if projection.rank() != m.r:
        return False
    w_rows = report.alpha_value.submatrix(
        range(2 * m.c, 2 * m.c + m.r), range(m.c)
    )
    return w_rows.is_zero()


def check_framing(m: Monad) -> FramingReport:
    report = framing_on_linf(m)
    if not report.valid:
        raise FramingError(report.failure or "framing failed")
    return report


# ---------------------------------------------------------------------------
# restriction to a line
# ---------------------------------------------------------------------------


def _line_substitution(p0: P3Point, p1: P3Point) -> dict[str, Poly]:
    t = Poly.variable(LINE_VAR, (LINE_VAR,))
    assignment = {}
    for name, a, b in zip(P3_VARS, p0.coords(), p1.coords()):
        assignment[name] = Poly.const((LINE_VAR,), a) + t.scale(b)
    return assignment


def _line_locus(pm_line: PolyMatrix, size: int, p0: P3Point, p1: P3Point,
                value_at_infinity: Matrix) -> LineLocus:
    g = univariate_minor_gcd(pm_line, size, LINE_VAR)
    infinity_bad = value_at_infinity.rank() < size
    if g.is_zero():
        return LineLocus(whole_line=True, infinity_degenerate=infinity_bad)
    roots, residual = split_linear_factors(squarefree_part(g, LINE_VAR), LINE_VAR)
    params = tuple(roots)
    points = tuple(
        P3Point.of(*(a + root * b for a, b in zip(p0.coords(), p1.coords())))
        for root in roots
    )
    return LineLocus(
        whole_line=False,
        params=params,
        points=points,
        infinity_degenerate=infinity_bad,
        residual=residual,
    )


def restriction_pencil(m: Monad, p0: P3Point, p1: P3Point) -> LineRestrictionReport:
    """Restrict the monad to the line {p0 + t*p1} (plus p1 at infinity)
    and report exact degeneracy points of alpha and beta."""
    if p0 == p1:
        raise MonadError("the two points must be distinct")
    substitution = _line_substitution(p0, p1)
    alpha_line = m.alpha.substitute(substitution, (LINE_VAR,))
    beta_line = m.beta.substitute(substitution, (LINE_VAR,))
    at_infinity = p1.assignment()
    alpha_locus = _line_locus(alpha_line, m.c, p0, p1, m.alpha.evaluate(at_infinity))
    beta_locus = _line_locus(beta_line, m.c, p0, p1, m.beta.evaluate(at_infinity))
    return LineRestrictionReport(p0, p1, alpha_locus, beta_locus)
