"""Rank-0 data as modules over a noncommutative four-generator algebra.

A rank-0 datum (no framing) is a pair of pencils, eight entries short
of a full datum; it is the same thing as a module over the algebra with
generators y1, y2, z1, z2 and relations

    y1*y2 - y2*y1,   z1*z2 - z2*z1,   y1*z2 - z2*y1 + y2*z1 - z1*y2.

Generator actions are read off the pencil coefficients as

    (A_y1, A_y2, A_z1, A_z2) = (B10, B20, -B11, B21),

which makes the three relations exactly the vanishing of the three
moment-map components (mu1, -mu3, mu2); the sign on A_z1 is what aligns
the mixed relation with the mixed moment component. Conjugation
invariants are generalized traces of words in the four actions; in
characteristic zero words up to length c^2 generate the invariant ring.

A configuration of c lines {x2 = a*x0 + b*x1, x3 = c*x0 + d*x1} avoiding
the line at infinity maps to the block-diagonal datum with 1x1 blocks
B1 = -(a*x0 + b*x1), B2 = -(c*x0 + d*x1); this sign is pinned by the
monad support check (beta drops rank exactly along the given lines).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .adhm import AdhmDatum, AdhmError, ensure_adhm, is_adhm
from .linalg import Matrix
from .poly import Poly
from .polymatrix import PolyMatrix
from .scalars import ONE, ZERO, Scalar

GENERATORS = ("y1", "y2", "z1", "z2")
DEFAULT_WORD_CAP = 8


class RModuleError(ValueError):
    pass


@dataclass(frozen=True)
class RModule:
    """Four generator actions on k^dim satisfying the algebra relations."""

    dim: int
    a_y1: Matrix
    a_y2: Matrix
    a_z1: Matrix
    a_z2: Matrix

    def __post_init__(self) -> None:
        for name in ("a_y1", "a_y2", "a_z1", "a_z2"):
            m = getattr(self, name)
            if (m.rows, m.cols) != (self.dim, self.dim):
                raise RModuleError(f"{name} must be {self.dim}x{self.dim}")
        if not relations_hold(self.a_y1, self.a_y2, self.a_z1, self.a_z2):
            raise RModuleError("generator actions violate the algebra relations")

    def action(self, generator: str) -> Matrix:
        return {
            "y1": self.a_y1, "y2": self.a_y2, "z1": self.a_z1, "z2": self.a_z2,
        }[generator]


def relations_hold(a_y1: Matrix, a_y2: Matrix, a_z1: Matrix, a_z2: Matrix) -> bool:
    if not a_y1.commutator(a_y2).is_zero():
        return False
    if not a_z1.commutator(a_z2).is_zero():
        return False
    mixed = a_y1.commutator(a_z2) + a_y2.commutator(a_z1)
    return mixed.is_zero()


def datum_to_module(x: AdhmDatum) -> RModule:
    """Read the generator actions off a rank-0 ADHM datum; the algebra
    relations hold exactly when the moment map vanishes, so validation
    happens in the module constructor."""
    if x.r != 0:
        raise RModuleError("module interpretation needs a rank-0 datum")
    return RModule(x.c, x.b10, x.b20, -x.b11, x.b21)


def module_to_datum(m: RModule) -> AdhmDatum:
    c = m.dim
    return AdhmDatum(
        c, 0,
        m.a_y1, -m.a_z1, m.a_y2, m.a_z2,
        Matrix.zero(c, 0), Matrix.zero(c, 0),
        Matrix.zero(0, c), Matrix.zero(0, c),
    )


# ---------------------------------------------------------------------------
# trace invariants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TraceVector:
    """Traces of all generator words up to a length cap, in (length,
    lexicographic) word order; the empty word records the dimension."""

    max_len: int
    entries: dict[tuple[str, ...], Scalar]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TraceVector):
            return NotImplemented
        return self.max_len == other.max_len and self.entries == other.entries

    def get(self, *word: str) -> Scalar:
        return self.entries[tuple(word)]

    def words(self) -> list[tuple[str, ...]]:
        return sorted(self.entries.keys(), key=lambda w: (len(w), w))


def trace_invariants(m: RModule, max_len: int | None = None) -> TraceVector:
    if max_len is None:
        max_len = max(1, min(m.dim * m.dim, DEFAULT_WORD_CAP))
    if max_len < 1:
        raise RModuleError("word length cap must be at least 1")
    entries: dict[tuple[str, ...], Scalar] = {
        (): Scalar(Fraction(m.dim))
    }
    level: list[tuple[tuple[str, ...], Matrix]] = [((), Matrix.identity(m.dim))]
    for _ in range(max_len):
        next_level = []
        for word, product in level:
            for name in GENERATORS:
                grown = (*word, name)
                value = m.action(name) @ product
                entries[grown] = value.trace()
                next_level.append((grown, value))
        level = next_level
    return TraceVector(max_len, entries)


class OrbitVerdict(str, Enum):
    DISTINCT_ORBITS_CERTIFIED = "distinct_orbits_certified"
    INDISTINGUISHABLE = "indistinguishable"


def separate_by_traces(m1: RModule, m2: RModule,
                       max_len: int | None = None) -> OrbitVerdict:
    """Certify distinct closed orbits by a differing word trace.

    Indistinguishable is not an isomorphism certificate: non-closed
    orbits (nilpotent actions) share all traces with their limits.
    """
    if m1.dim != m2.dim:
        raise RModuleError("modules must have equal dimension")
    t1 = trace_invariants(m1, max_len)
    t2 = trace_invariants(m2, max_len)
    if t1 == t2:
        return OrbitVerdict.INDISTINGUISHABLE
    return OrbitVerdict.DISTINCT_ORBITS_CERTIFIED


# ---------------------------------------------------------------------------
# line configurations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LineConfig:
    """c lines {x2 = a*x0 + b*x1, x3 = c*x0 + d*x1} disjoint from the
    line at infinity; multiset semantics."""

    lines: tuple[tuple[Scalar, Scalar, Scalar, Scalar], ...]

    @classmethod
    def of(cls, quadruples: Iterable[Sequence]) -> "LineConfig":
        lines = []
        for quad in quadruples:
            if len(quad) != 4:
                raise AdhmError("a line needs exactly four affine parameters")
            lines.append(tuple(
                v if isinstance(v, Scalar) else Scalar(Fraction(v)) for v in quad
            ))
        return cls(tuple(lines))

    def __len__(self) -> int:
        return len(self.lines)

    def as_multiset(self) -> tuple:
        return tuple(sorted(
            ((a.re, a.im, b.re, b.im, c.re, c.im, d.re, d.im)
             for a, b, c, d in self.lines)
        ))


def lines_to_datum(config: LineConfig) -> AdhmDatum:
    """Block-diagonal rank-0 datum supported on the given lines."""
    c = len(config)
    diag = {
        "b10": [], "b11": [], "b20": [], "b21": [],
    }
    for a, b, c_par, d in config.lines:
        diag["b10"].append(-a)
        diag["b11"].append(-b)
        diag["b20"].append(-c_par)
        diag["b21"].append(-d)

    def diagonal(values: list[Scalar]) -> Matrix:
        return Matrix(c, c, tuple(
            tuple(values[i] if i == j else ZERO for j in range(c)) for i in range(c)
        ))

    datum = AdhmDatum(
        c, 0,
        diagonal(diag["b10"]), diagonal(diag["b11"]),
        diagonal(diag["b20"]), diagonal(diag["b21"]),
        Matrix.zero(c, 0), Matrix.zero(c, 0),
        Matrix.zero(0, c), Matrix.zero(0, c),
    )
    ensure_adhm(datum)
    return datum


# ---------------------------------------------------------------------------
# charge-1 data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Charge1Datum:
    """Charge-1 framing vectors: i = (x, y), j = (z, w) pencil-wise."""

    r: int
    x: tuple[Scalar, ...]
    y: tuple[Scalar, ...]
    z: tuple[Scalar, ...]
    w: tuple[Scalar, ...]

    @classmethod
    def of(cls, x, y, z, w) -> "Charge1Datum":
        def coerce(vec):
            return tuple(
                v if isinstance(v, Scalar) else Scalar(Fraction(v)) for v in vec
            )
        cx, cy, cz, cw = coerce(x), coerce(y), coerce(z), coerce(w)
        r = len(cx)
        if any(len(v) != r for v in (cy, cz, cw)):
            raise AdhmError("charge-1 vectors must share a length")
        return cls(r, cx, cy, cz, cw)


def _dot(u: tuple[Scalar, ...], v: tuple[Scalar, ...]) -> Scalar:
    acc = ZERO
    for a, b in zip(u, v):
        acc = acc + a * b
    return acc


def charge1_residuals(d: Charge1Datum) -> tuple[Scalar, Scalar, Scalar]:
    """(sum x_k z_k, sum y_k w_k, sum x_k w_k + y_k z_k)."""
    return (
        _dot(d.x, d.z),
        _dot(d.y, d.w),
        _dot(d.x, d.w) + _dot(d.y, d.z),
    )


def charge1_dmu(d: Charge1Datum) -> Matrix:
    """The 3 x 4r derivative of the charge-1 moment equations in the
    variable order (x | y | z | w)."""
    r = d.r
    zero = (ZERO,) * r
    row1 = d.z + zero + d.x + zero
    row2 = zero + d.w + zero + d.y
    row3 = d.w + d.z + d.y + d.x
    return Matrix(3, 4 * r, (row1, row2, row3))


def charge1_dmu_rank(d: Charge1Datum) -> int:
    return charge1_dmu(d).rank()


@dataclass(frozen=True)
class Charge1Flags:
    stable: bool
    costable: bool
    fj_stable: bool


def charge1_classify(d: Charge1Datum) -> Charge1Flags:
    """Stable iff some framing-in vector is nonzero; costable iff some
    framing-out vector is; pointwise stable everywhere iff the two
    framing-in vectors are linearly independent."""
    i_nonzero = any(not v.is_zero() for v in d.x + d.y)
    j_nonzero = any(not v.is_zero() for v in d.z + d.w)
    pair = Matrix(2, d.r, (d.x, d.y))
    return Charge1Flags(
        stable=i_nonzero,
        costable=j_nonzero,
        fj_stable=pair.rank() == 2,
    )


def charge1_to_datum(d: Charge1Datum, b_values: Sequence[Scalar] | None = None) -> AdhmDatum:
    """Assemble the c = 1 ADHM datum (the 1x1 pencils commute, so only
    the framing product constrains)."""
    b = tuple(b_values) if b_values is not None else (ZERO, ZERO, ZERO, ZERO)
    if len(b) != 4:
        raise AdhmError("need four 1x1 pencil values")
    one_by = lambda v: Matrix(1, 1, ((v,),))
    return AdhmDatum(
        1, d.r,
        one_by(b[0]), one_by(b[1]), one_by(b[2]), one_by(b[3]),
        Matrix(1, d.r, (d.x,)), Matrix(1, d.r, (d.y,)),
        Matrix(d.r, 1, tuple((v,) for v in d.z)),
        Matrix(d.r, 1, tuple((v,) for v in d.w)),
    )


# ---------------------------------------------------------------------------
# the charge-2 component fixtures
# ---------------------------------------------------------------------------

PAIR_PARAMS = ("y1", "y2", "y3", "y4", "y5", "y6")


def commuting_pair_symbolic() -> tuple[PolyMatrix, PolyMatrix]:
    """The parametrized commuting pair: both matrices are conjugates of
    upper-triangular ones by the same unipotent, with a shared shape
    parameter y2, so they commute identically in the parameters."""
    v = {name: Poly.variable(name, PAIR_PARAMS) for name in PAIR_PARAMS}
    one = Poly.const(PAIR_PARAMS, ONE)
    zero = Poly.zero(PAIR_PARAMS)
    lower = PolyMatrix.from_rows(PAIR_PARAMS, [[one, zero], [v["y1"], one]])
    lower_inv = PolyMatrix.from_rows(PAIR_PARAMS, [[one, zero], [-v["y1"], one]])
    tri_a = PolyMatrix.from_rows(PAIR_PARAMS, [
        [v["y3"], v["y2"] * (v["y3"] - v["y4"])],
        [zero, v["y4"]],
    ])
    tri_b = PolyMatrix.from_rows(PAIR_PARAMS, [
        [v["y5"], v["y2"] * (v["y5"] - v["y6"])],
        [zero, v["y6"]],
    ])
    return (lower @ tri_a @ lower_inv, lower @ tri_b @ lower_inv)


def commuting_pair(values: Sequence[Scalar]) -> tuple[Matrix, Matrix]:
    """Evaluate the parametrized commuting pair at six scalars."""
    if len(values) != 6:
        raise RModuleError("need six parameters")
    assignment = dict(zip(PAIR_PARAMS, values))
    sym_a, sym_b = commuting_pair_symbolic()
    return sym_a.evaluate(assignment), sym_b.evaluate(assignment)


def pair_parametrization(params: Sequence[Scalar]) -> AdhmDatum:
    """Map twelve parameters (six per pencil slot) to the charge-2
    rank-0 datum whose slot pairs are the two commuting pairs."""
    if len(params) != 12:
        raise RModuleError("need twelve parameters")
    b10, b20 = commuting_pair(params[:6])
    b11, b21 = commuting_pair(params[6:])
    return AdhmDatum(
        2, 0, b10, b11, b20, b21,
        Matrix.zero(2, 0), Matrix.zero(2, 0),
        Matrix.zero(0, 2), Matrix.zero(0, 2),
    )


def mixed_equation_value(x: AdhmDatum) -> Matrix:
    """The mixed moment component [B10, B21] + [B11, B20]."""
    return x.b10.commutator(x.b21) + x.b11.commutator(x.b20)


def isotropy_matrix(y1: Scalar, y2: Scalar, t1: Scalar, t2: Scalar) -> Matrix:
    """The two-parameter isotropy family at shared-parameter points."""
    lower = Matrix(2, 2, ((ONE, ZERO), (y1, ONE)))
    lower_inv = Matrix(2, 2, ((ONE, ZERO), (-y1, ONE)))
    core = Matrix(2, 2, ((t1, y2 * (t1 - t2)), (ZERO, t2)))
    return lower @ core @ lower_inv


def intersection_relation_value(params: Sequence[Scalar]) -> Scalar:
    """(y31-y41)(y52-y62) - (y51-y61)(y32-y42) on twelve parameters
    ordered (slot-1 six, slot-2 six)."""
    y31, y41, y51, y61 = params[2], params[3], params[4], params[5]
    y32, y42, y52, y62 = params[8], params[9], params[10], params[11]
    return (y31 - y41) * (y52 - y62) - (y51 - y61) * (y32 - y42)


def _random_scalar(rng) -> Scalar:
    return Scalar(Fraction(rng.randint(-9, 9), rng.randint(1, 4)))


def sample_component_point(ideal: str, rng) -> list[Scalar]:
    """A random twelve-parameter point on one of the three components
    of the pulled-back charge-2 variety (named I1, I2, I3)."""
    rs = lambda: _random_scalar(rng)
    if ideal == "I2":
        y11, y21 = rs(), rs()
        return [y11, y21, rs(), rs(), rs(), rs(),
                y11, y21, rs(), rs(), rs(), rs()]
    if ideal == "I3":
        y21 = rs()
        while y21.is_zero():
            y21 = rs()
        y11 = rs()
        y12 = y11 - y21.inverse()
        return [y11, y21, rs(), rs(), rs(), rs(),
                y12, -y21, rs(), rs(), rs(), rs()]
    if ideal == "I1":
        y31, y41 = rs(), rs()
        y51, y61 = rs(), rs()
        while (y51 - y61).is_zero():
            y51, y61 = rs(), rs()
        y52, y62, y42 = rs(), rs(), rs()
        y32 = y42 + (y31 - y41) * (y52 - y62) / (y51 - y61)
        return [rs(), rs(), y31, y41, y51, y61,
                rs(), rs(), y32, y42, y52, y62]
    if ideal == "I1&I2":
        y11, y21 = rs(), rs()
        y31, y41 = rs(), rs()
        y51, y61 = rs(), rs()
        while (y51 - y61).is_zero():
            y51, y61 = rs(), rs()
        y52, y62, y42 = rs(), rs(), rs()
        y32 = y42 + (y31 - y41) * (y52 - y62) / (y51 - y61)
        return [y11, y21, y31, y41, y51, y61,
                y11, y21, y32, y42, y52, y62]
    raise RModuleError(f"unknown component ideal {ideal!r}")


def c2_fixture_checks(samples_per_ideal: int = 50, intersection_samples: int = 20,
                      seed: int = 0) -> dict:
    """Certify the charge-2 component geometry at sample points.

    Checks, all exact: the parametrized pair commutes identically in
    the parameters; sample points of each component ideal satisfy the
    full ADHM equation; intersection samples satisfy the eigenvalue
    determinant relation; and the displayed two-parameter isotropy
    family fixes shared-parameter image points.
    """
    import random

    rng = random.Random(seed)
    sym_a, sym_b = commuting_pair_symbolic()
    symbolic_zero = (sym_a @ sym_b - sym_b @ sym_a).is_zero()
    ideal_pass: dict[str, int] = {}
    for ideal in ("I1", "I2", "I3"):
        good = 0
        for _ in range(samples_per_ideal):
            params = sample_component_point(ideal, rng)
            x = pair_parametrization(params)
            if mixed_equation_value(x).is_zero() and is_adhm(x):
                good += 1
        ideal_pass[ideal] = good
    intersection_good = 0
    for _ in range(intersection_samples):
        params = sample_component_point("I1&I2", rng)
        if intersection_relation_value(params).is_zero():
            x = pair_parametrization(params)
            if mixed_equation_value(x).is_zero():
                intersection_good += 1
    isotropy_good = 0
    for _ in range(intersection_samples):
        params = sample_component_point("I2", rng)
        x = pair_parametrization(params)
        t1, t2 = _random_scalar(rng), _random_scalar(rng)
        while t1.is_zero():
            t1 = _random_scalar(rng)
        while t2.is_zero():
            t2 = _random_scalar(rng)
        from .adhm import GroupElement, act

        g = GroupElement.from_matrix(isotropy_matrix(params[0], params[1], t1, t2))
        if act(g, x) == x:
            isotropy_good += 1
    return {
        "symbolic_commutator_zero": symbolic_zero,
        "samples_per_ideal": samples_per_ideal,
        "ideal_samples_passing": ideal_pass,
        "intersection_samples": intersection_samples,
        "intersection_samples_passing": intersection_good,
        "isotropy_samples": intersection_samples,
        "isotropy_samples_passing": isotropy_good,
        "seed": seed,
        "all_passed": bool(
            symbolic_zero
            and all(v == samples_per_ideal for v in ideal_pass.values())
            and intersection_good == intersection_samples
            and isotropy_good == intersection_samples
        ),
    }


def joint_eigenpairs_from_traces(tv: TraceVector) -> list[tuple[Scalar, Scalar]]:
    """Reconstruct the joint eigenvalue pairs of a commuting 2x2 pair
    from word traces up to length 2, via Newton identities.

    The pair acts through the y-generators; rational spectra only.
    """
    from .poly import Poly as _P

    s_a = tv.get("y1")
    s_b = tv.get("y2")
    s_aa = tv.get("y1", "y1")
    s_ab = tv.get("y1", "y2")

    def quadratic_roots(power_sum_1: Scalar, power_sum_2: Scalar) -> tuple[Scalar, Scalar]:
        e1 = power_sum_1
        e2 = (power_sum_1 * power_sum_1 - power_sum_2) / Scalar(Fraction(2))
        t = _P.variable("t", ("t",))
        from .poly import split_linear_factors
        roots, residual = split_linear_factors(t * t - t.scale(e1) + e2)
        if residual is not None or len(roots) != 2:
            raise RModuleError("spectrum does not split over the base field")
        return roots[0], roots[1]

    s_bb = tv.get("y2", "y2")
    lam1, lam2 = quadratic_roots(s_a, s_aa)
    mu1, mu2 = quadratic_roots(s_b, s_bb)
    for cand in ((lam1, mu1, lam2, mu2), (lam1, mu2, lam2, mu1)):
        l1, m1, l2, m2 = cand
        if l1 * m1 + l2 * m2 == s_ab:
            return sorted([(l1, m1), (l2, m2)],
                          key=lambda p: (p[0].re, p[0].im, p[1].re, p[1].im))
    raise RModuleError("no eigenvalue pairing reproduces the mixed trace")
