"""Deformation complex and hypersymplectic structure for ADHM data.

Tangent vectors to the space of data are tuples with the same eight
constant blocks as a datum. The fixed flattening order is

    (b10, b11, b20, b21, i0, i1, j0, j1),  each block row-major,

giving dim T = 4c^2 + 4cr. The two differentials of the complex

    0 -> End(V) --d0--> T --d1--> End(V) (x) <x0^2, x0*x1, x1^2> -> 0

are d0(xi) = ([xi,B1], [xi,B2], xi*i, -j*xi) written pencil-wise and
d1 = the derivative of the moment map, flattened over the target basis
(x0^2, x0*x1, x1^2). Cohomology: h0 = dim ker d0, h1 = dim ker d1 -
rank d0, h2 = 3c^2 - rank d1, with Euler characteristic always -4cr.

The hypersymplectic structure lives on the two pencil slots: the
symmetric form g couples slot 0 against slot 1, and the quaternionic
operators act on each pencil pair (a0, a1) as

    I: (i*a0, -i*a1),   J: (a1, -a0),   K: (i*a1, i*a0),

where i is the exact square root of -1 in the Gaussian rationals. The
recombined moment components are m1 = i*mu2, m2 = mu1 + mu3 and
m3 = i*(-mu1 + mu3); the pairing with End(V) is the trace form.
"""

from __future__ import annotations

from dataclasses import dataclass

from .adhm import AdhmDatum, InvariantViolation, NotStableError, ensure_adhm, is_stable
from .linalg import Matrix
from .scalars import I as SQRT_M1
from .scalars import ONE, ZERO, Scalar


@dataclass(frozen=True)
class Tangent:
    """A tangent vector to the affine space of data at charge c, rank r."""

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

    @classmethod
    def zero(cls, c: int, r: int) -> "Tangent":
        return cls(c, r,
                   Matrix.zero(c, c), Matrix.zero(c, c),
                   Matrix.zero(c, c), Matrix.zero(c, c),
                   Matrix.zero(c, r), Matrix.zero(c, r),
                   Matrix.zero(r, c), Matrix.zero(r, c))

    def blocks(self) -> tuple[Matrix, ...]:
        return (self.b10, self.b11, self.b20, self.b21,
                self.i0, self.i1, self.j0, self.j1)

    def flatten(self) -> tuple[Scalar, ...]:
        out: list[Scalar] = []
        for block in self.blocks():
            for row in block.entries:
                out.extend(row)
        return tuple(out)

    @classmethod
    def from_flat(cls, c: int, r: int, values) -> "Tangent":
        values = list(values)
        if len(values) != tangent_dim(c, r):
            raise ValueError("flat vector length mismatch")
        shapes = [(c, c)] * 4 + [(c, r)] * 2 + [(r, c)] * 2
        blocks = []
        pos = 0
        for rows, cols in shapes:
            data = tuple(
                tuple(values[pos + i * cols + j] for j in range(cols))
                for i in range(rows)
            )
            pos += rows * cols
            blocks.append(Matrix(rows, cols, data))
        return cls(c, r, *blocks)

    def scale(self, value) -> "Tangent":
        return Tangent(self.c, self.r, *(b.scale(value) for b in self.blocks()))

    def __add__(self, other: "Tangent") -> "Tangent":
        return Tangent(self.c, self.r,
                       *(a + b for a, b in zip(self.blocks(), other.blocks())))

    def __neg__(self) -> "Tangent":
        return Tangent(self.c, self.r, *(-b for b in self.blocks()))

    def __sub__(self, other: "Tangent") -> "Tangent":
        return self + (-other)


def tangent_dim(c: int, r: int) -> int:
    return 4 * c * c + 4 * c * r


def tangent_of_datum(x: AdhmDatum) -> Tangent:
    return Tangent(x.c, x.r, x.b10, x.b11, x.b20, x.b21,
                   x.i0, x.i1, x.j0, x.j1)


# ---------------------------------------------------------------------------
# the complex
# ---------------------------------------------------------------------------


def group_tangent(x: AdhmDatum, xi: Matrix) -> Tangent:
    """The orbit-map derivative xi_x = ([xi,B1], [xi,B2], xi*i, -j*xi)."""
    return Tangent(
        x.c, x.r,
        xi.commutator(x.b10), xi.commutator(x.b11),
        xi.commutator(x.b20), xi.commutator(x.b21),
        xi @ x.i0, xi @ x.i1,
        -(x.j0 @ xi), -(x.j1 @ xi),
    )


def moment_derivative(x: AdhmDatum, v: Tangent) -> tuple[Matrix, Matrix, Matrix]:
    """Derivative of the moment components (mu1, mu2, mu3) at x along v."""
    d1 = (v.b10.commutator(x.b20) + x.b10.commutator(v.b20)
          + v.i0 @ x.j0 + x.i0 @ v.j0)
    d2 = (v.b10.commutator(x.b21) + x.b10.commutator(v.b21)
          + v.b11.commutator(x.b20) + x.b11.commutator(v.b20)
          + v.i0 @ x.j1 + x.i0 @ v.j1 + v.i1 @ x.j0 + x.i1 @ v.j0)
    d3 = (v.b11.commutator(x.b21) + x.b11.commutator(v.b21)
          + v.i1 @ x.j1 + x.i1 @ v.j1)
    return d1, d2, d3


def _basis_matrices(rows: int, cols: int):
    for a in range(rows):
        for b in range(cols):
            data = tuple(
                tuple(ONE if (i, j) == (a, b) else ZERO for j in range(cols))
                for i in range(rows)
            )
            yield Matrix(rows, cols, data)


def _basis_tangents(c: int, r: int):
    shapes = [(c, c)] * 4 + [(c, r)] * 2 + [(r, c)] * 2
    for slot, (rows, cols) in enumerate(shapes):
        for unit in _basis_matrices(rows, cols):
            blocks = [Matrix.zero(rs, cs) for rs, cs in shapes]
            blocks[slot] = unit
            yield Tangent(c, r, *blocks)


def _columns_to_matrix(columns: list[tuple[Scalar, ...]], height: int) -> Matrix:
    data = tuple(
        tuple(col[i] for col in columns) for i in range(height)
    )
    return Matrix(height, len(columns), data)


def d0_matrix(x: AdhmDatum) -> Matrix:
    """Matrix of xi -> xi_x from End(V) (row-major basis) into T."""
    columns = [group_tangent(x, xi).flatten() for xi in _basis_matrices(x.c, x.c)]
    return _columns_to_matrix(columns, tangent_dim(x.c, x.r))


def _flatten_triple(ms: tuple[Matrix, Matrix, Matrix]) -> tuple[Scalar, ...]:
    out: list[Scalar] = []
    for m in ms:
        for row in m.entries:
            out.extend(row)
    return tuple(out)


def d1_matrix(x: AdhmDatum) -> Matrix:
    """Matrix of the moment-map derivative from T into 3c^2."""
    columns = [
        _flatten_triple(moment_derivative(x, v)) for v in _basis_tangents(x.c, x.r)
    ]
    return _columns_to_matrix(columns, 3 * x.c * x.c)


@dataclass(frozen=True)
class DeformationComplex:
    c: int
    r: int
    d0: Matrix
    d1: Matrix


@dataclass(frozen=True)
class DeformationReport:
    h0: int
    h1: int
    h2: int
    rank_d0: int
    rank_dmu: int
    expected_dim: int
    stable: bool
    smooth_point: bool

    def euler_characteristic(self) -> int:
        return self.h0 - self.h1 + self.h2


def deformation_complex(x: AdhmDatum) -> DeformationComplex:
    ensure_adhm(x)
    d0 = d0_matrix(x)
    d1 = d1_matrix(x)
    if not (d1 @ d0).is_zero():
        raise InvariantViolation("d1*d0 nonzero at a moment-map zero")
    return DeformationComplex(x.c, x.r, d0, d1)


def cohomology_dims(x: AdhmDatum) -> DeformationReport:
    complex_ = deformation_complex(x)
    c, r = x.c, x.r
    rank_d0 = complex_.d0.rank()
    rank_d1 = complex_.d1.rank()
    h0 = c * c - rank_d0
    h1 = tangent_dim(c, r) - rank_d1 - rank_d0
    h2 = 3 * c * c - rank_d1
    stable = is_stable(x)
    return DeformationReport(
        h0=h0,
        h1=h1,
        h2=h2,
        rank_d0=rank_d0,
        rank_dmu=rank_d1,
        expected_dim=4 * c * r,
        stable=stable,
        smooth_point=stable and h2 == 0,
    )


# ---------------------------------------------------------------------------
# hypersymplectic structure
# ---------------------------------------------------------------------------


def apply_i(v: Tangent) -> Tangent:
    s = SQRT_M1
    return Tangent(v.c, v.r,
                   v.b10.scale(s), v.b11.scale(-s),
                   v.b20.scale(s), v.b21.scale(-s),
                   v.i0.scale(s), v.i1.scale(-s),
                   v.j0.scale(s), v.j1.scale(-s))


def apply_j(v: Tangent) -> Tangent:
    return Tangent(v.c, v.r,
                   v.b11, -v.b10,
                   v.b21, -v.b20,
                   v.i1, -v.i0,
                   v.j1, -v.j0)


def apply_k(v: Tangent) -> Tangent:
    s = SQRT_M1
    return Tangent(v.c, v.r,
                   v.b11.scale(s), v.b10.scale(s),
                   v.b21.scale(s), v.b20.scale(s),
                   v.i1.scale(s), v.i0.scale(s),
                   v.j1.scale(s), v.j0.scale(s))


QUATERNION_OPS = {1: apply_i, 2: apply_j, 3: apply_k}


def gform(v: Tangent, w: Tangent) -> Scalar:
    """The nondegenerate symmetric form coupling the two pencil slots."""
    total = (v.b10 @ w.b21).trace() + (v.b21 @ w.b10).trace()
    total = total - (v.b11 @ w.b20).trace() - (v.b20 @ w.b11).trace()
    total = total + (v.i0 @ w.j1).trace() + (w.i0 @ v.j1).trace()
    total = total - (v.i1 @ w.j0).trace() - (w.i1 @ v.j0).trace()
    return total


def omega(index: int, v: Tangent, w: Tangent) -> Scalar:
    """omega_l(v, w) = g(I_l v, w) for I_1, I_2, I_3 = I, J, K."""
    return gform(QUATERNION_OPS[index](v), w)


def moment_tilde_derivative(x: AdhmDatum, v: Tangent) -> tuple[Matrix, Matrix, Matrix]:
    """Derivative of the recombined components (i*mu2, mu1+mu3, i*(mu3-mu1))."""
    d1, d2, d3 = moment_derivative(x, v)
    return (
        d2.scale(SQRT_M1),
        d1 + d3,
        (d3 - d1).scale(SQRT_M1),
    )


@dataclass(frozen=True)
class HypersymplecticCheck:
    g_vw: Scalar
    g_invariance: tuple[bool, bool, bool]
    quaternion_squares: tuple[bool, bool, bool]
    quaternion_product: bool
    moment_identity: tuple[bool, bool, bool]

    def all_hold(self) -> bool:
        return (all(self.g_invariance) and all(self.quaternion_squares)
                and self.quaternion_product and all(self.moment_identity))


def hypersymplectic_check(x: AdhmDatum, v: Tangent, w: Tangent,
                          xi: Matrix) -> HypersymplecticCheck:
    """Verify the defining identities exactly on the supplied vectors:
    g-invariance under I, J, K; the quaternion relations; and the moment
    identity <d m_l(v), xi> = omega_l(xi_x, v) with the trace pairing."""
    if (v.c, v.r) != (x.c, x.r) or (w.c, w.r) != (x.c, x.r):
        raise ValueError("tangent vectors do not match the datum dimensions")
    if (xi.rows, xi.cols) != (x.c, x.c):
        raise ValueError("xi must be an endomorphism of V")
    base = gform(v, w)
    invariance = tuple(
        gform(op(v), op(w)) == base for op in (apply_i, apply_j, apply_k)
    )
    squares = tuple(
        op(op(v)) == -v and op(op(w)) == -w for op in (apply_i, apply_j, apply_k)
    )
    product = apply_i(apply_j(apply_k(v))) == -v and apply_i(apply_j(apply_k(w))) == -w
    xi_x = group_tangent(x, xi)
    tilde = moment_tilde_derivative(x, v)
    moment = tuple(
        (tilde[l - 1] @ xi).trace() == omega(l, xi_x, v) for l in (1, 2, 3)
    )
    return HypersymplecticCheck(
        g_vw=base,
        g_invariance=invariance,  # type: ignore[arg-type]
        quaternion_squares=squares,  # type: ignore[arg-type]
        quaternion_product=product,
        moment_identity=moment,  # type: ignore[arg-type]
    )


def quaternion_operator_identities(c: int, r: int) -> bool:
    """I^2 = J^2 = K^2 = IJK = -1 as exact operator identities, checked
    on the full flattening basis of T."""
    for e in _basis_tangents(c, r):
        if apply_i(apply_i(e)) != -e:
            return False
        if apply_j(apply_j(e)) != -e:
            return False
        if apply_k(apply_k(e)) != -e:
            return False
        if apply_i(apply_j(apply_k(e))) != -e:
            return False
    return True


def surjectivity_criterion(x: AdhmDatum) -> bool:
    """True iff (xi1, xi2, xi3) -> xi1_x + I xi2_x + J xi3_x is injective
    on three copies of End(V); for stable data this holds exactly when
    the moment map is a submersion at x (h2 = 0)."""
    ensure_adhm(x)
    if not is_stable(x):
        raise NotStableError("criterion applies to stable data")
    columns: list[tuple[Scalar, ...]] = []
    basis = list(_basis_matrices(x.c, x.c))
    for xi in basis:
        columns.append(group_tangent(x, xi).flatten())
    for xi in basis:
        columns.append(apply_i(group_tangent(x, xi)).flatten())
    for xi in basis:
        columns.append(apply_j(group_tangent(x, xi)).flatten())
    matrix = _columns_to_matrix(columns, tangent_dim(x.c, x.r))
    return matrix.rank() == 3 * x.c * x.c
