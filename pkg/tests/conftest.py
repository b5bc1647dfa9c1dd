"""Shared exact-data generators for the test suite.

Random ADHM data are assembled from ingredients that satisfy the moment
equation by construction: block-diagonal pencils whose blocks are
either lines (1x1) or points of the charge-2 commuting family (2x2),
and framing maps supported on disjoint column/row ranges of W so the
product i*j vanishes identically. A random unimodular conjugation then
scrambles the coordinates without leaving the ADHM variety.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from adhmkit.adhm import (
    AdhmDatum,
    GroupElement,
    act,
    du_decompose,
    moment_map,
)
from adhmkit.deform import Tangent
from adhmkit.fixtures import get_fixture_datum
from adhmkit.linalg import Matrix
from adhmkit.rank0 import pair_parametrization, sample_component_point
from adhmkit.scalars import ONE, ZERO, Scalar


def rscalar(rng: random.Random, span: int = 6, den: int = 3) -> Scalar:
    return Scalar(Fraction(rng.randint(-span, span), rng.randint(1, den)))


def rmatrix(rng: random.Random, rows: int, cols: int, span: int = 4) -> Matrix:
    return Matrix.from_rows(
        [[rng.randint(-span, span) for _ in range(cols)] for _ in range(rows)],
        cols=cols,
    )


def random_group_element(rng: random.Random, c: int) -> GroupElement:
    """A random unimodular basis change (product of elementary moves)."""
    m = [[Fraction(1 if i == j else 0) for j in range(c)] for i in range(c)]
    for _ in range(2 * c):
        kind = rng.randrange(3)
        if c < 2:
            break
        i, j = rng.sample(range(c), 2)
        if kind == 0:
            lam = rng.randint(-2, 2)
            for k in range(c):
                m[i][k] += lam * m[j][k]
        elif kind == 1:
            m[i], m[j] = m[j], m[i]
        else:
            for k in range(c):
                m[i][k] = -m[i][k]
    return GroupElement.from_matrix(
        Matrix.from_rows([[Scalar(v) for v in row] for row in m], cols=c)
    )


def random_datum(rng: random.Random, c: int | None = None,
                 r: int | None = None) -> AdhmDatum:
    """An arbitrary point of the datum space (moment map usually nonzero)."""
    if c is None:
        c = rng.randint(0, 3)
    if r is None:
        r = rng.randint(0, 3)
    return AdhmDatum(
        c, r,
        rmatrix(rng, c, c), rmatrix(rng, c, c),
        rmatrix(rng, c, c), rmatrix(rng, c, c),
        rmatrix(rng, c, r), rmatrix(rng, c, r),
        rmatrix(rng, r, c), rmatrix(rng, r, c),
    )


def random_tangent(rng: random.Random, c: int, r: int) -> Tangent:
    return Tangent(
        c, r,
        rmatrix(rng, c, c), rmatrix(rng, c, c),
        rmatrix(rng, c, c), rmatrix(rng, c, c),
        rmatrix(rng, c, r), rmatrix(rng, c, r),
        rmatrix(rng, r, c), rmatrix(rng, r, c),
    )


def _block_diag(blocks: list[Matrix], size: int) -> Matrix:
    rows = []
    offset = 0
    for block in blocks:
        for row in block.entries:
            rows.append([ZERO] * offset + list(row)
                        + [ZERO] * (size - offset - block.cols))
        offset += block.cols
    if not rows:
        return Matrix.zero(0, 0)
    return Matrix.from_rows(rows, cols=size)


def _random_commuting_pencils(rng: random.Random, c: int) -> tuple[Matrix, ...]:
    """Block-diagonal pencil coefficients satisfying the moment equation."""
    blocks: list[int] = []
    remaining = c
    while remaining > 0:
        size = 2 if (remaining >= 2 and rng.random() < 0.5) else 1
        blocks.append(size)
        remaining -= size
    parts = {name: [] for name in ("b10", "b11", "b20", "b21")}
    for size in blocks:
        if size == 1:
            for name in parts:
                parts[name].append(Matrix.from_rows([[rscalar(rng)]]))
        else:
            ideal = rng.choice(["I1", "I2", "I3"])
            point = pair_parametrization(sample_component_point(ideal, rng))
            parts["b10"].append(point.b10)
            parts["b11"].append(point.b11)
            parts["b20"].append(point.b20)
            parts["b21"].append(point.b21)
    return tuple(_block_diag(parts[name], c) for name in ("b10", "b11", "b20", "b21"))


def random_adhm_datum(rng: random.Random, c: int | None = None,
                      r: int | None = None, stable: bool = False,
                      conjugate: bool = True) -> AdhmDatum:
    """A random exact solution of the moment equation.

    With stable=True the framing-in map contains an identity block, so
    the reachable subspace is everything.
    """
    if c is None:
        c = rng.randint(0, 3)
    if r is None:
        r = rng.randint(0, 3)
    if stable and c > 0:
        r = max(r, c + 1)
    b10, b11, b20, b21 = _random_commuting_pencils(rng, c)
    in_cols = c if stable else rng.randint(0, r)
    in_cols = min(in_cols, r)

    def framing_in() -> Matrix:
        return Matrix.from_rows(
            [[rscalar(rng, 3, 2) if k < in_cols else ZERO for k in range(r)]
             for _ in range(c)],
            cols=r,
        )

    i0 = framing_in()
    i1 = framing_in()
    if stable and c > 0:
        i0 = Matrix.from_rows(
            [[ONE if k == m else ZERO for k in range(r)] for m in range(c)],
            cols=r,
        )

    live_cols = [k for k in range(c) if rng.random() < 0.6]

    def framing_out_fixed() -> Matrix:
        rows = []
        for row in range(r):
            if row >= in_cols:
                rows.append([rscalar(rng, 3, 2) if k in live_cols else ZERO
                             for k in range(c)])
            else:
                rows.append([ZERO] * c)
        return Matrix.from_rows(rows, cols=c) if rows else Matrix.zero(0, c)

    j0 = framing_out_fixed()
    j1 = framing_out_fixed()
    x = AdhmDatum(c, r, b10, b11, b20, b21, i0, i1, j0, j1)
    assert moment_map(x).is_zero()
    if conjugate and c > 1:
        x = act(random_group_element(rng, c), x)
    return x


def du_reconstructs_exactly(x: AdhmDatum) -> bool:
    """Rebuild a block-triangular datum from a decomposition's parts plus
    the connecting blocks read off in the adapted basis, conjugate back
    and compare with the input exactly."""
    decomposition = du_decompose(x, require_stable=False)
    g = decomposition.basis_change
    adapted = act(g, x)
    c1 = decomposition.c_prime
    c2 = decomposition.v2.dim
    top, bottom = range(c1), range(c1, x.c)
    reg, nil = decomposition.regular_part, decomposition.rank0_part
    rebuilt_blocks = {}
    for name in ("b10", "b11", "b20", "b21"):
        block = getattr(adapted, name)
        if not block.submatrix(top, bottom).is_zero():
            return False
        if block.submatrix(top, top) != getattr(reg, name):
            return False
        if block.submatrix(bottom, bottom) != getattr(nil, name):
            return False
        connecting = block.submatrix(bottom, top)
        upper = getattr(reg, name).hstack(Matrix.zero(c1, c2))
        lower = connecting.hstack(getattr(nil, name))
        rebuilt_blocks[name] = upper.vstack(lower)
    for name in ("i0", "i1"):
        block = getattr(adapted, name)
        if block.submatrix(top, range(x.r)) != getattr(reg, name):
            return False
        rebuilt_blocks[name] = getattr(reg, name).vstack(
            block.submatrix(bottom, range(x.r))
        )
    for name in ("j0", "j1"):
        block = getattr(adapted, name)
        if not block.submatrix(range(x.r), bottom).is_zero():
            return False
        if block.submatrix(range(x.r), top) != getattr(reg, name):
            return False
        rebuilt_blocks[name] = getattr(reg, name).hstack(Matrix.zero(x.r, c2))
    rebuilt = AdhmDatum(x.c, x.r, **rebuilt_blocks)
    return act(g.inverse(), rebuilt) == x


@pytest.fixture
def gitvsfj() -> AdhmDatum:
    return get_fixture_datum("gitvsfj")


@pytest.fixture
def counterexample() -> AdhmDatum:
    return get_fixture_datum("fj-counterexample")


def word_products(operators: list[Matrix], c: int, max_len: int):
    """All products of operator words up to max_len, length-then-lex."""
    eye = Matrix.identity(c)
    level = [((), eye)]
    yield (), eye
    for _ in range(max_len):
        next_level = []
        for word, product in level:
            for k, op in enumerate(operators):
                grown = ((*word, k), op @ product)
                next_level.append(grown)
                yield grown
        level = next_level


def framed_invariants(x: AdhmDatum, max_len: int = 3) -> dict:
    """Conjugation invariants of a framed datum: traces of pencil words
    and the framed blocks j_a * w(B) * i_b (exact matrices)."""
    ops = list(x.b_operators())
    traces = {}
    framed = {}
    for word, product in word_products(ops, x.c, max_len):
        traces[word] = product.trace()
        for a, j in enumerate((x.j0, x.j1)):
            for b, i in enumerate((x.i0, x.i1)):
                framed[(a, word, b)] = j @ product @ i
    return {"traces": traces, "framed": framed}
