import dataclasses
import random

import pytest

from adhmkit.adhm import (
    AdhmDatum,
    GroupElement,
    LocusKind,
    MomentNonzeroError,
    NotSplit,
    NotStableError,
    P1Point,
    PolystableSplit,
    SizeLimitError,
    act,
    chern,
    direct_sum_with_rank0,
    du_decompose,
    evaluate,
    is_adhm,
    is_costable,
    is_fj_semistable,
    is_fj_stable,
    is_regular,
    is_stable,
    moment_map,
    reachable_subspace,
    try_polystable_split,
    uncostable_locus,
    unobservable_subspace,
    unstable_locus,
)
from adhmkit.fixtures import get_fixture_datum, staircase_datum
from adhmkit.linalg import Matrix, Subspace
from adhmkit.rank0 import LineConfig, lines_to_datum
from adhmkit.scalars import rat

from conftest import (
    framed_invariants,
    random_adhm_datum,
    random_datum,
    random_group_element,
    rmatrix,
)


# -- moment map -------------------------------------------------------------


def test_moment_zero_datum():
    assert moment_map(AdhmDatum.zero(2, 1)).is_zero()
    assert moment_map(AdhmDatum.zero(0, 3)).is_zero()


def test_moment_gitvsfj_is_zero(gitvsfj):
    value = moment_map(gitvsfj)
    assert value.is_zero()
    assert value.quadratic.is_zero()
    assert is_adhm(gitvsfj)


def test_moment_counterexample_is_zero(counterexample):
    assert moment_map(counterexample).is_zero()


def test_perturbation_breaks_moment(gitvsfj):
    # adding x0 to any single entry of the first pencil breaks the equation
    for row in range(2):
        for col in range(2):
            bump = Matrix.from_rows(
                [[1 if (i, j) == (row, col) else 0 for j in range(2)]
                 for i in range(2)]
            )
            perturbed = dataclasses.replace(gitvsfj, b10=gitvsfj.b10 + bump)
            assert not is_adhm(perturbed)


def test_moment_components_match_quadratic(gitvsfj):
    rng = random.Random(21)
    for _ in range(25):
        x = random_datum(rng)
        value = moment_map(x)
        from adhmkit.scalars import ONE, ZERO

        for (a, b), component in (
            ((rat(1), rat(0)), value.mu1),
            ((rat(0), rat(1)), value.mu3),
        ):
            point = value.quadratic.evaluate({"x0": a, "x1": b})
            assert point == component


# -- group action -----------------------------------------------------------


def test_act_identity(gitvsfj):
    assert act(GroupElement.identity(2), gitvsfj) == gitvsfj


def test_act_group_law_and_equivariance():
    rng = random.Random(22)
    for _ in range(100):
        x = random_datum(rng)
        if x.c == 0:
            continue
        g = random_group_element(rng, x.c)
        h = random_group_element(rng, x.c)
        assert act(g, act(h, x)) == act(g.compose(h), x)
        left = moment_map(act(g, x)).components()
        right = tuple(
            g.matrix @ mu @ g.inverse_matrix for mu in moment_map(x).components()
        )
        assert left == right


def test_evaluate_commutes_with_act():
    rng = random.Random(23)
    for _ in range(60):
        x = random_datum(rng)
        if x.c == 0:
            continue
        g = random_group_element(rng, x.c)
        p = P1Point.of(rat(rng.randint(-3, 3)), rat(rng.randint(-3, 3) or 1))
        direct = evaluate(act(g, x), p)
        moved = evaluate(x, p)
        assert direct.b1 == g.matrix @ moved.b1 @ g.inverse_matrix
        assert direct.i == g.matrix @ moved.i
        assert direct.j == moved.j @ g.inverse_matrix


# -- evaluation -------------------------------------------------------------


def test_evaluate_pencil_parts(gitvsfj):
    at_zero = evaluate(gitvsfj, P1Point.of(1, 0))
    assert at_zero.b1 == gitvsfj.b10
    assert at_zero.b2 == gitvsfj.b20
    assert at_zero.i == gitvsfj.i0
    assert at_zero.j == gitvsfj.j0


def test_evaluate_eigenvector_relation(gitvsfj):
    # at [a:b] the vector (a, b) is fixed up to the factors a+b and a-b
    for a, b in ((1, 0), (0, 1), (1, 1), (2, -3), (5, 7)):
        p = P1Point.of(rat(a), rat(b))
        const = evaluate(gitvsfj, p)
        s = (p.a, p.b)
        assert const.b1.apply(s) == tuple((p.a + p.b) * v for v in s)
        assert const.b2.apply(s) == tuple((p.a - p.b) * v for v in s)
        assert const.j.apply(s) == (rat(0),)


def test_counterexample_framing_in_surjective_everywhere(counterexample):
    for a, b in ((1, 0), (0, 1), (1, 1), (3, -2)):
        const = evaluate(counterexample, P1Point.of(rat(a), rat(b)))
        assert const.i.rank() == 3


# -- stability --------------------------------------------------------------


def test_reachable_subspace_examples(gitvsfj, counterexample):
    assert reachable_subspace(gitvsfj).is_full()
    assert reachable_subspace(counterexample).is_full()
    no_framing = dataclasses.replace(
        gitvsfj, i0=Matrix.zero(2, 1), i1=Matrix.zero(2, 1)
    )
    assert reachable_subspace(no_framing).is_zero()


def test_unobservable_subspace_examples(gitvsfj, counterexample):
    assert unobservable_subspace(gitvsfj).is_zero()
    assert unobservable_subspace(counterexample).is_full()
    no_j = dataclasses.replace(gitvsfj, j0=Matrix.zero(1, 2), j1=Matrix.zero(1, 2))
    assert unobservable_subspace(no_j).is_full()


def test_stability_flags(gitvsfj, counterexample):
    assert is_stable(gitvsfj) and is_costable(gitvsfj) and is_regular(gitvsfj)
    assert is_stable(counterexample) and not is_costable(counterexample)
    empty = AdhmDatum.zero(0, 2)
    assert is_stable(empty) and is_costable(empty) and is_regular(empty)


def test_rank0_is_never_stable():
    rng = random.Random(24)
    for _ in range(20):
        c = rng.randint(1, 3)
        x = random_adhm_datum(rng, c=c, r=0)
        assert not is_stable(x)


def test_subspace_equivariance():
    rng = random.Random(25)
    for _ in range(60):
        x = random_datum(rng)
        if x.c == 0:
            continue
        g = random_group_element(rng, x.c)
        assert reachable_subspace(act(g, x)) == reachable_subspace(x).apply(g.matrix)
        assert unobservable_subspace(act(g, x)) == unobservable_subspace(x).apply(g.matrix)


# -- pointwise stability loci -------------------------------------------------


def test_unstable_locus_whole_line(gitvsfj):
    locus = unstable_locus(gitvsfj)
    assert locus.kind is LocusKind.WHOLE_LINE
    assert not is_fj_semistable(gitvsfj)
    assert not is_fj_stable(gitvsfj)
    assert uncostable_locus(gitvsfj).kind is LocusKind.WHOLE_LINE


def test_unstable_locus_empty(counterexample):
    locus = unstable_locus(counterexample)
    assert locus.kind is LocusKind.FINITE_SET and locus.is_empty()
    assert is_fj_stable(counterexample)


def test_unstable_locus_single_point():
    x = AdhmDatum(
        1, 1,
        Matrix.zero(1, 1), Matrix.zero(1, 1), Matrix.zero(1, 1), Matrix.zero(1, 1),
        Matrix.from_rows([[1]]), Matrix.zero(1, 1),
        Matrix.zero(1, 1), Matrix.zero(1, 1),
    )
    locus = unstable_locus(x)
    assert locus.kind is LocusKind.FINITE_SET
    assert [str(p) for p in locus.points] == ["[0:1]"]
    assert locus.residual is None


def test_unstable_locus_rational_chart_point():
    # framing-in x1 only: the chart Krylov matrix is (t), degenerate at t = 0
    x = AdhmDatum(
        1, 1,
        Matrix.zero(1, 1), Matrix.zero(1, 1), Matrix.zero(1, 1), Matrix.zero(1, 1),
        Matrix.zero(1, 1), Matrix.from_rows([[1]]),
        Matrix.zero(1, 1), Matrix.zero(1, 1),
    )
    locus = unstable_locus(x)
    assert [str(p) for p in locus.points] == ["[1:0]"]
    assert locus.residual is None


def test_unstable_locus_irrational_points():
    # framing-in (x0^2 - 2 x1^2)-style kernel: i = [x0, 2*x1; x1, x0]
    # pointwise rank drop where det i(p) = a^2 - 2 b^2 = 0, never over Q
    x = AdhmDatum(
        2, 2,
        Matrix.zero(2, 2), Matrix.zero(2, 2), Matrix.zero(2, 2), Matrix.zero(2, 2),
        Matrix.from_rows([[1, 0], [0, 1]]), Matrix.from_rows([[0, 2], [1, 0]]),
        Matrix.zero(2, 2), Matrix.zero(2, 2),
    )
    locus = unstable_locus(x)
    assert locus.kind is LocusKind.FINITE_SET
    assert locus.points == ()
    assert locus.residual is not None
    assert str(locus.residual) == "t^2 - 1/2"


def test_unstable_locus_gaussian_points():
    # det(i0 + t*i1) = 1 + t^2: rank drop exactly at t = +-i
    x = AdhmDatum(
        2, 2,
        Matrix.zero(2, 2), Matrix.zero(2, 2), Matrix.zero(2, 2), Matrix.zero(2, 2),
        Matrix.identity(2), Matrix.from_rows([[0, -1], [1, 0]]),
        Matrix.zero(2, 2), Matrix.zero(2, 2),
    )
    locus = unstable_locus(x)
    assert locus.kind is LocusKind.FINITE_SET
    assert locus.residual is None
    assert {str(p) for p in locus.points} == {"[1:1i]", "[1:-1i]"}


def test_unstable_locus_two_rational_points():
    # i(t) = diag(t, t - 2): rank drop exactly at the chart points 0 and 2
    x = AdhmDatum(
        2, 2,
        Matrix.zero(2, 2), Matrix.zero(2, 2), Matrix.zero(2, 2), Matrix.zero(2, 2),
        Matrix.from_rows([[0, 0], [0, -2]]), Matrix.identity(2),
        Matrix.zero(2, 2), Matrix.zero(2, 2),
    )
    locus = unstable_locus(x)
    assert locus.kind is LocusKind.FINITE_SET
    assert [str(p) for p in locus.points] == ["[1:0]", "[1:2]"]
    assert locus.residual is None


def test_unstable_locus_mixed_split():
    # i(t) = [[t,0,0],[0,t,2],[0,1,t]]: det = t*(t^2 - 2), so one exact
    # point plus an irrational residual factor
    x = AdhmDatum(
        3, 3,
        Matrix.zero(3, 3), Matrix.zero(3, 3), Matrix.zero(3, 3), Matrix.zero(3, 3),
        Matrix.from_rows([[0, 0, 0], [0, 0, 2], [0, 1, 0]]), Matrix.identity(3),
        Matrix.zero(3, 3), Matrix.zero(3, 3),
    )
    locus = unstable_locus(x)
    assert locus.kind is LocusKind.FINITE_SET
    assert [str(p) for p in locus.points] == ["[1:0]"]
    assert locus.residual is not None and str(locus.residual) == "t^2 - 2"
    assert not is_fj_stable(x)
    assert is_fj_semistable(x)


def test_uncostable_locus_finite_point():
    # j = x0 only: the framing-out kernel is nonzero exactly at [0:1]
    x = AdhmDatum(
        1, 1,
        Matrix.zero(1, 1), Matrix.zero(1, 1), Matrix.zero(1, 1), Matrix.zero(1, 1),
        Matrix.zero(1, 1), Matrix.zero(1, 1),
        Matrix.from_rows([[1]]), Matrix.zero(1, 1),
    )
    locus = uncostable_locus(x)
    assert locus.kind is LocusKind.FINITE_SET
    assert [str(p) for p in locus.points] == ["[0:1]"]
    from adhmkit.adhm import is_fj_costable

    assert not is_fj_costable(x)


def test_locus_is_act_invariant():
    rng = random.Random(26)
    for _ in range(40):
        x = random_adhm_datum(rng, c=rng.randint(1, 2), r=rng.randint(1, 2))
        g = random_group_element(rng, x.c)
        assert unstable_locus(x) == unstable_locus(act(g, x))
        assert uncostable_locus(x) == uncostable_locus(act(g, x))


def test_pointwise_vs_locus_consistency():
    rng = random.Random(27)
    for _ in range(60):
        x = random_datum(rng, c=rng.randint(1, 2), r=rng.randint(0, 2))
        locus = unstable_locus(x)
        for a, b in ((1, 0), (0, 1), (1, 1), (2, 1)):
            p = P1Point.of(rat(a), rat(b))
            stable_here = evaluate(x, p).is_stable()
            if stable_here:
                assert locus.kind is not LocusKind.WHOLE_LINE
            if locus.kind is LocusKind.FINITE_SET and locus.residual is None:
                assert stable_here == (p not in locus.points)


def test_pointwise_vs_locus_consistency_costable():
    rng = random.Random(33)
    for _ in range(60):
        x = random_datum(rng, c=rng.randint(1, 2), r=rng.randint(0, 2))
        locus = uncostable_locus(x)
        for a, b in ((1, 0), (0, 1), (1, 1), (2, 1)):
            p = P1Point.of(rat(a), rat(b))
            costable_here = evaluate(x, p).is_costable()
            if costable_here:
                assert locus.kind is not LocusKind.WHOLE_LINE
            if locus.kind is LocusKind.FINITE_SET and locus.residual is None:
                assert costable_here == (p not in locus.points)


def test_fj_semistable_implies_stable():
    rng = random.Random(28)
    seen_semistable = 0
    for _ in range(100):
        x = random_adhm_datum(rng, c=rng.randint(0, 2))
        if is_fj_semistable(x):
            seen_semistable += 1
            assert is_stable(x)
    assert seen_semistable > 5


def test_gaussian_group_element_integration(gitvsfj):
    # a basis change with Gaussian-rational entries pushes imaginary
    # parts through every pipeline stage
    from adhmkit.scalars import I as IM
    from adhmkit.scalars import ONE, ZERO

    g = GroupElement.from_matrix(Matrix(2, 2, ((ONE, IM), (ZERO, ONE))))
    moved = act(g, gitvsfj)
    assert is_adhm(moved)
    assert is_regular(moved)
    assert unstable_locus(moved) == unstable_locus(gitvsfj)
    assert uncostable_locus(moved).kind is LocusKind.WHOLE_LINE
    from adhmkit.deform import cohomology_dims
    from adhmkit.monad import build_monad, check_framing

    report = cohomology_dims(moved)
    base = cohomology_dims(gitvsfj)
    assert (report.h0, report.h1, report.h2) == (base.h0, base.h1, base.h2)
    assert check_framing(build_monad(moved)).valid


def test_size_guard():
    x = AdhmDatum.zero(9, 1)
    with pytest.raises(SizeLimitError):
        unstable_locus(x, max_c=8)


# -- chern ---------------------------------------------------------------------


def test_chern(gitvsfj, counterexample):
    assert chern(gitvsfj) == (1, 2)
    assert chern(counterexample) == (4, 3)
    assert chern(AdhmDatum.zero(0, 5)) == (5, 0)


# -- polystable splitting -------------------------------------------------------


def test_split_regular_datum(gitvsfj):
    split = try_polystable_split(gitvsfj)
    assert isinstance(split, PolystableSplit)
    assert split.v2.is_zero() and split.x2.c == 0
    assert split.x1_regular
    assert split.rank0_closed_orbit == "undetermined"


def test_split_counterexample_is_not_split(counterexample):
    result = try_polystable_split(counterexample)
    assert isinstance(result, NotSplit)
    assert result.v1.is_full() and result.v2.is_full()


def test_split_recovers_direct_sum(gitvsfj):
    rng = random.Random(29)
    rank0 = lines_to_datum(LineConfig.of([(1, 0, 2, 0), (0, 1, 1, 1)]))
    total = direct_sum_with_rank0(gitvsfj, rank0)
    assert is_adhm(total)
    g = random_group_element(rng, total.c)
    scrambled = act(g, total)
    split = try_polystable_split(scrambled)
    assert isinstance(split, PolystableSplit)
    assert split.x1.c == gitvsfj.c and split.x2.c == rank0.c
    assert split.x1_regular
    # orbit comparison: framed invariants for the regular part,
    # trace invariants for the rank-0 part
    assert framed_invariants(split.x1) == framed_invariants(gitvsfj)
    from adhmkit.rank0 import datum_to_module, trace_invariants

    assert trace_invariants(datum_to_module(split.x2), 4) == trace_invariants(
        datum_to_module(rank0), 4
    )
    # exactness of the split in the adapted basis
    assert act(split.basis_change, scrambled) == direct_sum_with_rank0(
        split.x1, split.x2
    )


def test_split_requires_adhm():
    rng = random.Random(30)
    x = random_datum(rng, c=2, r=1)
    while is_adhm(x):
        x = random_datum(rng, c=2, r=1)
    with pytest.raises(MomentNonzeroError):
        try_polystable_split(x)


# -- the regular-quotient decomposition -----------------------------------------


def test_du_regular_datum(gitvsfj):
    du = du_decompose(gitvsfj)
    assert du.v2.is_zero()
    assert du.c_prime == 2
    assert du.regular_part == gitvsfj
    assert du.input_stable and du.regular_part_regular


def test_du_counterexample(counterexample):
    du = du_decompose(counterexample)
    assert du.v2.is_full() and du.c_prime == 0
    assert du.regular_part.c == 0 and du.regular_part.r == 4
    assert du.rank0_part.c == 3
    for name in ("b10", "b11", "b20", "b21"):
        assert getattr(du.rank0_part, name).is_zero()
    assert du.regular_part_regular


def test_du_requires_stability_by_default(gitvsfj):
    rank0 = lines_to_datum(LineConfig.of([(1, 2, 3, 4)]))
    total = direct_sum_with_rank0(gitvsfj, rank0)
    with pytest.raises(NotStableError):
        du_decompose(total)
    du = du_decompose(total, require_stable=False)
    assert not du.input_stable
    assert du.c_prime == gitvsfj.c
    assert framed_invariants(du.regular_part) == framed_invariants(gitvsfj)
    assert du.regular_part_regular
    # the summands sit in standard position, so both come back literally
    assert du.regular_part == gitvsfj
    assert du.rank0_part == rank0


def test_du_reconstruction_random():
    from conftest import du_reconstructs_exactly

    rng = random.Random(31)
    for _ in range(40):
        x = random_adhm_datum(rng, c=rng.randint(1, 3), stable=True)
        assert du_reconstructs_exactly(x)


def test_du_charge_bookkeeping():
    rng = random.Random(32)
    for _ in range(30):
        x = random_adhm_datum(rng, c=rng.randint(1, 3), stable=True)
        du = du_decompose(x)
        assert du.c_prime + du.v2.dim == x.c
        assert du.regular_part_regular
