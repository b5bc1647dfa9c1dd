import random
from fractions import Fraction

import pytest

from adhmkit.adhm import act, evaluate, is_adhm, is_costable, is_stable, P1Point
from adhmkit.linalg import Matrix
from adhmkit.rank0 import (
    Charge1Datum,
    LineConfig,
    OrbitVerdict,
    RModule,
    RModuleError,
    c2_fixture_checks,
    charge1_classify,
    charge1_dmu,
    charge1_dmu_rank,
    charge1_residuals,
    charge1_to_datum,
    commuting_pair,
    commuting_pair_symbolic,
    datum_to_module,
    intersection_relation_value,
    isotropy_matrix,
    joint_eigenpairs_from_traces,
    lines_to_datum,
    mixed_equation_value,
    module_to_datum,
    pair_parametrization,
    sample_component_point,
    separate_by_traces,
    trace_invariants,
)
from adhmkit.scalars import Scalar, ZERO, rat

from conftest import random_adhm_datum, random_datum, random_group_element, rscalar


# -- datum <-> module ---------------------------------------------------------


def test_zero_module():
    x = lines_to_datum(LineConfig.of([(0, 0, 0, 0)]))
    m = datum_to_module(x)
    assert all(a.is_zero() for a in (m.a_y1, m.a_y2, m.a_z1, m.a_z2))


def test_relations_iff_adhm_both_ways():
    rng = random.Random(60)
    adhm_count = broken_count = 0
    for _ in range(100):
        if rng.random() < 0.5:
            x = random_adhm_datum(rng, c=rng.randint(1, 3), r=0)
            assert is_adhm(x)
            module = datum_to_module(x)  # must not raise
            assert module_to_datum(module) == x
            adhm_count += 1
        else:
            x = random_datum(rng, c=rng.randint(1, 3), r=0)
            if is_adhm(x):
                datum_to_module(x)
                adhm_count += 1
            else:
                with pytest.raises(RModuleError):
                    datum_to_module(x)
                broken_count += 1
    assert adhm_count > 10 and broken_count > 10


def test_module_requires_rank0(gitvsfj):
    with pytest.raises(RModuleError):
        datum_to_module(gitvsfj)


def test_round_trip_module_datum():
    rng = random.Random(61)
    for _ in range(30):
        x = random_adhm_datum(rng, c=rng.randint(0, 3), r=0)
        assert module_to_datum(datum_to_module(x)) == x


# -- traces -------------------------------------------------------------------


def test_line_module_traces():
    module = datum_to_module(lines_to_datum(LineConfig.of([(5, 6, 7, 8)])))
    tv = trace_invariants(module, 1)
    assert tv.get() == rat(1)
    assert tv.get("y1") == rat(-5)
    assert tv.get("z2") == rat(-8)
    # the other two generators: y2 reads the first pencil value of B2,
    # z1 the negated second pencil value of B1
    assert tv.get("y2") == rat(-7)
    assert tv.get("z1") == rat(6)


def test_trace_conjugation_invariance():
    rng = random.Random(62)
    for _ in range(40):
        x = random_adhm_datum(rng, c=rng.randint(1, 3), r=0)
        g = random_group_element(rng, x.c)
        a = trace_invariants(datum_to_module(x), 3)
        b = trace_invariants(datum_to_module(act(g, x)), 3)
        assert a == b


def test_trace_multiset_invariance():
    rng = random.Random(63)
    for _ in range(20):
        quads = [tuple(rscalar(rng) for _ in range(4)) for _ in range(3)]
        shuffled = list(quads)
        rng.shuffle(shuffled)
        a = trace_invariants(datum_to_module(lines_to_datum(LineConfig.of(quads))), 3)
        b = trace_invariants(datum_to_module(lines_to_datum(LineConfig.of(shuffled))), 3)
        assert a == b


def test_trace_word_order():
    module = datum_to_module(lines_to_datum(LineConfig.of([(1, 2, 3, 4)])))
    words = trace_invariants(module, 2).words()
    assert words[0] == ()
    assert words[1:5] == [("y1",), ("y2",), ("z1",), ("z2",)]
    assert len(words) == 1 + 4 + 16


def test_trace_cap_validation():
    module = datum_to_module(lines_to_datum(LineConfig.of([(1, 2, 3, 4)])))
    with pytest.raises(RModuleError):
        trace_invariants(module, 0)


# -- separation ----------------------------------------------------------------


def test_separation_conjugate_indistinguishable():
    rng = random.Random(64)
    x = random_adhm_datum(rng, c=2, r=0)
    g = random_group_element(rng, 2)
    verdict = separate_by_traces(
        datum_to_module(x), datum_to_module(act(g, x))
    )
    assert verdict is OrbitVerdict.INDISTINGUISHABLE


def test_separation_distinct_lines():
    a = datum_to_module(lines_to_datum(LineConfig.of([(0, 0, 0, 0)])))
    b = datum_to_module(lines_to_datum(LineConfig.of([(1, 0, 0, 0)])))
    assert separate_by_traces(a, b) is OrbitVerdict.DISTINCT_ORBITS_CERTIFIED


def test_separation_nilpotent_caveat():
    nilpotent = RModule(
        2,
        Matrix.from_rows([[0, 1], [0, 0]]),
        Matrix.zero(2, 2), Matrix.zero(2, 2), Matrix.zero(2, 2),
    )
    zero = RModule(2, *(Matrix.zero(2, 2) for _ in range(4)))
    # not isomorphic, but all word traces of nilpotent actions vanish
    assert separate_by_traces(nilpotent, zero) is OrbitVerdict.INDISTINGUISHABLE


# -- lines ---------------------------------------------------------------------


def test_distinct_line_multisets_are_separated():
    # the line-configuration map is injective up to conjugation: for
    # charge <= 2 traces up to length 4 generate the invariant ring, so
    # distinct multisets must produce a differing word trace
    rng = random.Random(73)
    for _ in range(25):
        c = rng.randint(1, 2)
        first = LineConfig.of([tuple(rscalar(rng, 3, 2) for _ in range(4))
                               for _ in range(c)])
        second = LineConfig.of([tuple(rscalar(rng, 3, 2) for _ in range(4))
                                for _ in range(c)])
        m1 = datum_to_module(lines_to_datum(first))
        m2 = datum_to_module(lines_to_datum(second))
        verdict = separate_by_traces(m1, m2, 4)
        if first.as_multiset() == second.as_multiset():
            assert verdict is OrbitVerdict.INDISTINGUISHABLE
        else:
            assert verdict is OrbitVerdict.DISTINCT_ORBITS_CERTIFIED


def test_lines_empty_and_stability():
    assert lines_to_datum(LineConfig.of([])).c == 0
    rng = random.Random(65)
    for _ in range(20):
        quads = [tuple(rscalar(rng) for _ in range(4))
                 for _ in range(rng.randint(1, 3))]
        x = lines_to_datum(LineConfig.of(quads))
        assert is_adhm(x)
        assert not is_stable(x)


# -- charge 1 -------------------------------------------------------------------


def test_charge1_nonsingular_datum():
    d = Charge1Datum.of([1, 0], [2, 0], [0, 1], [0, 1])
    assert charge1_residuals(d) == (ZERO, ZERO, ZERO)
    assert charge1_dmu_rank(d) == 3
    flags = charge1_classify(d)
    assert flags.stable and flags.costable and not flags.fj_stable


def test_charge1_zero_and_nonzero_residuals():
    zero = Charge1Datum.of([0, 0], [0, 0], [0, 0], [0, 0])
    assert charge1_residuals(zero) == (ZERO, ZERO, ZERO)
    bad = Charge1Datum.of([1, 1], [0, 0], [1, 1], [0, 0])
    first, second, third = charge1_residuals(bad)
    assert first == rat(2) and not first.is_zero()


def test_charge1_rank2_cases():
    dependent = Charge1Datum.of([1, 0], [2, 0], [0, 0], [0, 0])
    assert charge1_dmu_rank(dependent) == 2
    rng = random.Random(66)
    for _ in range(20):
        x1 = rscalar(rng)
        y1 = rscalar(rng)
        while x1.is_zero() and y1.is_zero():
            x1 = rscalar(rng)
        d = Charge1Datum.of([x1], [y1], [ZERO], [ZERO])
        assert charge1_classify(d).stable
        assert charge1_dmu_rank(d) == 2


def test_charge1_rank1_never_pointwise_stable():
    # a single framing column can never give two independent vectors
    rng = random.Random(72)
    for _ in range(20):
        d = Charge1Datum.of([rscalar(rng)], [rscalar(rng)], [ZERO], [ZERO])
        assert charge1_classify(d).fj_stable is False


def test_charge1_dmu_shape():
    d = Charge1Datum.of([1, 2], [3, 4], [5, 6], [7, 8])
    m = charge1_dmu(d)
    assert (m.rows, m.cols) == (3, 8)
    assert [str(v) for v in m.entries[0]] == ["5", "6", "0", "0", "1", "2", "0", "0"]
    assert [str(v) for v in m.entries[2]] == ["7", "8", "5", "6", "3", "4", "1", "2"]


def test_charge1_classification_matches_assembled_datum():
    rng = random.Random(67)
    checked_fj = 0
    for _ in range(100):
        r = rng.randint(1, 3)
        x_vec = [rscalar(rng, 2, 2) for _ in range(r)]
        y_vec = [rscalar(rng, 2, 2) for _ in range(r)]
        # solve the three bilinear equations for (z, w) exactly
        rows = []
        zero = [ZERO] * r
        rows.append(list(x_vec) + zero)
        rows.append(zero + list(y_vec))
        rows.append(list(y_vec) + list(x_vec))
        system = Matrix.from_rows(rows, cols=2 * r)
        kernel = system.right_kernel()
        if kernel.dim == 0:
            zw = [ZERO] * (2 * r)
        else:
            combo = [rscalar(rng, 2, 1) for _ in range(kernel.dim)]
            zw = [ZERO] * (2 * r)
            for coeff, basis_row in zip(combo, kernel.basis.entries):
                zw = [acc + coeff * v for acc, v in zip(zw, basis_row)]
        d = Charge1Datum.of(x_vec, y_vec, zw[:r], zw[r:])
        assert charge1_residuals(d) == (ZERO, ZERO, ZERO)
        flags = charge1_classify(d)
        assembled = charge1_to_datum(d, [rscalar(rng) for _ in range(4)])
        assert is_adhm(assembled)
        assert flags.stable == is_stable(assembled)
        assert flags.costable == is_costable(assembled)
        from adhmkit.adhm import is_fj_stable

        assert flags.fj_stable == is_fj_stable(assembled)
        checked_fj += flags.fj_stable
    assert checked_fj > 5


# -- the charge-2 component fixtures ---------------------------------------------


def test_symbolic_commutator():
    a, b = commuting_pair_symbolic()
    assert (a @ b - b @ a).is_zero()


def test_component_samples_satisfy_adhm():
    rng = random.Random(68)
    for ideal in ("I1", "I2", "I3"):
        for _ in range(15):
            params = sample_component_point(ideal, rng)
            x = pair_parametrization(params)
            assert mixed_equation_value(x).is_zero()
            assert is_adhm(x)


def test_intersection_samples():
    rng = random.Random(69)
    for _ in range(15):
        params = sample_component_point("I1&I2", rng)
        assert intersection_relation_value(params).is_zero()
        assert mixed_equation_value(pair_parametrization(params)).is_zero()


def test_isotropy_fixes_shared_parameter_points():
    rng = random.Random(70)
    from adhmkit.adhm import GroupElement

    for _ in range(15):
        params = sample_component_point("I2", rng)
        x = pair_parametrization(params)
        t1 = rscalar(rng)
        t2 = rscalar(rng)
        while t1.is_zero():
            t1 = rscalar(rng)
        while t2.is_zero():
            t2 = rscalar(rng)
        g = GroupElement.from_matrix(isotropy_matrix(params[0], params[1], t1, t2))
        assert act(g, x) == x


def test_c2_fixture_checks_pass():
    report = c2_fixture_checks(samples_per_ideal=10, intersection_samples=5, seed=3)
    assert report["all_passed"]
    assert report["ideal_samples_passing"] == {"I1": 10, "I2": 10, "I3": 10}


def test_eigenpair_reconstruction_oracle():
    rng = random.Random(71)
    for _ in range(20):
        y = [rscalar(rng) for _ in range(6)]
        b1, b2 = commuting_pair(y)
        # oracle: the construction is triangular, eigenvalue pairs are
        # read straight off the parameters
        expected = sorted(
            [(y[2], y[4]), (y[3], y[5])],
            key=lambda p: (p[0].re, p[0].im, p[1].re, p[1].im),
        )
        module = RModule(2, b1, b2, Matrix.zero(2, 2), Matrix.zero(2, 2))
        got = joint_eigenpairs_from_traces(trace_invariants(module, 2))
        assert got == expected
