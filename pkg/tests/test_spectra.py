import random

import pytest

from dynzeta.errors import DegreeTooLow, NotTransversal
from dynzeta.dynmap import Mobius, RationalMap, conjugate, iterate, multiplier
from dynzeta.exactfield import polyq, rat
from dynzeta.spectra import (
    SpectrumTable,
    check_transversal_levels,
    count_minimal_periodic,
    multiplier_power_sum,
    trace_sum_T,
)


def zmap(num, den=(1,)):
    return RationalMap(polyq(num), polyq(den))


SQUARING = zmap([0, 0, 1])
CHEBY = zmap([-2, 0, 1])
FAMILY = RationalMap(polyq([0, "1/2", 1]), polyq([1, "1/3"]))


def test_power_sum_power_map_paper_formula():
    # multipliers on Per_n(z^d): 0 at the two superattracting points,
    # d^n at the d^n - 1 others
    assert multiplier_power_sum(SQUARING, 2, 1) == 12
    assert multiplier_power_sum(SQUARING, 1, 0) == 3
    for n in range(1, 5):
        for m in range(4):
            expected = (2 ** n - 1) * 2 ** (n * m) + (2 if m == 0 else 0)
            assert multiplier_power_sum(SQUARING, n, m) == expected


def test_power_sum_chebyshev_fixed_level():
    # Fix(z^2 - 2) = {2, -1, inf} with multipliers {4, -2, 0}
    assert multiplier_power_sum(CHEBY, 1, 1) == 2
    assert multiplier_power_sum(CHEBY, 1, 0) == 3
    assert multiplier_power_sum(CHEBY, 1, 2) == 20
    assert multiplier_power_sum(CHEBY, 1, 3) == 56


def test_power_sum_chebyshev_level_two():
    # Per_2 multipliers: {16, 4, 0} at fixed points, {-4, -4} on the 2-cycle
    # (cycle points are the roots of z^2 + z - 1, product -1, so 4ab = -4)
    assert multiplier_power_sum(CHEBY, 2, 0) == 5
    assert multiplier_power_sum(CHEBY, 2, 1) == 16 + 4 + 0 - 4 - 4
    assert multiplier_power_sum(CHEBY, 2, 2) == 256 + 16 + 16 + 16
    assert multiplier_power_sum(CHEBY, 2, 3) == 4096 + 64 - 64 - 64


def test_power_sum_family_fixed_level():
    # multipliers {1/2, 1/3, 7/5}
    assert multiplier_power_sum(FAMILY, 1, 1) == rat(67, 30)
    assert multiplier_power_sum(FAMILY, 1, 2) == rat(2089, 900)
    assert multiplier_power_sum(FAMILY, 1, 0) == 3


def test_trace_sum_examples():
    # z^2 at n=1: multipliers {0, 2, 0}
    assert trace_sum_T(SQUARING, 1, 1) == -2
    assert trace_sum_T(SQUARING, 1, 0) == 1
    # z^2 at n=2: multipliers {0, 4, 4, 4, 0}
    assert trace_sum_T(SQUARING, 2, 2) == -16
    # z^2 - 2 at n=1: multipliers {4, -2, 0}
    assert trace_sum_T(CHEBY, 1, 0) == 1
    assert trace_sum_T(CHEBY, 1, 1) == -2
    assert trace_sum_T(CHEBY, 1, 2) == -4
    assert trace_sum_T(CHEBY, 1, 3) == -24
    # family at n=1: multipliers {1/2, 1/3, 7/5}
    assert trace_sum_T(FAMILY, 1, 0) == 1
    assert trace_sum_T(FAMILY, 1, 1) == -2
    assert trace_sum_T(FAMILY, 1, 2) == rat(-127, 30)


def test_trace_sum_T0_is_one_on_corpus():
    for phi, nmax in [(SQUARING, 4), (CHEBY, 4), (FAMILY, 4), (zmap([1, 0, 1]), 4)]:
        for n in range(1, nmax + 1):
            assert trace_sum_T(phi, n, 0) == 1


def test_difference_identity_on_table():
    for phi in (SQUARING, CHEBY, FAMILY):
        table = SpectrumTable.build(phi, 4, 3)
        for n in range(1, 5):
            for m in range(4):
                assert table.S[(n, m)] == table.T[(n, m)] - table.T[(n, m + 1)]


def test_table_matches_pointwise_ops():
    table = SpectrumTable.build(CHEBY, 3, 2)
    for n in range(1, 4):
        for m in range(3):
            assert table.power_sum(n, m) == multiplier_power_sum(CHEBY, n, m)
            assert table.trace_sum(n, m) == trace_sum_T(CHEBY, n, m)


def test_conjugation_invariance():
    rng = random.Random(71)
    for _ in range(4):
        while True:
            a, b, c, d = (rng.randint(-3, 3) for _ in range(4))
            if a * d - b * c != 0:
                break
        theta = Mobius(a, b, c, d)
        for phi in (SQUARING, FAMILY):
            psi = conjugate(phi, theta)
            for n in (1, 2, 3):
                for m in (0, 1, 2):
                    assert multiplier_power_sum(psi, n, m) == \
                        multiplier_power_sum(phi, n, m)
            assert trace_sum_T(psi, 2, 1) == trace_sum_T(phi, 2, 1)


def test_chain_rule_consistency():
    # multiplier(phi^n, x) = multiplier(phi, x)^n at rational fixed points
    for phi, pts in [(SQUARING, [rat(0), rat(1)]), (CHEBY, [rat(2), rat(-1)])]:
        for n in (2, 3):
            phin = iterate(phi, n)
            for x in pts:
                assert multiplier(phin, x) == multiplier(phi, x) ** n


def test_transversality_corpus():
    rep = check_transversal_levels(zmap([0, 1, 1]), 3)
    assert not rep.all_transversal
    assert rep.first_failure.n == 1
    assert rep.first_failure.witness is not None
    assert rep.first_failure.witness.degree >= 1

    rep = check_transversal_levels(zmap(["1/4", 0, 1]), 3)
    assert not rep.levels[0].transversal

    rep = check_transversal_levels(FAMILY, 6)
    assert rep.all_transversal

    rep = check_transversal_levels(SQUARING, 5)
    assert rep.all_transversal


def test_transversality_parabolic_at_infinity():
    # (z^2 + 1)/z fixes infinity with multiplier exactly 1
    phi = zmap([1, 0, 1], [0, 1])
    rep = check_transversal_levels(phi, 2)
    assert not rep.levels[0].transversal
    assert rep.levels[0].parabolic_at_infinity


def test_not_transversal_errors():
    with pytest.raises(NotTransversal) as e:
        multiplier_power_sum(zmap(["1/4", 0, 1]), 1, 1)
    assert e.value.level == 1
    with pytest.raises(NotTransversal):
        trace_sum_T(zmap([0, 1, 1]), 1, 0)


def test_degree_guard():
    with pytest.raises(DegreeTooLow):
        multiplier_power_sum(zmap([1, 1]), 1, 1)


def test_count_minimal_periodic():
    assert count_minimal_periodic(SQUARING, 1) == 3
    assert count_minimal_periodic(SQUARING, 2) == 2
    assert count_minimal_periodic(zmap([0, 0, 0, 1]), 2) == 6
    assert count_minimal_periodic(SQUARING, 6) == (2**6 + 1) - (2**3 + 1) - (2**2 + 1) + (2 + 1)
    with pytest.raises(NotTransversal):
        count_minimal_periodic(zmap([0, 1, 1]), 2)


def test_power_sum_brute_force_split_case():
    # For z^2 the fixed points are 0, 1, inf: direct evaluation oracle
    from dynzeta.dynmap import derivative

    d = derivative(SQUARING)
    lam0 = d.num(rat(0)) / d.den(rat(0))
    lam1 = d.num(rat(1)) / d.den(rat(1))
    for m in (1, 2, 3):
        assert multiplier_power_sum(SQUARING, 1, m) == lam0 ** m + lam1 ** m
