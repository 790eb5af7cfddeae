import random

import pytest

from dynzeta.errors import (
    DenominatorVanishesAtZero,
    NonzeroConstantTerm,
    NotTransversal,
)
from dynzeta.cohomop import RationalFunctionT, lzeta_closed, zeta_closed
from dynzeta.dynmap import RationalMap
from dynzeta.exactfield import polyq, rat
from dynzeta.spectra import SpectrumTable
from dynzeta.zetaseries import (
    SeriesQ,
    crosscheck,
    expand_closed,
    lzeta_series,
    series_exp,
    zeta_series,
)


def zmap(num, den=(1,)):
    return RationalMap(polyq(num), polyq(den))


SQUARING = zmap([0, 0, 1])
FAMILY = RationalMap(polyq([0, "1/2", 1]), polyq([1, "1/3"]))


def one_minus(a):
    return polyq([1]) - polyq([0, a])


def test_series_exp_basics():
    assert series_exp(SeriesQ([0, 0, 0])) == SeriesQ([1, 0, 0])
    e = series_exp(SeriesQ([0, 1, 0, 0]))
    assert e == SeriesQ([1, 1, "1/2", "1/6"])
    with pytest.raises(NonzeroConstantTerm):
        series_exp(SeriesQ([1, 1]))


def test_series_exp_geometric_log():
    # sum (2^n + 1) t^n / n is log of 1/((1-t)(1-2t)); coefficients 2^(n+1)-1
    a = SeriesQ([0] + [rat(2 ** n + 1, n) for n in range(1, 4)])
    assert series_exp(a) == SeriesQ([1, 3, 7, 15])


def test_series_arithmetic_truncates():
    a = SeriesQ([1, 2, 3])
    b = SeriesQ([1, -1])
    assert (a * b).order == 1
    assert a * b == SeriesQ([1, 1])
    assert a + SeriesQ([0, 0, 1]) == SeriesQ([1, 2, 4])


def test_expand_closed_examples():
    r = RationalFunctionT(polyq([1]), one_minus(1))
    assert expand_closed(r, 3) == SeriesQ([1, 1, 1, 1])
    r2 = RationalFunctionT(one_minus(2), one_minus(4))
    assert expand_closed(r2, 2) == SeriesQ([1, 2, 8])
    r3 = RationalFunctionT(polyq([1]), one_minus(1) * one_minus(2))
    assert expand_closed(r3, 3) == SeriesQ([1, 3, 7, 15])


def test_expand_closed_rejects_vanishing_denominator():
    class FakeR:
        num = polyq([1])
        den = polyq([0, 1])

    with pytest.raises(DenominatorVanishesAtZero):
        expand_closed(FakeR(), 2)


def test_zeta_series_artin_mazur():
    table = SpectrumTable.build(SQUARING, 3, 0, with_trace_sums=False)
    assert zeta_series(table, 0, 3) == SeriesQ([1, 3, 7, 15])
    assert zeta_series(table, 0, 0) == SeriesQ([1])


def test_zeta_series_weight_one():
    table = SpectrumTable.build(SQUARING, 2, 1, with_trace_sums=False)
    assert zeta_series(table, 1, 2) == SeriesQ([1, 2, 8])


def test_log_inverse_consistency():
    # expand_closed of prod (1 - a t)^(+-1) vs series_exp of -+ sum log terms
    rng = random.Random(13)
    N = 6
    for _ in range(6):
        a = rat(rng.randint(1, 5), rng.randint(1, 3))
        b = rat(rng.randint(1, 5), rng.randint(1, 3))
        r = RationalFunctionT(one_minus(a), one_minus(b))
        # log(1/(1-bt)) - log(1/(1-at)) = sum (b^n - a^n) t^n / n
        logs = SeriesQ([0] + [(b ** n - a ** n) / rat(n) for n in range(1, N + 1)])
        assert series_exp(logs) == expand_closed(r, N)


def test_quotient_identity_at_series_level():
    # zeta_m series equals the quotient of consecutive trace-sum series
    table = SpectrumTable.build(FAMILY, 4, 2)
    for m in (0, 1, 2):
        z = zeta_series(table, m, 4)
        zm = lzeta_series(table, m, 4)
        zm1 = lzeta_series(table, m + 1, 4)
        assert z * zm1 == zm


def test_lzeta_series_matches_closed():
    table = SpectrumTable.build(SQUARING, 4, 2)
    for m in (1, 2):
        assert lzeta_series(table, m, 4) == expand_closed(lzeta_closed(SQUARING, m), 4)
    # at m = 0 the closed form bundles the weight-1 factor with 1/(1-t),
    # while the T-entry series alone is exp(sum t^n/n) = 1/(1-t)
    assert lzeta_series(table, 0, 4) == SeriesQ([1, 1, 1, 1, 1])
    assert lzeta_closed(SQUARING, 0) == RationalFunctionT(
        polyq([1]), one_minus(1) * one_minus(2)
    )


def test_crosscheck_golden():
    res = crosscheck(SQUARING, 1, 6)
    assert res.ok and res.first_mismatch is None
    res = crosscheck(FAMILY, 1, 6)
    assert res.ok
    res = crosscheck(FAMILY, 0, 5)
    assert res.ok


def test_crosscheck_parabolic_raises():
    with pytest.raises(NotTransversal):
        crosscheck(zmap(["1/4", 0, 1]), 1, 3)


def test_crosscheck_reports_first_mismatch():
    # artificial mismatch: compare z^2 series against the z^3 closed form
    table = SpectrumTable.build(SQUARING, 3, 1, with_trace_sums=False)
    lhs = zeta_series(table, 1, 3)
    rhs = expand_closed(zeta_closed(zmap([0, 0, 0, 1]), 1), 3)
    for k in range(4):
        if lhs.coeff(k) != rhs.coeff(k):
            assert k == 1
            break
    else:
        pytest.fail("series unexpectedly equal")
