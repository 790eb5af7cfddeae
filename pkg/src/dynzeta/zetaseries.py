"""Truncated formal power series with exact rational coefficients, and the
series-vs-closed-form crosscheck that makes the rationality theorem
executable at desk scale."""

from dataclasses import dataclass

from .errors import DenominatorVanishesAtZero, NonzeroConstantTerm
from .exactfield import Rat, rat
from .spectra import SpectrumTable


class SeriesQ:
    """Power series truncated at order N: exactly N+1 exact coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs):
        self.c = tuple(Rat(v) for v in coeffs)
        if not self.c:
            raise ValueError("a truncated series needs at least order 0")

    @classmethod
    def constant(cls, value, order):
        return cls([value] + [0] * order)

    @property
    def order(self):
        return len(self.c) - 1

    def coeff(self, k):
        return self.c[k]

    def __eq__(self, other):
        if isinstance(other, SeriesQ):
            return self.c == other.c
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def _zip(self, other):
        n = min(self.order, other.order)
        return n, self.c, other.c

    def __add__(self, other):
        n, a, b = self._zip(other)
        return SeriesQ([a[k] + b[k] for k in range(n + 1)])

    def __sub__(self, other):
        n, a, b = self._zip(other)
        return SeriesQ([a[k] - b[k] for k in range(n + 1)])

    def __mul__(self, other):
        n, a, b = self._zip(other)
        out = []
        for k in range(n + 1):
            s = rat(0)
            for i in range(k + 1):
                if a[i] and b[k - i]:
                    s += a[i] * b[k - i]
            out.append(s)
        return SeriesQ(out)

    def scale(self, s):
        return SeriesQ([v * s for v in self.c])

    def __repr__(self):
        return f"SeriesQ({[str(v) for v in self.c]})"


def series_exp(a):
    """exp of a series with zero constant term, via b' = a' b.

    The order-k coefficient satisfies (k+1) b_{k+1} = sum (i+1) a_{i+1} b_{k-i}.
    """
    if a.c[0] != 0:
        raise NonzeroConstantTerm("series_exp needs constant term 0")
    n = a.order
    b = [rat(1)]
    for k in range(n):
        s = rat(0)
        for i in range(k + 1):
            if i + 1 <= n and a.c[i + 1]:
                s += (i + 1) * a.c[i + 1] * b[k - i]
        b.append(s / (k + 1))
    return SeriesQ(b)


def zeta_series(table, m, N):
    """exp( sum_{n=1..N} S_{n,m} t^n / n ) truncated at order N."""
    if N < 0:
        raise ValueError("order must be >= 0")
    if N == 0:
        return SeriesQ([1])
    if table.level_bound < N or table.mmax < m:
        raise ValueError("spectrum table does not cover the requested orders")
    log_coeffs = [rat(0)]
    for n in range(1, N + 1):
        log_coeffs.append(table.S[(n, m)] / n)
    return series_exp(SeriesQ(log_coeffs))


def lzeta_series(table, m, N):
    """exp( sum_{n=1..N} T_m(phi^n) t^n / n ) truncated at order N."""
    if N == 0:
        return SeriesQ([1])
    log_coeffs = [rat(0)]
    for n in range(1, N + 1):
        log_coeffs.append(table.T[(n, m)] / n)
    return series_exp(SeriesQ(log_coeffs))


def expand_closed(r, N):
    """Taylor expansion of a rational function in t at 0 by long division."""
    den0 = r.den.coeff(0)
    if not den0:
        raise DenominatorVanishesAtZero("denominator vanishes at t = 0")
    out = []
    for k in range(N + 1):
        s = Rat(r.num.coeff(k))
        for j in range(1, min(k, r.den.degree) + 1):
            s -= r.den.coeff(j) * out[k - j]
        out.append(s / den0)
    return SeriesQ(out)


@dataclass(frozen=True)
class CrosscheckResult:
    ok: bool
    first_mismatch: int | None
    series: SeriesQ
    closed: SeriesQ

    @property
    def mismatch_values(self):
        if self.ok:
            return None
        k = self.first_mismatch
        return self.series.coeff(k), self.closed.coeff(k)


def crosscheck(phi, m, N):
    """Compare the multiplier-sum series with the expanded closed form.

    Equality to every tested order is the executable form of the rationality
    statement; transversality of all levels n <= N is required for the
    series side and is checked while the spectrum table is built.
    """
    from .cohomop import zeta_closed

    table = SpectrumTable.build(phi, max(N, 1), m, with_trace_sums=False)
    lhs = zeta_series(table, m, N)
    rhs = expand_closed(zeta_closed(phi, m), N)
    for k in range(N + 1):
        if lhs.coeff(k) != rhs.coeff(k):
            return CrosscheckResult(False, k, lhs, rhs)
    return CrosscheckResult(True, None, lhs, rhs)
