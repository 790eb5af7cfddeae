"""Exact multiplier power sums, trace sums, periodic-point counts and
transversality certification up to a level bound.

Level-n data lives in the quotient algebra Q[z]/(P_n) with P_n = F_n - z G_n
the fixed-point polynomial of the n-th iterate, whose roots are exactly the
finite periodic points of period n.  When infinity is periodic at level n its
multiplier is read off the iterate's leading coefficients and added as an
explicit term, so no conjugation is ever required and sparse maps stay
sparse.  The values agree with any deperiodized-chart computation because
both sums run over the same Per_n with the same multipliers.
"""

from dataclasses import dataclass, field

from .errors import DegreeTooLow, NotTransversal
from .exactfield import Poly, QuotAlg, Rat, poly_gcd, is_squarefree, rat
from .dynmap import RationalMap, compose, fixed_point_poly, fixes_infinity, \
    multiplier_at_infinity, wronskian


def _require_degree(phi):
    if phi.d < 2:
        raise DegreeTooLow("zeta-type operations require degree >= 2")


class _LevelData:
    """Per-level state: the algebra, the multiplier element h = (phi^n)' and
    the explicit infinity contribution."""

    __slots__ = ("n", "algebra", "h", "inf_fixed", "mu_inf", "_h_powers",
                 "_inv_one_minus_h")

    def __init__(self, phi_n, n):
        P = fixed_point_poly(phi_n)
        self.n = n
        self.inf_fixed = fixes_infinity(phi_n)
        self.mu_inf = multiplier_at_infinity(phi_n) if self.inf_fixed else None
        sq = is_squarefree(P)
        if not sq or (self.inf_fixed and self.mu_inf == 1):
            raise NotTransversal(
                f"level {n} has a periodic point with multiplier 1",
                level=n,
                witness=poly_gcd(P, P.derivative()) if not sq else None,
            )
        self.algebra = QuotAlg(P)
        G = phi_n.G
        num = self.algebra.reduce(wronskian(phi_n))
        if G.degree == 0:
            self.h = num.scale(1 / (G.lc * G.lc))
        else:
            g2 = self.algebra.reduce(G * G)
            self.h = self.algebra.mul(num, self.algebra.inverse(g2))
        self._h_powers = [self.algebra.one, self.h]
        self._inv_one_minus_h = None

    def h_power(self, m):
        while len(self._h_powers) <= m:
            self._h_powers.append(
                self.algebra.mul(self._h_powers[-1], self.h)
            )
        return self._h_powers[m]

    def power_sum(self, m):
        """S_{n,m}: the m-th power sum of multipliers over Per_n (0^0 = 1)."""
        s = Rat(self.algebra.trace(self.h_power(m)))
        if self.inf_fixed:
            s += rat(1) if m == 0 else self.mu_inf ** m
        return s

    def trace_sum(self, m):
        """T_m(phi^n) = sum of lambda^m / (1 - lambda) over Fix(phi^n)."""
        if self._inv_one_minus_h is None:
            one_minus = self.algebra.one - self.h
            self._inv_one_minus_h = self.algebra.inverse(one_minus)
        g = self.algebra.mul(self.h_power(m), self._inv_one_minus_h)
        s = Rat(self.algebra.trace(g))
        if self.inf_fixed:
            mu = self.mu_inf
            s += (rat(1) if m == 0 else mu ** m) / (1 - mu)
        return s


def _level_iterates(phi, nmax):
    phi_n = phi
    for n in range(1, nmax + 1):
        if n > 1:
            phi_n = compose(phi, phi_n)
        yield n, phi_n


@dataclass(frozen=True)
class LevelVerdict:
    n: int
    transversal: bool
    witness: Poly | None = None
    parabolic_at_infinity: bool = False


@dataclass(frozen=True)
class TransversalityReport:
    level_bound: int
    levels: tuple

    @property
    def all_transversal(self):
        return all(v.transversal for v in self.levels)

    @property
    def first_failure(self):
        for v in self.levels:
            if not v.transversal:
                return v
        return None


def check_transversal_levels(phi, N):
    """Squarefree-test the fixed-point polynomial of every iterate n <= N,
    plus the multiplier-1 test at infinity when infinity is periodic."""
    _require_degree(phi)
    verdicts = []
    for n, phi_n in _level_iterates(phi, N):
        P = fixed_point_poly(phi_n)
        witness = None
        at_inf = False
        ok = is_squarefree(P)
        if not ok:
            witness = poly_gcd(P, P.derivative())
        elif fixes_infinity(phi_n) and multiplier_at_infinity(phi_n) == 1:
            ok = False
            at_inf = True
        verdicts.append(LevelVerdict(n, ok, witness, at_inf))
    return TransversalityReport(N, tuple(verdicts))


def multiplier_power_sum(phi, n, m):
    """S_{n,m} = sum of lambda(phi^n, x)^m over x in Per_n(phi), exactly.

    Level n must be transversal; m = 0 counts the d^n + 1 periodic points.
    """
    _require_degree(phi)
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    level = _LevelData(_iterate_to(phi, n), n)
    return level.power_sum(m)


def trace_sum_T(phi, n, m):
    """T_m(phi^n) = sum over Fix(phi^n) of lambda^m / (1 - lambda), exactly."""
    _require_degree(phi)
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    level = _LevelData(_iterate_to(phi, n), n)
    return level.trace_sum(m)


def _iterate_to(phi, n):
    phi_n = phi
    for _ in range(n - 1):
        phi_n = compose(phi, phi_n)
    return phi_n


def _mobius_mu(k):
    if k == 1:
        return 1
    out = 1
    p = 2
    while p * p <= k:
        if k % p == 0:
            k //= p
            if k % p == 0:
                return 0
            out = -out
        p += 1
    if k > 1:
        out = -out
    return out


def count_minimal_periodic(phi, n):
    """Number of points of minimal period n: Mobius inversion of #Per_e.

    Requires every level e | n to be transversal so that #Per_e = d^e + 1.
    """
    _require_degree(phi)
    divisors = [e for e in range(1, n + 1) if n % e == 0]
    report = check_transversal_levels(phi, n)
    for e in divisors:
        verdict = report.levels[e - 1]
        if not verdict.transversal:
            raise NotTransversal(
                f"level {e} is not transversal", level=e, witness=verdict.witness
            )
    return sum(_mobius_mu(n // e) * (phi.d ** e + 1) for e in divisors)


@dataclass
class SpectrumTable:
    """Exact S_{n,m} and T_m(phi^n) values for n <= level_bound, m <= mmax.

    T entries extend one order beyond mmax so the difference identity
    S_{n,m} = T_m - T_{m+1} is checkable on the whole table.
    """

    map: RationalMap
    level_bound: int
    mmax: int
    S: dict = field(default_factory=dict)
    T: dict = field(default_factory=dict)

    @classmethod
    def build(cls, phi, nmax, mmax, with_trace_sums=True):
        _require_degree(phi)
        if nmax < 1 or mmax < 0:
            raise ValueError("need nmax >= 1 and mmax >= 0")
        table = cls(map=phi, level_bound=nmax, mmax=mmax)
        for n, phi_n in _level_iterates(phi, nmax):
            level = _LevelData(phi_n, n)
            for m in range(mmax + 1):
                table.S[(n, m)] = level.power_sum(m)
            if with_trace_sums:
                for m in range(mmax + 2):
                    table.T[(n, m)] = level.trace_sum(m)
        return table

    def power_sum(self, n, m):
        return self.S[(n, m)]

    def trace_sum(self, n, m):
        return self.T[(n, m)]
