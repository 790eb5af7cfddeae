"""Rational self-maps of the projective line over Q.

A map is a coprime pair (F, G) of rational-coefficient polynomials in
canonical scaling (G monic when G is nonzero, F monic otherwise).  Points of
the line are either finite rationals or the point at infinity.
"""

from .errors import DegreeCollapse, NotARationalMap, NotFixed
from .exactfield import Frac, Poly, Rat, poly_gcd, polyq, rat


class ProjPoint:
    """A point of the projective line: Finite(value) or Infinity."""

    __slots__ = ("value",)

    def __init__(self, value=None):
        self.value = None if value is None else Rat(value)

    @classmethod
    def finite(cls, v):
        return cls(v)

    @classmethod
    def infinity(cls):
        return cls(None)

    @property
    def is_infinity(self):
        return self.value is None

    def __eq__(self, other):
        if isinstance(other, ProjPoint):
            return self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return "ProjPoint(inf)" if self.is_infinity else f"ProjPoint({self.value})"


INFINITY = ProjPoint.infinity()


class Mobius:
    """Fractional linear transformation z -> (a z + b)/(c z + d), ad - bc != 0."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = Rat(a), Rat(b), Rat(c), Rat(d)
        if self.a * self.d - self.b * self.c == 0:
            raise ValueError("Mobius transformation must have ad - bc != 0")

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    def inverse(self):
        return Mobius(self.d, -self.b, -self.c, self.a)

    def compose(self, other):
        """self after other."""
        return Mobius(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __call__(self, x):
        if not isinstance(x, ProjPoint):
            x = ProjPoint(x)
        if x.is_infinity:
            if self.c == 0:
                return INFINITY
            return ProjPoint(self.a / self.c)
        den = self.c * x.value + self.d
        if den == 0:
            return INFINITY
        return ProjPoint((self.a * x.value + self.b) / den)

    def __repr__(self):
        return f"Mobius({self.a}, {self.b}, {self.c}, {self.d})"


class RationalMap:
    """Self-map F/G of the projective line, canonical and in lowest terms."""

    __slots__ = ("F", "G", "d")

    def __init__(self, F, G, _reduced=False):
        if G.is_zero:
            raise NotARationalMap("denominator reduces to zero")
        if not _reduced:
            g = poly_gcd(F, G)
            if g.degree > 0:
                F, G = F // g, G // g
        d = max(F.degree, G.degree)
        if d < 1:
            raise NotARationalMap("map must have degree >= 1")
        scale = 1 / G.lc
        if scale != 1:
            F, G = F.scale(scale), G.scale(scale)
        self.F = F
        self.G = G
        self.d = d

    def __eq__(self, other):
        if isinstance(other, RationalMap):
            return self.F == other.F and self.G == other.G
        return NotImplemented

    def __hash__(self):
        return hash((self.F, self.G))

    def __call__(self, x):
        """Exact image of a projective point."""
        if not isinstance(x, ProjPoint):
            x = ProjPoint(x)
        if x.is_infinity:
            dF, dG = self.F.degree, self.G.degree
            if dF > dG:
                return INFINITY
            if dF < dG:
                return ProjPoint(0)
            return ProjPoint(self.F.lc / self.G.lc)
        num = self.F(x.value)
        den = self.G(x.value)
        if den == 0:
            return INFINITY
        return ProjPoint(num / den)

    def __repr__(self):
        return f"RationalMap({self.F!r}, {self.G!r})"


def _homogeneous_combine(coeffs, P, Q, d):
    """sum coeffs[i] * P^i * Q^(d-i): the cleared substitution of P/Q."""
    powP = [polyq([1])]
    powQ = [polyq([1])]
    for _ in range(d):
        powP.append(powP[-1] * P)
        powQ.append(powQ[-1] * Q)
    out = Poly()
    for i in range(d + 1):
        c = coeffs.coeff(i)
        if c:
            out = out + (powP[i] * powQ[d - i]).scale(c)
    return out


def compose(outer, inner):
    """outer after inner, reduced, with the degree-product assertion.

    Composition of coprime pairs is coprime (a shared root would force a
    common root on one of the factors), so reduction is skipped and the
    degree check guards against arithmetic corruption instead.
    """
    d = outer.d
    num = _homogeneous_combine(outer.F, inner.F, inner.G, d)
    den = _homogeneous_combine(outer.G, inner.F, inner.G, d)
    result = RationalMap(num, den, _reduced=True)
    if result.d != outer.d * inner.d:
        raise DegreeCollapse(
            f"composition degree {result.d} != {outer.d} * {inner.d}"
        )
    return result


def iterate(phi, n):
    """The n-th iterate, n >= 1."""
    if n < 1:
        raise ValueError("iterate requires n >= 1")
    result = phi
    for _ in range(n - 1):
        result = compose(phi, result)
    return result


def derivative(phi):
    """phi' as a reduced fraction (F'G - FG')/G^2."""
    F, G = phi.F, phi.G
    return Frac(F.derivative() * G - F * G.derivative(), G * G)


def wronskian(phi):
    """Numerator F'G - FG' of the derivative; its roots are the finite
    critical points."""
    F, G = phi.F, phi.G
    return F.derivative() * G - F * G.derivative()


def conjugate(phi, theta):
    """theta . phi . theta^{-1} as a rational map; degree is preserved."""
    inv = theta.inverse()
    # phi(theta^{-1} z) with cleared denominators
    P = polyq([inv.b, inv.a])
    Q = polyq([inv.d, inv.c])
    num1 = _homogeneous_combine(phi.F, P, Q, phi.d)
    den1 = _homogeneous_combine(phi.G, P, Q, phi.d)
    num = num1.scale(theta.a) + den1.scale(theta.b)
    den = num1.scale(theta.c) + den1.scale(theta.d)
    result = RationalMap(num, den)
    if result.d != phi.d:
        raise DegreeCollapse("conjugation changed the degree")
    return result


def fixed_point_poly(phi):
    """P(z) = F(z) - z G(z); its roots are exactly the finite fixed points."""
    return phi.F - phi.G.shift(1)


def fixes_infinity(phi):
    return phi.F.degree > phi.G.degree


def multiplier_at_infinity(phi):
    """Derivative at 0 of 1/phi(1/z); requires that phi fixes infinity."""
    if not fixes_infinity(phi):
        raise NotFixed("infinity is not a fixed point")
    gap = phi.F.degree - phi.G.degree
    if gap >= 2:
        return rat(0)
    # psi(z) = z * Grev(z)/Frev(z) with psi(0) = 0, so psi'(0) = Grev(0)/Frev(0)
    return phi.G.lc / phi.F.lc


def multiplier(phi, x):
    """Multiplier of phi at a fixed point x (exact); raises NotFixed otherwise."""
    if not isinstance(x, ProjPoint):
        x = ProjPoint(x)
    if x.is_infinity:
        return multiplier_at_infinity(phi)
    v = x.value
    gv = phi.G(v)
    if gv == 0 or phi.F(v) != v * gv:
        raise NotFixed(f"{v} is not a fixed point")
    n = wronskian(phi)
    return n(v) / (gv * gv)


def choose_deperiodizing_conjugation(phi, N):
    """A Mobius theta with infinity not periodic for theta.phi.theta^{-1}
    at any period n <= N.

    Scans c = 0, 1, -1, 2, -2, ... for the first rational value that is not
    periodic of period <= N and returns theta(z) = 1/(z - c).  Terminates
    because each Per_n is finite.
    """
    if N < 1:
        raise ValueError("level bound must be >= 1")
    k = 0
    while True:
        candidates = [rat(0)] if k == 0 else [rat(k), rat(-k)]
        for c in candidates:
            start = ProjPoint(c)
            x = start
            periodic = False
            for _ in range(N):
                x = phi(x)
                if x == start:
                    periodic = True
                    break
            if not periodic:
                return Mobius(0, 1, 1, -c)
        k += 1
