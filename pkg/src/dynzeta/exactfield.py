"""Exact scalar, polynomial, fraction-field, quotient-algebra and matrix kernel.

Everything here is immutable after construction and safe to share across
threads.  Scalars are arbitrary-precision rationals (`Rat`); polynomials are
dense with ascending coefficients over any exact field that supports mixed
arithmetic with Python ints (`Rat` itself, or `Frac` for rational function
coefficients).
"""

from .errors import NotInvertible

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Rat

RAT_ZERO = Rat(0)
RAT_ONE = Rat(1)


def rat(p, q=None):
    """Exact rational from ints, a decimal-free string like '3/4', or a Rat."""
    if q is None:
        return Rat(p)
    return Rat(p, q)


class Poly:
    """Dense univariate polynomial, coefficients ascending in degree.

    The zero polynomial is the empty tuple and has degree -1 (a sentinel,
    never a valid degree).  Otherwise the last coefficient is nonzero.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        c = list(coeffs)
        while c and not c[-1]:
            c.pop()
        self.c = tuple(c)

    @property
    def degree(self):
        return len(self.c) - 1

    @property
    def is_zero(self):
        return not self.c

    @property
    def lc(self):
        """Leading coefficient; raises on the zero polynomial."""
        return self.c[-1]

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.c == other.c
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __add__(self, other):
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = out[i] + v
        return Poly(out)

    def __neg__(self):
        return Poly([-v for v in self.c])

    def __sub__(self, other):
        a, b = self.c, other.c
        out = list(a) + [0] * (len(b) - len(a))
        for i, v in enumerate(b):
            out[i] = out[i] - v
        return Poly(out)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        a, b = self.c, other.c
        if not a or not b:
            return Poly()
        out = [0] * (len(a) + len(b) - 1)
        for i, av in enumerate(a):
            if not av:
                continue
            for j, bv in enumerate(b):
                out[i + j] += av * bv
        return Poly(out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, s):
        if not s:
            return Poly()
        return Poly([v * s for v in self.c])

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative polynomial power")
        result = Poly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        """Euclidean division; coefficients must form a field."""
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if self.degree < other.degree:
            return Poly(), self
        r = list(self.c)
        db, lb = other.degree, other.lc
        q = [0] * (len(r) - db)
        bc = other.c
        for k in range(len(r) - db - 1, -1, -1):
            t = r[k + db] / lb
            if t:
                q[k] = t
                for i, bv in enumerate(bc):
                    r[k + i] -= t * bv
        return Poly(q), Poly(r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if self.is_zero or self.lc == 1:
            return self
        inv = 1 / self.lc
        return Poly([v * inv for v in self.c])

    def derivative(self):
        return Poly([i * v for i, v in enumerate(self.c)][1:])

    def shift(self, k):
        """Multiply by x**k."""
        if self.is_zero or k == 0:
            return self
        return Poly((0,) * k + self.c)

    def reversed(self, degree=None):
        """Coefficients reversed as x**degree * p(1/x); defaults to deg p."""
        if degree is None:
            degree = self.degree
        out = [0] * (degree + 1)
        for i, v in enumerate(self.c):
            out[degree - i] = v
        return Poly(out)

    def __call__(self, x):
        """Horner evaluation; x may live in any ring containing the coefficients."""
        acc = 0
        for v in reversed(self.c):
            acc = acc * x + v
        return acc

    def coeff(self, i):
        return self.c[i] if 0 <= i < len(self.c) else 0

    def __repr__(self):
        return f"Poly({list(self.c)!r})"


def polyq(coeffs):
    """Polynomial with Rat coefficients, coercing ints and 'p/q' strings."""
    return Poly([v if isinstance(v, type(RAT_ONE)) else Rat(v) for v in coeffs])


POLY_ZERO = Poly()
POLY_ONE = polyq([1])

_RAT_TYPE = type(RAT_ONE)
_INT_ONE = RAT_ONE.numerator

try:
    from gmpy2 import gcd as _int_gcd
except ImportError:  # pragma: no cover
    from math import gcd as _int_gcd


def _lcm_int(a, b):
    if a == 1:
        return b
    if b == 1:
        return a
    return a // _int_gcd(a, b) * b


def _to_int_coeffs(p):
    """Clear denominators: returns (integer coefficient list, denominator D)
    with D * p having the returned integer coefficients."""
    den = _INT_ONE
    for c in p.c:
        den = _lcm_int(den, c.denominator)
    return [c.numerator * (den // c.denominator) for c in p.c], den


def _int_prem(a, b):
    """Pseudo division over Z: returns (q, r) with lc(b)^(da-db+1)*a = q*b + r."""
    da, db = len(a) - 1, len(b) - 1
    lb = b[-1]
    r = list(a)
    q = [_INT_ONE * 0] * (da - db + 1)
    e = da - db + 1
    while r and len(r) - 1 >= db:
        k = len(r) - 1 - db
        t = r[-1]
        for i in range(len(q)):
            q[i] *= lb
        q[k] += t
        for i in range(len(r)):
            r[i] *= lb
        for i in range(db + 1):
            r[k + i] -= t * b[i]
        while r and not r[-1]:
            r.pop()
        e -= 1
    if e > 0:
        s = lb ** e
        q = [c * s for c in q]
        r = [c * s for c in r]
    return q, r


def _exact_div(coeffs, d):
    out = []
    for c in coeffs:
        q, rem = divmod(c, d)
        if rem:
            raise ArithmeticError("inexact division in subresultant PRS")
        out.append(q)
    return out


def _int_subresultant(a, b):
    """Subresultant PRS over Z for integer coefficient lists (deg a >= deg b).

    Yields the remainder chain with controlled (determinant-bounded)
    coefficient growth; the monic remainder sequence over Q blows up
    catastrophically on dense inputs.  Returns the last nonzero remainder and
    the list of (q, lc1, delta, beta) steps for cofactor replay.
    """
    r0, r1 = list(a), list(b)
    psi = -_INT_ONE
    prev_delta = None
    steps = []
    while r1:
        delta = (len(r0) - 1) - (len(r1) - 1)
        lc1 = r1[-1]
        if prev_delta is None:
            beta = -_INT_ONE if (delta + 1) % 2 else _INT_ONE
        else:
            lc0 = r0[-1]
            if prev_delta == 1:
                psi = -lc0
            elif prev_delta > 1:
                psi_new, rem = divmod((-lc0) ** prev_delta, psi ** (prev_delta - 1))
                if rem:
                    raise ArithmeticError("psi update not exact")
                psi = psi_new
            beta = -lc0 * psi ** delta
        q, r = _int_prem(r0, r1)
        r = _exact_div(r, beta)
        steps.append((q, lc1, delta, beta))
        prev_delta = delta
        r0, r1 = r1, r
    return r0, steps


def _replay_cofactors(steps):
    """Cofactor rows for the subresultant chain, over Q (exact, small)."""
    u0, u1 = POLY_ONE, POLY_ZERO
    v0, v1 = POLY_ZERO, POLY_ONE
    for q, lc1, delta, beta in steps:
        m = Rat(lc1) ** (delta + 1)
        qp = Poly([Rat(c) for c in q])
        inv_beta = 1 / Rat(beta)
        nu = (u0.scale(m) - qp * u1).scale(inv_beta)
        nv = (v0.scale(m) - qp * v1).scale(inv_beta)
        u0, u1 = u1, nu
        v0, v1 = v1, nv
    return u0, v0


def _poly_gcd_rat(a, b):
    ia, _ = _to_int_coeffs(a)
    ib, _ = _to_int_coeffs(b)
    if len(ia) < len(ib):
        ia, ib = ib, ia
    g, _ = _int_subresultant(ia, ib)
    return Poly([Rat(c) for c in g]).monic()


def _poly_xgcd_rat(a, b):
    ia, da = _to_int_coeffs(a)
    ib, db = _to_int_coeffs(b)
    swapped = len(ia) < len(ib)
    if swapped:
        ia, ib = ib, ia
        da, db = db, da
    g, steps = _int_subresultant(ia, ib)
    u, v = _replay_cofactors(steps)
    # identity: u*(da*a') + v*(db*b') = g with (a', b') the swapped pair
    lg = Rat(g[-1])
    gp = Poly([Rat(c) / lg for c in g])
    u = u.scale(Rat(da) / lg)
    v = v.scale(Rat(db) / lg)
    if swapped:
        u, v = v, u
    return gp, u, v


def _poly_gcd_euclid(a, b):
    while b:
        a, b = b, (a % b).monic()
    return a.monic()


def _poly_xgcd_euclid(a, b):
    r0, r1 = a, b
    u0, u1 = Poly([1]), Poly()
    v0, v1 = Poly(), Poly([1])
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    if r0.is_zero:
        return r0, u0, v0
    inv = 1 / r0.lc
    return r0.scale(inv), u0.scale(inv), v0.scale(inv)


def _is_rat_poly(p):
    return all(isinstance(c, _RAT_TYPE) for c in p.c)


def poly_gcd(a, b):
    """Monic greatest common divisor; gcd(0, 0) = 0.

    Over Q this runs a fraction-free subresultant remainder sequence (the
    monic Euclidean sequence suffers catastrophic coefficient growth on dense
    inputs); over other coefficient fields it falls back to monic Euclid.
    """
    if a.is_zero:
        return b.monic()
    if b.is_zero:
        return a.monic()
    if a.degree == 0 or b.degree == 0:
        return a.monic() if b.degree else b.monic()
    if _is_rat_poly(a) and _is_rat_poly(b):
        return _poly_gcd_rat(a, b)
    return _poly_gcd_euclid(a, b)


def poly_xgcd(a, b):
    """Extended gcd: returns (g, u, v) with u*a + v*b = g and g monic."""
    if a.is_zero or b.is_zero or a.degree == 0 or b.degree == 0:
        return _poly_xgcd_euclid(a, b)
    if _is_rat_poly(a) and _is_rat_poly(b):
        return _poly_xgcd_rat(a, b)
    return _poly_xgcd_euclid(a, b)


def is_squarefree(p):
    """True iff gcd(p, p') is constant.  The zero polynomial is rejected."""
    if p.is_zero:
        raise ValueError("squarefree test of the zero polynomial")
    return poly_gcd(p, p.derivative()).degree == 0


def invert_mod(a, modulus):
    """Inverse of `a` modulo `modulus`; raises NotInvertible when gcd != 1."""
    g, u, _ = poly_xgcd(a % modulus, modulus)
    if g.degree != 0:
        raise NotInvertible(
            f"gcd has degree {g.degree}; element not invertible mod modulus"
        )
    return u % modulus


class Frac:
    """Element of the fraction field of Rat[x]: num/den, den monic, reduced."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=POLY_ONE):
        if not isinstance(num, Poly):
            num = polyq([num]) if num else POLY_ZERO
        if not isinstance(den, Poly):
            den = polyq([den])
        if den.is_zero:
            raise ZeroDivisionError("zero denominator in Frac")
        if den.degree == 0:
            if den.lc != 1:
                num = num.scale(1 / den.lc)
            den = POLY_ONE
        elif num.is_zero:
            den = POLY_ONE
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            if den.lc != 1:
                inv = 1 / den.lc
                num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @classmethod
    def _raw(cls, num, den):
        """Bypass normalization for inputs already in canonical form."""
        f = object.__new__(cls)
        f.num = num
        f.den = den
        return f

    @staticmethod
    def _coerce(v):
        if isinstance(v, Frac):
            return v
        if isinstance(v, Poly):
            return Frac._raw(v, POLY_ONE)
        return Frac._raw(polyq([v]) if v else POLY_ZERO, POLY_ONE)

    @property
    def is_polynomial(self):
        return self.den == POLY_ONE

    def as_poly(self):
        if not self.is_polynomial:
            raise ValueError("Frac has a nonconstant denominator")
        return self.num

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        try:
            other = Frac._coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = Frac._coerce(other)
        if self.den == POLY_ONE and other.den == POLY_ONE:
            return Frac._raw(self.num + other.num, POLY_ONE)
        return Frac(self.num * other.den + other.num * self.den,
                    self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return Frac._raw(-self.num, self.den)

    def __sub__(self, other):
        return self + (-Frac._coerce(other))

    def __rsub__(self, other):
        return Frac._coerce(other) + (-self)

    def __mul__(self, other):
        other = Frac._coerce(other)
        if self.den == POLY_ONE and other.den == POLY_ONE:
            return Frac._raw(self.num * other.num, POLY_ONE)
        return Frac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Frac._coerce(other)
        if other.num.is_zero:
            raise ZeroDivisionError("division by zero Frac")
        return Frac(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return Frac._coerce(other) / self

    def __pow__(self, k):
        if k < 0:
            return Frac(self.den ** (-k), self.num ** (-k))
        return Frac(self.num ** k, self.den ** k)

    def __repr__(self):
        if self.is_polynomial:
            return f"Frac({list(self.num.c)!r})"
        return f"Frac({list(self.num.c)!r}, {list(self.den.c)!r})"


FRAC_ZERO = Frac._raw(POLY_ZERO, POLY_ONE)
FRAC_ONE = Frac._raw(POLY_ONE, POLY_ONE)


class QuotAlg:
    """Quotient algebra F[z]/(modulus) with the modulus made monic.

    Elements are Poly values of degree < dim over the same coefficient field
    as the modulus.  Traces are computed through the classical trace form:
    tr(mult-by-z^k) is the k-th power sum of the modulus roots (counted with
    multiplicity), obtained once per algebra from Newton's identities.
    """

    __slots__ = ("modulus", "dim", "_psums")

    def __init__(self, modulus):
        if modulus.degree < 1:
            raise ValueError("modulus must have degree >= 1")
        self.modulus = modulus.monic()
        self.dim = self.modulus.degree
        self._psums = None

    @property
    def one(self):
        return Poly([1])

    def reduce(self, p):
        if p.degree < self.dim:
            return p
        return p % self.modulus

    def mul(self, a, b):
        return self.reduce(a * b)

    def shift_reduce(self, a):
        """z * a reduced mod the modulus; one O(dim) step."""
        c = a.shift(1)
        if c.degree < self.dim:
            return c
        lead = c.c[-1]
        out = list(c.c[: self.dim])
        for i, mv in enumerate(self.modulus.c[: self.dim]):
            if mv:
                out[i] -= lead * mv
        return Poly(out)

    def pow(self, a, k):
        result = self.one
        base = self.reduce(a)
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def inverse(self, a):
        return invert_mod(self.reduce(a), self.modulus)

    def power_sums(self):
        """Power sums p_0..p_{dim-1} of the modulus roots (with multiplicity)."""
        if self._psums is None:
            d = self.dim
            a = self.modulus.c  # monic: a[d] == 1
            p = [d]
            for k in range(1, d):
                s = -k * a[d - k]
                for j in range(1, k):
                    s = s - a[d - j] * p[k - j]
                p.append(s)
            self._psums = p
        return self._psums

    def trace(self, h):
        """Trace of multiplication by h: the sum of h over the modulus roots."""
        h = self.reduce(h)
        p = self.power_sums()
        s = 0
        for k, hv in enumerate(h.c):
            if hv:
                s = s + hv * p[k]
        return s


def algebra_trace(algebra, h):
    """Sum of h over the roots of the algebra modulus (trace form).

    When the modulus is squarefree every root is counted exactly once.
    """
    return algebra.trace(h)


class Mat:
    """Immutable square matrix over an exact field."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        for r in rows:
            if len(r) != n:
                raise ValueError("matrix must be square")
        self.rows = rows

    @classmethod
    def identity(cls, n, one=RAT_ONE):
        return cls([[one if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def dim(self):
        return len(self.rows)

    def __eq__(self, other):
        if isinstance(other, Mat):
            return self.dim == other.dim and all(
                self.rows[i][j] == other.rows[i][j]
                for i in range(self.dim)
                for j in range(self.dim)
            )
        return NotImplemented

    def __hash__(self):
        return hash(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __mul__(self, other):
        n = self.dim
        a, b = self.rows, other.rows
        return Mat(
            [
                [sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
                for i in range(n)
            ]
        )

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative matrix power")
        result = Mat.identity(self.dim)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def trace(self):
        return sum(self.rows[i][i] for i in range(self.dim))

    def __repr__(self):
        return f"Mat({[list(r) for r in self.rows]!r})"


def mat_q(rows):
    """Square matrix with Rat entries, coercing ints and 'p/q' strings."""
    return Mat([[v if isinstance(v, type(RAT_ONE)) else Rat(v) for v in r] for r in rows])


def charpoly_det(M):
    """det(I - t*M) as a Poly in t, constant term 1.

    Uses the Faddeev-LeVerrier recursion: division-free apart from exact
    division by the step index, valid in characteristic 0.
    """
    n = M.dim
    if n == 0:
        return polyq([1])
    coeffs = [RAT_ONE]
    A = M
    for k in range(1, n + 1):
        tr = A.trace()
        ck = -Rat(tr) / k if tr else RAT_ZERO
        coeffs.append(ck)
        if k == n:
            break
        shifted = Mat(
            [
                [A.rows[i][j] + (ck if i == j else 0) for j in range(n)]
                for i in range(n)
            ]
        )
        A = M * shifted
    return Poly(coeffs)
