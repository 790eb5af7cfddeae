"""Transfer matrices on first-cohomology duals, and closed-form zeta functions.

For a degree-d map phi = F/G and a weight m >= 1, the operator acts on
polynomials p of degree <= 2m-2 by

    (Phi_m p)(w) = sum over the d preimages z of w of phi'(z)^(m-1) p(z).

The preimage sum is an algebra trace over Q(w)[z]/(F(z) - w G(z)).  The
inverse of G needed for phi' = N/G^2 never requires a Euclidean pass over
Q(w): from F = w G in the quotient and the Bezout identity A F + B G = 1
over Q one reads off G^{-1} = A(z) w + B(z) directly.  Every basis image
must clear to a polynomial in w of degree <= 2m-2; the (2m-1) x (2m-1)
rational matrix of these images has det(1 - t Phi_m) equal to the m-th
closed-form zeta factor, which the test suite pins against the independent
periodic-point path.
"""

from .errors import DegreeTooLow, InternalError, NonPolynomialImage
from .exactfield import (
    Frac,
    Mat,
    Poly,
    QuotAlg,
    Rat,
    charpoly_det,
    poly_gcd,
    poly_xgcd,
    polyq,
)
from .dynmap import wronskian


class TransferMatrix:
    """The exact (2m-1) x (2m-1) matrix of the weight-m transfer operator."""

    __slots__ = ("m", "map", "mat")

    def __init__(self, m, phi, mat):
        self.m = m
        self.map = phi
        self.mat = mat

    @property
    def dim(self):
        return self.mat.dim

    def __eq__(self, other):
        if isinstance(other, TransferMatrix):
            return self.m == other.m and self.mat == other.mat
        return NotImplemented

    def __repr__(self):
        return f"TransferMatrix(m={self.m}, dim={self.dim})"


def _frac_const(c):
    return Frac._coerce(c)


def transfer_matrix(phi, m):
    """Build Phi_m for phi; requires degree >= 2 and m >= 1."""
    if phi.d < 2:
        raise DegreeTooLow("transfer operator requires degree >= 2")
    if m < 1:
        raise ValueError("transfer operator weight must be m >= 1")
    F, G = phi.F, phi.G
    d = phi.d
    k = 2 * m - 1

    # modulus F(z) - w G(z) as a z-polynomial with Q(w) coefficients
    mod = Poly([Frac(polyq([F.coeff(i), -G.coeff(i)])) for i in range(d + 1)])
    alg = QuotAlg(mod)

    if m == 1:
        weight = alg.one
    else:
        g, A, B = poly_xgcd(F, G)
        if g != polyq([1]):
            raise InternalError("map numerator and denominator share a factor")
        ginv = Poly(
            [Frac(polyq([B.coeff(i), A.coeff(i)])) for i in range(d)]
        )
        n_lift = Poly([_frac_const(c) for c in wronskian(phi).c])
        weight = alg.mul(
            alg.pow(alg.reduce(n_lift), m - 1), alg.pow(ginv, 2 * (m - 1))
        )

    columns = []
    u = weight
    for j in range(k):
        t = Frac._coerce(alg.trace(u))
        if not t.is_polynomial or t.num.degree > 2 * m - 2:
            raise NonPolynomialImage(
                f"basis image {j} is not a w-polynomial of degree <= {2*m-2}"
            )
        columns.append([Rat(t.num.coeff(i)) for i in range(k)])
        if j < k - 1:
            u = alg.shift_reduce(u)
    rows = [[columns[j][i] for j in range(k)] for i in range(k)]
    return TransferMatrix(m, phi, Mat(rows))


class RationalFunctionT:
    """A zeta value as numerator/denominator in t, reduced, den(0) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        if den.is_zero or not den.coeff(0):
            raise ValueError("denominator must have nonzero constant term")
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        scale = 1 / den.coeff(0)
        if scale != 1:
            num, den = num.scale(scale), den.scale(scale)
        self.num = num
        self.den = den

    def __eq__(self, other):
        if isinstance(other, RationalFunctionT):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunctionT({list(self.num.c)!r}, {list(self.den.c)!r})"


def _one_minus_scaled_t(a):
    return polyq([1]) - polyq([0, a])


def lzeta_closed(phi, m):
    """Closed form of the m-th trace-sum zeta factor.

    For m >= 1 this is the polynomial det(1 - t Phi_m).  For m = 0 the
    operator spaces degenerate: the identity action on the one-dimensional
    section space contributes 1/(1-t) and the weight-1 factor contributes
    1/(1-dt), giving 1/((1-t)(1-d t)).
    """
    if phi.d < 2:
        raise DegreeTooLow("zeta requires degree >= 2")
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        den = _one_minus_scaled_t(1) * _one_minus_scaled_t(phi.d)
        return RationalFunctionT(polyq([1]), den)
    return RationalFunctionT(charpoly_det(transfer_matrix(phi, m).mat), polyq([1]))


def zeta_closed(phi, m):
    """Closed-form multiplier zeta: det(1 - t Phi_m)/det(1 - t Phi_{m+1})
    for m >= 1, and 1/((1-t)(1-d t)) for m = 0."""
    if phi.d < 2:
        raise DegreeTooLow("zeta requires degree >= 2")
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        den = _one_minus_scaled_t(1) * _one_minus_scaled_t(phi.d)
        return RationalFunctionT(polyq([1]), den)
    num = charpoly_det(transfer_matrix(phi, m).mat)
    den = charpoly_det(transfer_matrix(phi, m + 1).mat)
    return RationalFunctionT(num, den)
