"""Exception taxonomy.

DomainError subclasses signal bad input or violated mathematical
preconditions and map to CLI exit code 1.  InternalError subclasses mean an
internal consistency assertion failed (a bug, not a user mistake) and map to
exit code 2.
"""


class DomainError(Exception):
    pass


class NotARationalMap(DomainError):
    """Expression or pair does not define a self-map of degree >= 1."""


class DegreeTooLow(DomainError):
    """Operation requires a map of degree >= 2."""


class NotTransversal(DomainError):
    """A fixed-point polynomial of some iterate is not squarefree."""

    def __init__(self, message, level=None, witness=None):
        super().__init__(message)
        self.level = level
        self.witness = witness


class NotInvertible(DomainError):
    """Element not invertible modulo the given modulus (gcd != 1)."""


class NotFixed(DomainError):
    """Multiplier requested at a point the map does not fix."""


class ParseError(DomainError):
    """Map expression rejected; `position` is a 0-based source offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NonzeroConstantTerm(DomainError):
    """Series exponential requires constant term zero."""


class DenominatorVanishesAtZero(DomainError):
    """Cannot expand a rational function whose denominator vanishes at 0."""


class NoConvergence(DomainError):
    """Numeric root finder hit its iteration cap."""


class InternalError(Exception):
    pass


class DegreeCollapse(InternalError):
    """Composition lost degree; arithmetic is corrupt."""


class NonPolynomialImage(InternalError):
    """Transfer-operator image failed to clear denominators."""
