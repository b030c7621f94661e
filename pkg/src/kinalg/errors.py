"""Exception hierarchy shared by every kinalg module."""


class KinalgError(Exception):
    """Base class for all library errors."""


class MixedBasis(KinalgError, ValueError):
    """Kinematical and dynamical parameters were combined."""


class UnlikeMonomials(KinalgError, ArithmeticError):
    """Two coefficients with different parameter monomials were added."""


class NotConvertible(KinalgError, ValueError):
    """A monomial has no image under the requested basis conversion."""


class Divergence(KinalgError, ArithmeticError):
    """A structure constant grows without bound in the requested limit."""


class NotSubalgebra(KinalgError, ValueError):
    """The unscaled part of an Inonu-Wigner split does not close."""


class Unrecognized(KinalgError, LookupError):
    """A structure tensor matches none of the twelve kinematical templates."""


class NotInSpan(KinalgError, ArithmeticError):
    """A matrix commutator leaves the span of the generator basis."""


class UnknownFamily(KinalgError, KeyError):
    """Algebra or family label outside the kinematical dodecad."""


class NonPositiveStep(KinalgError, ValueError):
    """Integration step or horizon is not strictly positive."""
