"""Exception hierarchy for the qwentropy package.

Every error raised deliberately by this package derives from WalkError, so
callers (CLI, service) can map failures to exit codes / HTTP statuses by
catching a small number of bases:

* input / domain problems  -> InputError
* numeric non-convergence  -> NumericError
* mathematically divergent quantities -> DivergentIntegral
"""

from __future__ import annotations


class WalkError(Exception):
    """Base class for all package errors."""


class InputError(WalkError, ValueError):
    """Invalid argument: malformed, out of domain, or inconsistent."""


class NumericError(WalkError, ArithmeticError):
    """A numeric procedure failed to reach its accuracy contract."""


class NotNormalized(InputError):
    """A vector or weight set that must have unit norm / unit sum does not."""


class BadDeterminant(InputError):
    """Coin determinant parameter is not on the unit circle."""


class UnknownName(InputError):
    """A named coin or state was requested that this package does not define."""


class BadParameter(InputError):
    """A scalar parameter is malformed or outside its allowed range."""


class CoinDegenerate(InputError):
    """A coin entry is exactly zero, so the closed forms / limit density do not apply."""


class BadOrder(InputError):
    """Entropy order alpha is outside the domain of the requested operation."""


class VariantDomain(InputError):
    """The requested conditional-entropy variant is undefined at this order."""


class DomainError(InputError):
    """An index or argument is outside the mathematically meaningful range."""


class PoleInC(InputError):
    """The hypergeometric lower parameter hits a non-positive integer pole."""


class DivergentScale(NumericError):
    """A scaled-arithmetic exponent left the representable range."""


class DivergentIntegral(WalkError, ValueError):
    """The requested integral diverges (it is not a numerical failure)."""


class NonConvergedQuadrature(NumericError):
    """Quadrature refinement stalled above the accuracy target."""
