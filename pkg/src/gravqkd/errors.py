"""Exception hierarchy shared across the package.

Every error raised on purpose by this package derives from GravQkdError so
callers can catch one type at the boundary.  Configuration problems and
physics-domain problems are kept apart because they call for different fixes:
a ConfigError means the input text is wrong, a DomainError means the numbers
describe something the model cannot evaluate.
"""


class GravQkdError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(GravQkdError):
    """Bad key, unparsable value, or out-of-range setting in a config source."""


class DomainError(GravQkdError, ValueError):
    """Inputs outside the physical domain of a model function.

    Examples: an emitter below the horizon radius, a covariance matrix that
    is not a valid Gaussian state, a reference key rate of zero when a
    relative change is requested.
    """


class NumericalDomainError(DomainError):
    """A numerical routine left its domain of validity.

    Raised when an intermediate quantity that must be non-negative or >= 1
    comes out meaningfully below that bound, or when a quadrature fails to
    converge.  Tiny negative values from rounding are clamped, not raised.
    """
