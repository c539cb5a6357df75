"""Exception types shared across the package."""


class LcrossError(Exception):
    """Base class for all package-specific errors."""


class InvalidDistribution(LcrossError):
    """A distribution literal or file is malformed or not a probability law."""


class InvalidInterval(LcrossError):
    """An interval query has incompatible or reversed endpoints."""


class InvalidThreshold(LcrossError):
    """A threshold (or threshold law) is outside its admissible range."""


class InvalidKernel(LcrossError):
    """A kernel table is not square, not symmetric, or does not match the support."""


class NotApplicable(LcrossError):
    """The requested quantity is undefined for the given configuration."""


class ResourceLimit(LcrossError):
    """An exact computation would exceed the configured support or size cap."""


class TheoremViolation(LcrossError):
    """An internal invariant that is mathematically guaranteed failed.

    Raised only when a computation contradicts a proved statement, which
    signals an implementation bug rather than bad input.
    """
