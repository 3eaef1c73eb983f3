"""Exception hierarchy for dyndiv."""


class DyndivError(ValueError):
    """Base class for all errors raised by the toolkit."""


class NotHermitian(DyndivError):
    pass


class NotPSD(DyndivError):
    pass


class NoConvergence(DyndivError, RuntimeError):
    pass


class DimensionMismatch(DyndivError):
    pass


# channel-level operations report shape problems under this name
ShapeMismatch = DimensionMismatch


class NotIsometry(DyndivError):
    pass


class BadDims(DyndivError):
    pass


class BadEpsilon(DyndivError):
    pass


class BadAlpha(DyndivError):
    pass


class NotRational(DyndivError):
    pass


class ZeroDenominator(DyndivError):
    pass


class EmptyList(DyndivError):
    pass


class NotFullSupport(DyndivError):
    pass


class NotOrthogonal(DyndivError):
    pass


class BadConfig(DyndivError):
    pass


class InvalidChannel(DyndivError):
    """A Choi matrix or Kraus set that is not CPTP within tolerance."""


class InvalidState(DyndivError):
    pass


class ParseError(DyndivError):
    """An input document that does not match the documented JSON formats."""
