"""Exception hierarchy shared by every module."""


class VassError(Exception):
    """Base class for all errors raised by vassgeo."""


class DimensionMismatch(VassError, ValueError):
    pass


class NotAPath(VassError, ValueError):
    pass


class StateMismatch(VassError, ValueError):
    pass


class TooLarge(VassError):
    """An exponential oracle or construction was asked to exceed its cap."""


class SelfLoop(VassError, ValueError):
    pass


class NotSimpleCycle(VassError, ValueError):
    pass


class BadIndices(VassError, ValueError):
    pass


class NotSignReflecting(VassError, ValueError):
    pass


class DependentBasis(VassError, ValueError):
    pass


class NotDegenerate(VassError, ValueError):
    pass


class ZeroDirection(VassError, ValueError):
    pass


class VectorOutsidePlane(VassError, ValueError):
    pass


class NotStrictRotation(VassError, ValueError):
    pass


class PlaneMismatch(VassError, ValueError):
    pass


class NotGeoZero(VassError, ValueError):
    pass


class WrongDimension(VassError, ValueError):
    pass


class WrongGdim(VassError, ValueError):
    pass


class GdimTooHigh(VassError, ValueError):
    pass


class NotZeroRun(VassError, ValueError):
    pass


class NotProper(VassError, ValueError):
    pass


class ParseError(VassError, ValueError):
    """Malformed input document. ``line`` is 1-based (0 when unknown)."""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class UnknownState(ParseError):
    pass


class DuplicateConfigName(ParseError):
    pass


class DocumentDimensionMismatch(ParseError, DimensionMismatch):
    pass
