"""Exception hierarchy shared by every module."""


class LHBoundError(Exception):
    """Base class for all library errors."""


class LengthMismatch(LHBoundError, ValueError):
    pass


class ZeroVector(LHBoundError, ValueError):
    pass


class RankDeficient(LHBoundError, ValueError):
    pass


class DegenerateCode(LHBoundError, ValueError):
    pass


class InvalidParameters(LHBoundError, ValueError):
    pass


class OutOfRange(LHBoundError, ValueError):
    pass


class ParityMismatch(LHBoundError, ValueError):
    pass


class OddWeight(LHBoundError, ValueError):
    pass


class ConditionNotMet(LHBoundError):
    pass


class TooLarge(LHBoundError):
    """A resource ceiling refused the computation.

    ``dimension`` names the ceiling that tripped (``"k"``, ``"n-k"``,
    ``"n"``, ``"C(n,w)"``, ...), ``value`` and ``limit`` are the offending
    size and the configured maximum.
    """

    def __init__(self, dimension: str, value, limit):
        self.dimension = dimension
        self.value = value
        self.limit = limit
        super().__init__(f"{dimension}={value} exceeds ceiling {limit}")
