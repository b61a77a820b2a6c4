"""Exception types shared across the library."""


class ArcmapError(Exception):
    """Base class for all library errors."""


class DegreeMismatch(ArcmapError):
    pass


class MalformedCycle(ArcmapError):
    pass


class PointOutOfRange(ArcmapError):
    pass


class RepeatedPoint(ArcmapError):
    pass


class GateExceeded(ArcmapError):
    """An operation would exceed a configured resource gate.

    Gates are explicit limits; nothing is ever silently truncated.
    """


class NotSubgroup(ArcmapError):
    pass


class NotSelfPaired(ArcmapError):
    pass


class NotPrimePower(ArcmapError):
    pass


class NotPrime(ArcmapError):
    pass


class SingularMatrix(ArcmapError):
    pass


class BadParams(ArcmapError):
    pass


class BadCase(ArcmapError):
    pass


class UnknownSpec(ArcmapError):
    pass


class LimitExceeded(ArcmapError):
    pass
