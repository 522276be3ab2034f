"""Exception hierarchy shared by all modules."""


class CoarsePathError(Exception):
    """Base class for every error raised by this package."""


class ParseError(CoarsePathError):
    pass


class NotConnected(CoarsePathError):
    pass


class NotSimple(CoarsePathError):
    pass


class InvalidK(CoarsePathError):
    pass


class InvalidDecomposition(CoarsePathError):
    pass


class NotAPermutation(CoarsePathError):
    pass


class TooLarge(CoarsePathError):
    """An exact oracle was asked to run above its size cap."""


class DistortionExceeded(CoarsePathError):
    pass


class QiInvalid(CoarsePathError):
    pass


class NotAPath(CoarsePathError):
    pass


class NotShortestPath(CoarsePathError):
    pass


class NotDominating(CoarsePathError):
    pass


class TooManyPaths(CoarsePathError):
    pass


class PreconditionFailed(CoarsePathError):
    pass


class ExtractionFailed(CoarsePathError):
    """Fat-minor extraction produced no witness that passes verification."""
