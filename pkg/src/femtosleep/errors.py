"""Exception hierarchy.

Every error raised for bad input derives from ``ValueError`` so callers that
do not care about the distinction can catch one type.
"""


class FemtoSleepError(ValueError):
    """Base class for all input and model-range errors."""


class InvalidParameterError(FemtoSleepError):
    pass


class OutOfCoverageError(FemtoSleepError):
    """A point lies outside the macrocell disc."""


class OutOfModelRangeError(FemtoSleepError):
    """A distance falls below the minimum a path-loss model accepts."""


class DegenerateLayoutError(FemtoSleepError):
    """All factor-weighted probability mass is zero."""


class NoServiceError(FemtoSleepError):
    """No transmitter can serve the user (BS off and user outside FAP coverage)."""


class InvalidScheduleError(FemtoSleepError):
    pass
