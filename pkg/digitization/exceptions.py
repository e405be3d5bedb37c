# digitization/exceptions.py


class TruncationError(Exception):
    """Base class for every error raised by the simulation packages."""


class InvalidParameterError(TruncationError, ValueError):
    pass


class GridIndexError(TruncationError, IndexError):
    pass


class ShapeError(TruncationError, ValueError):
    pass


class UnsupportedModelError(TruncationError):
    pass


class NumericalConvergenceError(TruncationError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class EnumerationBudgetError(TruncationError):
    def __init__(self, message, size):
        super().__init__(message)
        self.size = size


class MasslessZeroModeError(InvalidParameterError):
    pass


class DegenerateSeriesError(TruncationError, ValueError):
    pass


class InsufficientDataError(TruncationError):
    def __init__(self, message, stream_id=None):
        super().__init__(message)
        self.stream_id = stream_id
