"""Exception hierarchy shared by every module."""


class SMFError(Exception):
    """Base class for all library errors."""


class InvalidParameterError(SMFError, ValueError):
    pass


class PlacementError(SMFError):
    """No scale weight places the mother wavelet against Nyquist."""


class FrameDeficientError(SMFError):
    """The Littlewood-Paley sum falls below the frame floor somewhere."""

    def __init__(self, message, band=None):
        super().__init__(message)
        self.band = band


class ShapeError(SMFError, ValueError):
    pass


class StateError(SMFError):
    pass


class FormatError(SMFError):
    """Malformed or unsupported SMFT / WAV payload."""


class UndefinedMetricError(SMFError, ValueError):
    pass
