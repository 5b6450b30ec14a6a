class MagetoError(Exception):
    """Base class for all errors raised by this package."""


class SeedTooLong(MagetoError, ValueError):
    pass


class PatternLocked(MagetoError):
    """A broken extraction pattern was requested without the analysis unlock."""


class NotMixed(MagetoError):
    pass


class InsufficientData(MagetoError, ValueError):
    pass


class DataTooShort(MagetoError, ValueError):
    pass
