"""Exception hierarchy shared by every module."""


class IncongruenceError(Exception):
    """Base class for all errors raised by this package."""


class ModulusMismatchError(IncongruenceError, ValueError):
    pass


class NonUnitError(IncongruenceError, ZeroDivisionError):
    """Raised when inverting a series whose constant term is not a unit."""


class TruncationError(IncongruenceError, ValueError):
    """A series is too shallow for the requested operation."""


class ExhaustedError(IncongruenceError, LookupError):
    """No nonzero coefficient exists in a residue class within the truncation."""


class PreconditionError(IncongruenceError, ValueError):
    """A theorem hypothesis is not satisfied.

    The ``condition`` attribute names the hypothesis that failed, so callers
    (the CLI in particular) can report it verbatim.
    """

    def __init__(self, message: str, condition: str = ""):
        super().__init__(message)
        self.condition = condition


class CacheFormatError(IncongruenceError, ValueError):
    pass
