"""Exception types. The CLI reports ``type(err).__name__`` for math-domain failures."""


class HodgeError(Exception):
    """Base class for every math-domain failure raised by this package."""


class AmbientMismatch(HodgeError):
    pass


class NotInCompactDual(HodgeError):
    pass


class NotInPeriodDomain(HodgeError):
    pass


class NotNilpotent(HodgeError):
    pass


class NotInfinitesimallySymplectic(HodgeError):
    pass


class NotDirectSum(HodgeError):
    pass


class IndexTooHigh(HodgeError):
    pass


class SolveFailed(HodgeError):
    pass


class NotRSplit(HodgeError):
    pass


class NoTriple(HodgeError):
    pass


class CheckFailed(HodgeError):
    pass


class NotAnOrbit(HodgeError):
    pass


class WrongParity(HodgeError):
    pass


class NotSymplectic(HodgeError):
    pass


class BadParam(HodgeError):
    pass


class ScheduleViolation(HodgeError):
    pass


class SchemaError(ValueError):
    """Malformed JSON input (CLI exit code 2, not a math-domain error)."""
