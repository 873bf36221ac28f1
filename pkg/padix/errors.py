"""
Error kinds raised by the :code:`padix` library.

Every error carries a human-readable message; commands convert them into usage errors or marker rows.
"""


class PadixError(Exception):
    """Base class for all library errors."""


class UnsupportedPrime(PadixError):
    pass


class DivisionByZeroPrecision(PadixError):
    pass


class NotAUnit(PadixError):
    pass


class OutsideLogDomain(PadixError):
    pass


class OutsideExpDomain(PadixError):
    pass


class LevelError(PadixError):
    pass


class InsufficientTruncation(PadixError):
    pass


class NotIntegral(PadixError):
    pass


class InvalidCharacter(PadixError):
    pass


class NoAdmissibleN(PadixError):
    pass


class NotAdmissible(PadixError):
    pass


class NotPsiZero(PadixError):
    pass


class EigenConditionViolated(PadixError):
    pass


class InvalidEigenvalue(PadixError):
    pass


class InvalidEpsilon(PadixError):
    pass


class NotLocallyAnalytic(PadixError):
    pass


class InsufficientPrecision(PadixError):
    pass


class ConfigError(PadixError):
    pass
