"""Exception hierarchy.

Everything raised for bad input derives from :class:`ValidationError`, which the
CLI maps to exit code 1.
"""


class ValidationError(ValueError):
    """Input rejected by a precondition check."""


class SocketMismatch(ValidationError):
    pass


class ZeroDegree(ValidationError):
    pass


class DegenerateSigma(ValidationError):
    pass


class BetaOutOfRange(ValidationError):
    pass


class TooLarge(ValidationError):
    pass


class Unbalanced(ValidationError):
    pass


class BadRange(ValidationError):
    pass


class ConditionViolated(ValidationError):
    """Raised when a bisection size ``a`` is outside ``0 <= a < sigma*n``."""


class EtaOutOfRange(ValidationError):
    pass
