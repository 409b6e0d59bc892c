"""Exception hierarchy shared by every module."""


class IsoquadError(Exception):
    """Base class for all errors raised by the library."""


class ValidationError(IsoquadError, ValueError):
    """An input violates a documented invariant (even prime, zero coefficient, ...)."""


class ParseError(IsoquadError, ValueError):
    pass


class PrecisionExhausted(IsoquadError, ArithmeticError):
    """The answer is not determined at the working precision."""


class NonUnit(IsoquadError, ValueError):
    pass


class ZeroInput(IsoquadError, ValueError):
    pass


class UnsupportedPlace(IsoquadError):
    pass


class Unsupported(IsoquadError):
    pass


class NonNormalCrossings(IsoquadError):
    """A coefficient is not a monomial times a unit at a closed point."""

    def __init__(self, message, offending=None):
        super().__init__(message)
        self.offending = offending


class AtomFactorizationFailure(IsoquadError):
    pass


class DegenerateEntry(IsoquadError, ValueError):
    pass


class BudgetExceeded(IsoquadError):
    pass


class Undetermined(IsoquadError):
    pass


class UnsupportedEntry(IsoquadError):
    pass


class InvalidPoint(IsoquadError, ValueError):
    pass
