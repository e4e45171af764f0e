"""Exception types raised across the package."""


class InnerFourierError(Exception):
    """Base class for all library errors."""


class DomainError(InnerFourierError, ValueError):
    pass


class SingularPointError(InnerFourierError, ValueError):
    pass


class QuadratureError(InnerFourierError, ArithmeticError):
    """An (improper) integral failed to converge to the requested tolerance."""


class DegenerateSequenceError(InnerFourierError, ValueError):
    pass


class TruncationError(InnerFourierError, ArithmeticError):
    """The power series cannot be truncated below the tail tolerance.

    ``bound`` carries the smallest tail bound that was achievable.
    """

    def __init__(self, message, bound):
        super().__init__(message)
        self.bound = bound


class GrowthGateError(InnerFourierError):
    """A sequence failed the sub-exponential gate required before reconstruction."""

    def __init__(self, message, rate):
        super().__init__(message)
        self.rate = rate


class ParityError(InnerFourierError, ValueError):
    pass


class ExclusionError(InnerFourierError, ValueError):
    pass
