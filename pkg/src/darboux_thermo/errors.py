"""Exception types raised by the library."""


class DarbouxThermoError(Exception):
    """Base class for all library errors."""


class SingularityError(DarbouxThermoError, ArithmeticError):
    """Evaluation point lies on (or within the guard of) a singular locus.

    Raised when ``I0(x) + lambda`` vanishes, or when a closed form is
    evaluated at its pole (e.g. the thermal action at ``x = 0``).
    """

    def __init__(self, message, x=None, lam=None):
        super().__init__(message)
        self.x = x
        self.lam = lam


class DomainError(SingularityError):
    """Evaluation point is a zero of the seed zero mode, where ``w'/w`` diverges."""


class RangeError(DarbouxThermoError, OverflowError):
    """Result is not representable as a finite double."""


class ConvergenceError(DarbouxThermoError, ArithmeticError):
    """Adaptive quadrature exhausted its subdivision budget."""

    def __init__(self, message, estimate, error):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class EvaluationError(DarbouxThermoError, ArithmeticError):
    """A sampled function value was not finite."""


class PreconditionError(DarbouxThermoError, ValueError):
    """Caller-supplied arguments violate an operation's precondition."""


class DegenerateCycleError(DarbouxThermoError, ArithmeticError):
    """The entropy ratio in the Carnot formula has a vanishing denominator."""
