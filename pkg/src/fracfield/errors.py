"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class PoleError(DomainError):
    """Evaluation requested at a pole (e.g. Gamma at a non-positive integer)."""


class ConvergenceError(ArithmeticError):
    """A series or quadrature did not reach its tolerance within its budget."""


class NonIntegrableError(DomainError):
    """The integrand of a singular integral fails the integrability check."""


class SmoothnessError(DomainError):
    """The caller-declared smoothness of a function is insufficient."""


class OnWireError(DomainError):
    """The observation point lies on (or numerically at) a current filament.

    ``turn`` holds the index of the offending turn for solenoids, else None.
    """

    def __init__(self, message, turn=None):
        super().__init__(message)
        self.turn = turn
