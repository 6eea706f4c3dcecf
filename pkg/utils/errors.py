class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class InsufficientDataError(ValueError):
    """Too few usable points for a fit."""


class UsageError(ValueError):
    """Invalid command-line request."""


class QuadratureConvergenceError(RuntimeError):
    """Adaptive integration ran out of budget before reaching tolerance.

    The best estimate found so far is kept so callers can still report it.
    """

    def __init__(self, message: str, best_estimate: float, error_estimate: float):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate
