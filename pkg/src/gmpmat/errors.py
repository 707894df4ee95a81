"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input violates a precondition (invalid set, pole evaluation, ...)."""


class ConvergenceError(RuntimeError):
    """An iterative solver ran out of iterations.

    Carries the last residual norm so callers can report it.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual
