"""Exception types shared across the package."""


class InvalidSizeError(ValueError):
    """Raised for chain sizes the solvers do not support."""


class ConvergenceError(RuntimeError):
    """Iterative solver failed to converge; carries the best residual seen."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class DegenerateGroundStateError(RuntimeError):
    """Two lowest Ritz values collapsed; the ground state is not unique."""


class ConditioningError(RuntimeError):
    """Effective Gram matrix too ill-conditioned to solve reliably."""
