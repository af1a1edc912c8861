"""Exception types shared across the package."""


class ConvergenceError(RuntimeError):
    """An iterative method or a series truncation failed to converge."""
