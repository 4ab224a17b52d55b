"""Exception types shared across the package."""


class NumericalError(ArithmeticError):
    """A computation produced a result that cannot be trusted."""


class ConvergenceError(NumericalError):
    """An iterative or adaptive procedure failed to reach its tolerance."""


class EvaluationError(NumericalError):
    """A user-supplied integrand returned a non-finite value."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class ClampWarning(RuntimeWarning):
    """A slightly negative information quantity was clamped to zero."""
