"""Exception types shared across the library."""


class DomainError(ValueError):
    """Input lies outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Evaluation requested at (or numerically on top of) a pole."""


class IllConditionedError(ValueError):
    """Parameters too close to a degenerate configuration to evaluate reliably."""


class RegimeError(ValueError):
    """Physically meaningful input outside the validated regime (e.g. below threshold)."""


class MatchingError(RuntimeError):
    """Asymptotic wave matching failed (nearly parallel basis waves or bad window)."""


class ConvergenceError(RuntimeError):
    """An iteration or series failed to converge within its budget."""
