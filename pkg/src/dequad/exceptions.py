# Double exponential quadrature exceptions

from src.core.exceptions import ConvergenceError, IntegralError


class QuadratureEvaluationError(IntegralError):
    """Raised when the integrand returns a non-finite value at a collocation point."""

    def __init__(self, index: int, x: float) -> None:
        super().__init__(f"non-finite integrand at collocation index n={index} (x={x!r})")
        self.index = index
        self.x = x


class TruncationError(ConvergenceError):
    """Raised when the trapezoidal terms do not become negligible before max_index."""

    pass
