# Reference integrator exceptions

from src.core.exceptions import ConvergenceError


class OracleAccuracyError(ConvergenceError):
    """Raised when the reference integrator cannot reach its tolerance."""

    pass
