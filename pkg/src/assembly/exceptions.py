# Three-centre assembly exceptions

from src.core.exceptions import DegenerateGeometryError, IntegralError


class DegenerateDirectionError(DegenerateGeometryError):
    """Raised when direction angles are requested for the zero vector."""

    pass


class IndexRangeError(IntegralError):
    """Raised when a summation index tuple violates its parity or bounds."""

    pass
