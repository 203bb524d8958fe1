# Integrand module exceptions

from src.core.exceptions import DegenerateGeometryError, DomainError


class DegenerateFrequencyError(DegenerateGeometryError):
    """Raised when v = |(1-s) R2 - R1| vanishes and sin(vx) is identically zero."""

    pass


class IntegrandDomainError(DomainError):
    """Raised when the S-transformed integrand is evaluated at x <= 0."""

    pass
