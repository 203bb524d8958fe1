# Special function module exceptions

from src.core.exceptions import DomainError


class SpecialFunctionDomainError(DomainError):
    """Raised when a special function is evaluated outside its domain."""

    pass
