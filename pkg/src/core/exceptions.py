from fastapi import Request, status
from fastapi.responses import JSONResponse


class IntegralError(Exception):
    """Base class for every error raised by the integral library."""

    pass


class DomainError(IntegralError, ValueError):
    """Raised when an argument lies outside the mathematical domain."""

    pass


class DegenerateGeometryError(DomainError):
    """Raised when the geometry makes a quantity undefined (zero vector, v = 0)."""

    pass


class ConvergenceError(IntegralError):
    """Raised when a requested accuracy could not be reached."""

    def __init__(self, message: str, best_estimate: float | None = None) -> None:
        super().__init__(message)
        self.best_estimate = best_estimate


async def domain_exception_handler(_request: Request, exc: Exception) -> JSONResponse:
    return JSONResponse(
        status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
        content={"detail": str(exc)},
    )


async def convergence_exception_handler(
    _request: Request, exc: Exception
) -> JSONResponse:
    best = exc.best_estimate if isinstance(exc, ConvergenceError) else None
    return JSONResponse(
        status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
        content={"detail": str(exc), "best_estimate": best},
    )


async def global_exception_handler(_request: Request, _exc: Exception) -> JSONResponse:
    return JSONResponse(status_code=500, content={"detail": "Internal server error"})
