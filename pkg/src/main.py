from collections.abc import AsyncIterator
from contextlib import asynccontextmanager

from fastapi import FastAPI
from fastapi.routing import APIRoute

from src.assembly.router import router as three_centre_router
from src.core.config import settings
from src.core.exceptions import (
    ConvergenceError,
    DomainError,
    convergence_exception_handler,
    domain_exception_handler,
    global_exception_handler,
)
from src.core.logging_config import setup_logging
from src.dequad.router import router as integrals_router

# Setup logging
logger = setup_logging(log_level=settings.LOG_LEVEL)


def custom_generate_unique_id(route: APIRoute) -> str:
    if route.tags:
        return f"{route.tags[0]}-{route.name}"
    return route.name


@asynccontextmanager
async def lifespan(_app: FastAPI) -> AsyncIterator[None]:
    logger.info("Application startup")
    logger.info("Environment: %s", settings.ENVIRONMENT)
    logger.info(
        "DE defaults: eps0=%.1e, K=%s, max_attempts=%d",
        settings.DE_EPS0,
        settings.DE_K,
        settings.DE_MAX_ATTEMPTS,
    )
    yield
    logger.info("Application shutdown")


app = FastAPI(
    title=settings.PROJECT_NAME,
    openapi_url=f"{settings.API_V1_STR}/openapi.json",
    generate_unique_id_function=custom_generate_unique_id,
    lifespan=lifespan,
)

app.add_exception_handler(DomainError, domain_exception_handler)
app.add_exception_handler(ConvergenceError, convergence_exception_handler)
app.add_exception_handler(Exception, global_exception_handler)

app.include_router(integrals_router, prefix=settings.API_V1_STR)
app.include_router(three_centre_router, prefix=settings.API_V1_STR)


@app.get("/health")
async def health_check() -> dict[str, str]:
    """Health check endpoint."""
    logger.debug("Health check endpoint accessed")
    return {"status": "healthy"}
