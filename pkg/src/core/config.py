from __future__ import annotations

from typing import TYPE_CHECKING, Literal, Self

from pydantic import model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

if TYPE_CHECKING:
    from src.assembly.schemas import SQuadConfig
    from src.dequad.schemas import DEConfig, TransformKind
    from src.oracle.schemas import OracleConfig


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file="./.env",
        env_ignore_empty=True,
        extra="ignore",
    )
    PROJECT_NAME: str = "DE Bessel Integrals"
    API_V1_STR: str = "/api/v1"
    ENVIRONMENT: Literal["local", "staging", "production", "testing"] = "local"
    LOG_LEVEL: str = "INFO"

    # Double exponential integrator
    DE_EPS0: float = 1e-15
    DE_K: float = 6.0
    DE_MAX_ATTEMPTS: int = 4
    DE_TRUNC_CONSECUTIVE: int = 2
    DE_MAX_INDEX: int = 200_000
    DE_BLOCK_SIZE: int = 64

    # Reference (oracle) integrator
    ORACLE_REL_TOL: float = 1e-14
    ORACLE_MAX_PANELS: int = 4000
    ORACLE_TAIL_PERIODS: int = 16
    ORACLE_MAX_HALF_PERIODS: int = 200_000

    # Outer s-integral of the three-centre expression
    SQUAD_ORDER: int = 48
    SQUAD_REFINE: bool = True

    WORKERS: int = 1

    @model_validator(mode="after")
    def _check_tolerances(self) -> Self:
        if not 1e-16 <= self.DE_EPS0 <= 1e-6:
            raise ValueError(
                f"DE_EPS0 must lie in [1e-16, 1e-6], got {self.DE_EPS0!r}"
            )
        if not 0.0 < self.ORACLE_REL_TOL < 1e-6:
            raise ValueError(
                f"ORACLE_REL_TOL must lie in (0, 1e-6), got {self.ORACLE_REL_TOL!r}"
            )
        if self.WORKERS < 1:
            raise ValueError("WORKERS must be at least 1")
        return self


settings = Settings()


def default_de_config(
    transform: TransformKind = "phi2",
    *,
    eps0: float | None = None,
    K: float | None = None,
    max_attempts: int | None = None,
) -> DEConfig:
    """Build a DEConfig from the settings, overriding selected fields."""
    from src.dequad.schemas import DEConfig

    return DEConfig(
        transform=transform,
        K=settings.DE_K if K is None else K,
        eps0=settings.DE_EPS0 if eps0 is None else eps0,
        max_attempts=settings.DE_MAX_ATTEMPTS if max_attempts is None else max_attempts,
        trunc_consecutive=settings.DE_TRUNC_CONSECUTIVE,
        max_index=settings.DE_MAX_INDEX,
        block_size=settings.DE_BLOCK_SIZE,
    )


def default_oracle_config() -> OracleConfig:
    from src.oracle.schemas import OracleConfig

    return OracleConfig(
        rel_tol=settings.ORACLE_REL_TOL,
        max_panels=settings.ORACLE_MAX_PANELS,
        tail_periods=settings.ORACLE_TAIL_PERIODS,
        max_half_periods=settings.ORACLE_MAX_HALF_PERIODS,
    )


def default_squad_config() -> SQuadConfig:
    from src.assembly.schemas import SQuadConfig

    return SQuadConfig(order=settings.SQUAD_ORDER, refine=settings.SQUAD_REFINE)
