from __future__ import annotations

import math
from typing import Any, Literal, Self

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.dequad.constants import A_PHI1, A_PHI2, DEFAULT_K
from src.sintegrand.schemas import IntegralParams

TransformKind = Literal["phi1", "phi2"]


class DEConfig(BaseModel):
    """
    Configuration of the double exponential integrator.

    `A` defaults to 2 for phi1 and 5 for phi2; `K` is only used by phi1.
    """

    model_config = ConfigDict(frozen=True)

    transform: TransformKind = "phi2"
    K: float = Field(default=DEFAULT_K, gt=0.0)
    eps0: float = Field(default=1e-15, gt=0.0, lt=1.0)
    A: float = Field(default=0.0, ge=0.0)
    max_attempts: int = Field(default=4, ge=1)
    trunc_consecutive: int = Field(default=2, ge=1)
    max_index: int = Field(default=200_000, ge=16)
    block_size: int = Field(default=64, ge=1)

    @model_validator(mode="before")
    @classmethod
    def default_error_constant(cls, data: Any) -> Any:
        if isinstance(data, dict) and not data.get("A"):
            transform = data.get("transform", "phi2")
            data = {**data, "A": A_PHI1 if transform == "phi1" else A_PHI2}
        return data

    @model_validator(mode="after")
    def validate_error_constant(self) -> Self:
        if self.A <= 0.0:
            raise ValueError("A must be positive")
        return self


class Phi2Constants(BaseModel):
    """alpha, beta of the second transformation, 0 <= alpha <= beta <= 1."""

    model_config = ConfigDict(frozen=True)

    alpha: float
    beta: float

    @model_validator(mode="after")
    def validate_ordering(self) -> Self:
        if not 0.0 <= self.alpha <= self.beta <= 1.0:
            raise ValueError(
                f"need 0 <= alpha <= beta <= 1, got alpha={self.alpha}, beta={self.beta}"
            )
        return self


class QuadratureResult(BaseModel):
    """Outcome of one trapezoidal sum or of a full M schedule."""

    model_config = ConfigDict(frozen=True)

    value: float
    M: float
    h: float
    N_minus: int
    N_plus: int
    n_points: int
    n_M: int = 1
    est_rel_error: float = math.inf
    rel_change: float = math.inf
    roundoff: float = 0.0
    transform: TransformKind = "phi2"

    @model_validator(mode="after")
    def validate_bounds(self) -> Self:
        if not self.N_minus <= 0 <= self.N_plus:
            raise ValueError("truncation bounds must satisfy N_minus <= 0 <= N_plus")
        if self.n_points != self.N_plus - self.N_minus + 1:
            raise ValueError("n_points must equal N_plus - N_minus + 1")
        return self

    def converged(self, eps0: float) -> bool:
        """The error estimate is within eps0, or the last change is at rounding level."""
        return self.est_rel_error <= eps0 or self.rel_change <= self.roundoff


class IntegralRequest(BaseModel):
    """Body of an I(s) request; omitted tuning fields fall back to the settings."""

    params: IntegralParams
    transform: TransformKind = "phi2"
    eps0: float | None = Field(default=None, ge=1e-16, le=1e-6)
    K: float | None = Field(default=None, gt=0.0)
    max_attempts: int | None = Field(default=None, ge=1, le=12)


class OracleValue(BaseModel):
    value: float
