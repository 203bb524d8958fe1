from typing import Self

from pydantic import BaseModel, ConfigDict, Field, model_validator


class OracleConfig(BaseModel):
    """Accuracy and budget of the reference integrator."""

    model_config = ConfigDict(frozen=True)

    rel_tol: float = 1e-14
    max_panels: int = Field(default=4000, ge=64)
    tail_periods: int = Field(default=16, ge=1)
    max_half_periods: int = Field(default=200_000, ge=1)

    @model_validator(mode="after")
    def validate_tolerance(self) -> Self:
        if not 0.0 < self.rel_tol < 1e-6:
            raise ValueError(f"rel_tol must lie in (0, 1e-6), got {self.rel_tol!r}")
        return self


class OracleResult(BaseModel):
    """A reference value and how it was obtained."""

    value: float
    half_periods: int
    accelerated: bool
