from __future__ import annotations

import math
from typing import Self

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.specfun.schemas import HalfOddOrder


class IntegralParams(BaseModel):
    """
    The nine scalars of the semi-infinite spherical Bessel integral I(s).

    `frequency`, when given, is the norm of the 3-vector (1-s) R2 - R1 and
    replaces the collinear value |(1-s) R2 - R1| built from the scalar lengths.
    """

    model_config = ConfigDict(frozen=True)

    s: float
    nu: HalfOddOrder
    n_gamma: int
    n_x: int = Field(ge=0)
    lam: int = Field(ge=0)
    R1: float = Field(ge=0.0)
    zeta1: float = Field(gt=0.0)
    R2: float = Field(gt=0.0)
    zeta2: float = Field(gt=0.0)
    frequency: float | None = Field(default=None, ge=0.0)

    @field_validator("s")
    @classmethod
    def validate_s(cls, v: float) -> float:
        if not 0.0 < v < 1.0:
            raise ValueError("s must be in (0,1)")
        return v

    @field_validator("nu", mode="before")
    @classmethod
    def parse_nu(cls, v: object) -> object:
        if isinstance(v, str):
            return HalfOddOrder.parse(v)
        if isinstance(v, int | float) and not isinstance(v, bool):
            return HalfOddOrder.parse(str(v))
        return v

    @model_validator(mode="after")
    def validate_finite(self) -> Self:
        for name in ("R1", "zeta1", "R2", "zeta2"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        return self

    @property
    def s_one_minus_s(self) -> float:
        return self.s * (1.0 - self.s)

    def row(self) -> tuple[float | int | str, ...]:
        """Values in table column order (s nu n_gamma n_x lam R1 zeta1 R2 zeta2)."""
        return (
            self.s,
            str(self.nu),
            self.n_gamma,
            self.n_x,
            self.lam,
            self.R1,
            self.zeta1,
            self.R2,
            self.zeta2,
        )


class RadialTerm(BaseModel):
    """One term c * x^a * k^_mu(R2 gamma) / gamma^b of the S-transformed integrand."""

    model_config = ConfigDict(frozen=True)

    coeff: float
    x_power: int
    k_order: HalfOddOrder
    gamma_power: int

    @field_validator("coeff")
    @classmethod
    def validate_coeff(cls, v: float) -> float:
        if not math.isfinite(v) or v == 0.0:
            raise ValueError(f"term coefficient must be finite and nonzero, got {v!r}")
        return v

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.x_power, self.k_order.twice_value, self.gamma_power)


class RadialTermSum(BaseModel):
    """Exact closed-form representation of f(x) as a finite sum of RadialTerms."""

    model_config = ConfigDict(frozen=True)

    terms: tuple[RadialTerm, ...]

    @model_validator(mode="after")
    def validate_unique_keys(self) -> Self:
        keys = [term.key for term in self.terms]
        if len(keys) != len(set(keys)):
            raise ValueError("like terms must be merged before building a RadialTermSum")
        return self

    def __len__(self) -> int:
        return len(self.terms)

    def scaled(self, factor: float) -> RadialTermSum:
        return RadialTermSum(
            terms=tuple(
                term.model_copy(update={"coeff": term.coeff * factor})
                for term in self.terms
            )
        )
