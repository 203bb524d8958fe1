from __future__ import annotations

import math
from typing import Literal, Self

from pydantic import BaseModel, ConfigDict, Field, model_validator

Vector3 = tuple[float, float, float]


class ThreeCentreParams(BaseModel):
    """
    Quantum numbers, exponents and geometry of a three-centre nuclear attraction
    integral over B functions.

    R1 points from the first orbital's centre to the nucleus, R2 from the first
    orbital's centre to the second's.
    """

    model_config = ConfigDict(frozen=True)

    n1: int = Field(ge=1)
    l1: int = Field(ge=0)
    m1: int
    zeta1: float = Field(gt=0.0)
    n2: int = Field(ge=1)
    l2: int = Field(ge=0)
    m2: int
    zeta2: float = Field(gt=0.0)
    R1: Vector3
    R2: Vector3

    @model_validator(mode="after")
    def validate_quantum_numbers(self) -> Self:
        if abs(self.m1) > self.l1:
            raise ValueError(f"|m1| must not exceed l1, got l1={self.l1}, m1={self.m1}")
        if abs(self.m2) > self.l2:
            raise ValueError(f"|m2| must not exceed l2, got l2={self.l2}, m2={self.m2}")
        if not all(math.isfinite(c) for c in (*self.R1, *self.R2)):
            raise ValueError("R1 and R2 must have finite components")
        if self.R2_norm == 0.0:
            raise ValueError("R2 must be a nonzero vector")
        return self

    @property
    def R1_norm(self) -> float:
        return math.hypot(*self.R1)

    @property
    def R2_norm(self) -> float:
        return math.hypot(*self.R2)


class SQuadConfig(BaseModel):
    """Gauss-Legendre rule for the outer integral over s in (0, 1)."""

    model_config = ConfigDict(frozen=True)

    order: int = Field(default=48, ge=16)
    refine: bool = True
    tolerance: float = Field(default=1e-10, gt=0.0)


class SummandIndices(BaseModel):
    """One index tuple (l1', m1', l2', m2', l, lam, j) of the nested sums."""

    model_config = ConfigDict(frozen=True)

    l1p: int = Field(ge=0)
    m1p: int
    l2p: int = Field(ge=0)
    m2p: int
    l: int = Field(ge=0)
    lam: int = Field(ge=0)
    j: int = Field(ge=0)


class ThreeCentreResult(BaseModel):
    real: float
    imag: float
    n_terms: int
    n_inner: int
    order: int
    s_rel_diff: float | None = None
    accuracy_warning: bool = False

    @property
    def value(self) -> complex:
        return complex(self.real, self.imag)


class ThreeCentreRequest(BaseModel):
    params: ThreeCentreParams
    transform: Literal["phi1", "phi2"] = "phi2"
    order: int | None = Field(default=None, ge=16, le=512)
    refine: bool | None = None
