from __future__ import annotations

from fractions import Fraction
from typing import Self

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class HalfOddOrder(BaseModel):
    """
    Half-odd-integer order ν = n + 1/2 of a reduced Bessel function.

    Stores 2ν so the order is exact; negative orders are allowed.
    """

    model_config = ConfigDict(frozen=True)

    twice_value: int

    @field_validator("twice_value")
    @classmethod
    def validate_odd(cls, v: int) -> int:
        if v % 2 == 0:
            raise ValueError(f"2*nu must be odd, got {v}")
        return v

    @classmethod
    def parse(cls, text: str) -> HalfOddOrder:
        """Parse an order written as a fraction ("9/2", "-1/2") or decimal ("4.5")."""
        try:
            value = Fraction(text.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"nu must be a half-odd fraction such as 9/2, got {text!r}")
        twice = value * 2
        if twice.denominator != 1:
            raise ValueError(f"nu must be a half-odd fraction such as 9/2, got {text!r}")
        return cls(twice_value=int(twice))

    @classmethod
    def from_n(cls, n: int) -> HalfOddOrder:
        """Order n + 1/2."""
        return cls(twice_value=2 * n + 1)

    @property
    def value(self) -> float:
        return self.twice_value / 2

    @property
    def is_negative(self) -> bool:
        return self.twice_value < 0

    @property
    def n(self) -> int:
        """Integer part n of |ν| = n + 1/2."""
        return (abs(self.twice_value) - 1) // 2

    def lowered(self, steps: int = 1) -> HalfOddOrder:
        """Order ν - steps."""
        return HalfOddOrder(twice_value=self.twice_value - 2 * steps)

    def __str__(self) -> str:
        return f"{self.twice_value}/2"


class GauntKey(BaseModel):
    """Angular momentum labels of <l1 m1|l2 m2|l3 m3>."""

    model_config = ConfigDict(frozen=True)

    l1: int = Field(ge=0)
    m1: int
    l2: int = Field(ge=0)
    m2: int
    l3: int = Field(ge=0)
    m3: int

    @model_validator(mode="after")
    def validate_projections(self) -> Self:
        for label, (el, m) in {
            "m1": (self.l1, self.m1),
            "m2": (self.l2, self.m2),
            "m3": (self.l3, self.m3),
        }.items():
            if abs(m) > el:
                raise ValueError(f"|{label}| must not exceed its l, got l={el}, m={m}")
        return self

    def as_tuple(self) -> tuple[int, int, int, int, int, int]:
        return (self.l1, self.m1, self.l2, self.m2, self.l3, self.m3)
