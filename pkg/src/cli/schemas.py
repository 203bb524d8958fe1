from pathlib import Path
from typing import Literal, Self

from pydantic import BaseModel, ConfigDict, Field, model_validator

Command = Literal[
    "integral", "table", "three-centre", "error-scan", "point-scan", "transformed-scan"
]
OutputFormat = Literal["csv", "json", "text"]


class RunSpec(BaseModel):
    """One command-line invocation. Nothing here is random."""

    model_config = ConfigDict(frozen=True)

    command: Command
    params_file: Path
    transform: Literal["phi1", "phi2", "both"] = "both"
    eps0: float = Field(default=1e-15, ge=1e-16, le=1e-6)
    K: float = Field(default=6.0, gt=0.0)
    max_attempts: int = Field(default=4, ge=1)
    output: OutputFormat = "csv"
    out: Path | None = None
    tolerance: float = Field(default=1e-12, gt=0.0)
    m_min: float | None = Field(default=None, gt=0.0)
    m_max: float | None = Field(default=None, gt=0.0)
    m_num: int = Field(default=28, ge=2)
    start_upper: int = Field(default=7, ge=0)
    t_min: float = -4.0
    t_max: float = 4.0
    t_num: int = Field(default=161, ge=2)
    order: int = Field(default=48, ge=16)
    refine: bool = True
    workers: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def validate_t_range(self) -> Self:
        if self.t_min >= self.t_max:
            raise ValueError(f"need t_min < t_max, got {self.t_min}..{self.t_max}")
        return self

    @property
    def transforms(self) -> list[Literal["phi1", "phi2"]]:
        if self.transform == "both":
            return ["phi1", "phi2"]
        return [self.transform]
