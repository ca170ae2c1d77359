"""Problem data model: bit strings, schedules, well profiles and instances.

All models are frozen pydantic models; they are safe to share across threads
and worker processes.
"""

from __future__ import annotations

from enum import StrEnum
from typing import Annotated, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from wells.errors import ValidationError

_SOURCE = "wells.types"


class BitString(BaseModel):
    """A fixed-length string of bits; bits[0] is the most significant bit."""

    model_config = ConfigDict(frozen=True)

    bits: tuple[int, ...]

    @field_validator("bits")
    @classmethod
    def bits_must_be_binary(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        if not v:
            raise ValueError("bit string must not be empty")
        if any(b not in (0, 1) for b in v):
            raise ValueError("bits must be 0 or 1")
        return v

    @classmethod
    def from_str(cls, text: str) -> BitString:
        """Parse a literal such as ``"0101"``."""
        if not text or any(ch not in "01" for ch in text):
            raise ValidationError(
                f"invalid bit string {text!r}",
                source_module=_SOURCE,
                field_name="center",
                expected="string of 0/1 characters",
                received=text,
                validation_rule="binary_literal",
            )
        return cls(bits=tuple(int(ch) for ch in text))

    @classmethod
    def zeros(cls, n: int) -> BitString:
        return cls(bits=(0,) * n)

    @property
    def n(self) -> int:
        return len(self.bits)

    @property
    def weight(self) -> int:
        """Hamming weight (number of ones)."""
        return sum(self.bits)

    def to_int(self) -> int:
        value = 0
        for b in self.bits:
            value = (value << 1) | b
        return value

    def to_array(self) -> np.ndarray:
        return np.asarray(self.bits, dtype=np.int8)

    def xor(self, other: BitString) -> BitString:
        if other.n != self.n:
            raise ValidationError(
                "bit strings have different lengths",
                source_module=_SOURCE,
                field_name="bits",
                expected=str(self.n),
                received=str(other.n),
                validation_rule="equal_length",
            )
        return BitString(bits=tuple(a ^ b for a, b in zip(self.bits, other.bits, strict=True)))

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


class ScheduleTag(StrEnum):
    """Adiabatic schedule shapes: up(s)=s, down(s)=1-s, const(s)=1."""

    RAMP_UP = "up"
    RAMP_DOWN = "down"
    CONSTANT = "const"


class StepWell(BaseModel):
    """Constant potential ``depth`` inside a Hamming ball of ``radius``, zero outside."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["step"] = "step"
    depth: float = Field(lt=0.0, description="Potential inside the ball; attractive wells only")
    radius: int = Field(ge=0, description="Hamming radius of the ball")


class TabulatedWell(BaseModel):
    """Radial potential V(r) tabulated for r = 0..n."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["table"] = "table"
    values: tuple[float, ...]


PotentialProfile = Annotated[StepWell | TabulatedWell, Field(discriminator="kind")]


class WellSpec(BaseModel):
    """One Hamming-symmetric well: center, radial profile and schedule b_k(s)."""

    model_config = ConfigDict(frozen=True)

    center: BitString
    profile: PotentialProfile
    schedule: ScheduleTag = ScheduleTag.RAMP_UP


class ProblemInstance(BaseModel):
    """n qubits, K wells and the driver schedule a(s)."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    wells: tuple[WellSpec, ...] = ()
    driver_schedule: ScheduleTag = ScheduleTag.RAMP_DOWN

    @model_validator(mode="after")
    def check_wells(self) -> ProblemInstance:
        seen: set[tuple[int, ...]] = set()
        for idx, well in enumerate(self.wells):
            if well.center.n != self.n:
                raise ValidationError(
                    f"well {idx}: center length {well.center.n} != n={self.n}",
                    source_module=_SOURCE,
                    field_name="center",
                    expected=str(self.n),
                    received=str(well.center.n),
                    validation_rule="center_length",
                )
            match well.profile:
                case TabulatedWell(values=values) if len(values) != self.n + 1:
                    raise ValidationError(
                        f"well {idx}: tabulated profile has {len(values)} values, "
                        f"expected n+1={self.n + 1}",
                        source_module=_SOURCE,
                        field_name="table",
                        expected=str(self.n + 1),
                        received=str(len(values)),
                        validation_rule="table_length",
                    )
                case StepWell(radius=radius) if radius > self.n:
                    raise ValidationError(
                        f"well {idx}: radius {radius} exceeds n={self.n}",
                        source_module=_SOURCE,
                        field_name="radius",
                        expected=f"<= {self.n}",
                        received=str(radius),
                        validation_rule="radius_range",
                    )
            if well.center.bits in seen:
                raise ValidationError(
                    "duplicate well centers",
                    source_module=_SOURCE,
                    field_name="center",
                    received=str(well.center),
                    validation_rule="distinct_centers",
                )
            seen.add(well.center.bits)
        return self

    @property
    def K(self) -> int:  # noqa: N802
        return len(self.wells)

    @property
    def centers(self) -> list[BitString]:
        return [w.center for w in self.wells]


class SolveMethod(StrEnum):
    """Spectrum method selected by a configuration."""

    BRUTE = "brute"
    EXACT = "exact"
    TB0 = "tb0"
    TB1 = "tb1"


class SGrid(BaseModel):
    """Evenly spaced s values with inclusive endpoints."""

    model_config = ConfigDict(frozen=True)

    start: float = Field(default=0.0, ge=0.0, le=1.0)
    stop: float = Field(default=1.0, ge=0.0, le=1.0)
    count: int = Field(default=17, ge=1)

    def values(self) -> list[float]:
        if self.count == 1:
            return [self.start]
        return [float(v) for v in np.linspace(self.start, self.stop, self.count)]


class SolveConfig(BaseModel):
    """A parsed configuration document: instance plus sweep settings."""

    model_config = ConfigDict(frozen=True)

    instance: ProblemInstance
    s_grid: SGrid = Field(default_factory=SGrid)
    method: SolveMethod = SolveMethod.EXACT
    epsilon: float = Field(default=0.1, gt=0.0, lt=1.0)
