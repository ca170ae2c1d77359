"""Schedules and radial potentials of individual wells."""

from __future__ import annotations

import numpy as np

from wells.errors import ValidationError
from wells.types import ScheduleTag, StepWell, TabulatedWell, WellSpec

_SOURCE = "wells.potential"


def _check_s(s: float) -> None:
    if not 0.0 <= s <= 1.0:
        raise ValidationError(
            f"s={s} outside [0, 1]",
            source_module=_SOURCE,
            field_name="s",
            expected="0 <= s <= 1",
            received=str(s),
            validation_rule="s_range",
        )


def schedule_eval(tag: ScheduleTag, s: float) -> float:
    """Value of a schedule at s: up -> s, down -> 1-s, const -> 1."""
    _check_s(s)
    match tag:
        case ScheduleTag.RAMP_UP:
            return float(s)
        case ScheduleTag.RAMP_DOWN:
            return 1.0 - float(s)
        case ScheduleTag.CONSTANT:
            return 1.0


def radial_profile(well: WellSpec, n: int) -> np.ndarray:
    """Unscheduled V(r) for r = 0..n."""
    match well.profile:
        case StepWell(depth=depth, radius=radius):
            r = np.arange(n + 1)
            return np.where(r <= radius, depth, 0.0).astype(float)
        case TabulatedWell(values=values):
            if len(values) != n + 1:
                raise ValidationError(
                    "tabulated profile length does not match n+1",
                    source_module=_SOURCE,
                    field_name="table",
                    expected=str(n + 1),
                    received=str(len(values)),
                    validation_rule="table_length",
                )
            return np.asarray(values, dtype=float)
    raise TypeError(f"unknown profile {type(well.profile).__name__}")


def scheduled_profile(well: WellSpec, n: int, s: float) -> np.ndarray:
    """b_k(s) * V_k(r) for r = 0..n."""
    return schedule_eval(well.schedule, s) * radial_profile(well, n)


def potential_at(well: WellSpec, r: int, s: float, n: int | None = None) -> float:
    """b(s) * V(r) for a single distance r from the well center."""
    n = well.center.n if n is None else n
    if not 0 <= r <= n:
        raise ValidationError(
            f"distance r={r} outside [0, {n}]",
            source_module=_SOURCE,
            field_name="r",
            expected=f"0 <= r <= {n}",
            received=str(r),
            validation_rule="distance_range",
        )
    return float(scheduled_profile(well, n, s)[r])
