"""Unstructured search with a prior guess.

The marked item is a point well of depth -1 ramped up with s; the prior is a
Hamming ball of depth V_p ramped down with the driver, centered at distance R
from the marked item. For each R the minimum gap over s is found on a grid and
then refined inside the bracketing grid cells.
"""

from __future__ import annotations

import math
import time
from collections.abc import Callable
from typing import Any

import numpy as np
import structlog
from scipy import optimize

from experiments.runner import run_points
from experiments.types import GroverPriorParams, GroverRow, ScalingParams, ScalingRow
from spectra.binomial import log_binom
from spectra.exact import exact_low_pair, solve_radial
from tightbinding.solver import tb_solve
from wells.errors import SolverError
from wells.types import BitString, ProblemInstance, ScheduleTag, StepWell, WellSpec

log = structlog.get_logger(__name__)

MARKED_DEPTH = -1.0


def prior_probability(n: int, R: int) -> float:
    """Chance that a uniformly random guess lands at distance R: binomial(n, R) / 2^n."""
    return math.exp(log_binom(n, R) - n * math.log(2.0))


def marked_well(n: int) -> WellSpec:
    return WellSpec(
        center=BitString.zeros(n),
        profile=StepWell(depth=MARKED_DEPTH, radius=0),
        schedule=ScheduleTag.RAMP_UP,
    )


def grover_instance(n: int, R: int, prior_depth: float, prior_radius: int) -> ProblemInstance:
    """Marked item at 0^n, prior well at 1^R 0^(n-R)."""
    wells = [marked_well(n)]
    if R > 0:
        wells.append(
            WellSpec(
                center=BitString(bits=(1,) * R + (0,) * (n - R)),
                profile=StepWell(depth=prior_depth, radius=prior_radius),
                schedule=ScheduleTag.RAMP_DOWN,
            )
        )
    return ProblemInstance(n=n, wells=tuple(wells), driver_schedule=ScheduleTag.RAMP_DOWN)


def _coincident_potential(n: int, s: float, prior_depth: float, prior_radius: int) -> np.ndarray:
    r = np.arange(n + 1)
    return (1.0 - s) * np.where(r <= prior_radius, prior_depth, 0.0) + s * np.where(
        r == 0, MARKED_DEPTH, 0.0
    )


def _coincident_pair(
    n: int, s: float, prior_depth: float, prior_radius: int
) -> tuple[float, float]:
    """Prior centered on the marked item: one radial potential, sigma=0 and sigma=1 blocks."""
    v = _coincident_potential(n, s, prior_depth, prior_radius)
    zero = solve_radial(n, v, 1.0 - s, 0)
    one = solve_radial(n, v, 1.0 - s, 1)
    return zero.ground, min(float(zero.eigenvalues[1]), one.ground)


def exact_gap(n: int, R: int, s: float, prior_depth: float, prior_radius: int) -> float:
    if R == 0:
        E0, E1 = _coincident_pair(n, s, prior_depth, prior_radius)
    else:
        E0, E1 = exact_low_pair(grover_instance(n, R, prior_depth, prior_radius), s)
    return E1 - E0


def tb0_gap(
    n: int, R: int, s: float, prior_depth: float, prior_radius: int, epsilon: float
) -> tuple[float, float] | None:
    """(gap, error estimate) from zeroth-order tight-binding; None when the pencil degenerates."""
    if R == 0:
        v = _coincident_potential(n, s, prior_depth, prior_radius)
        zero = solve_radial(n, v, 1.0 - s, 0)
        phi = zero.vectors[:, 0]
        E0, E1 = _coincident_pair(n, s, prior_depth, prior_radius)
        return E1 - E0, abs(E0 - float(phi**2 @ v))
    try:
        diag = tb_solve(grover_instance(n, R, prior_depth, prior_radius), s, 0, epsilon)
    except SolverError as exc:
        log.warning("Tight-binding point skipped", n=n, R=R, s=s, error=exc.to_dict())
        return None
    if diag.gap is None:
        return None
    return diag.gap, diag.error_estimate


def minimize_gap(
    gap_fn: Callable[[float], float], grid: np.ndarray, refine: bool = True
) -> tuple[float, float]:
    """(minimum gap, s at the minimum) from a grid scan.

    With ``refine`` every local minimum of the scan is refined inside its two
    neighbouring cells, so an avoided crossing narrower than the grid spacing
    is resolved even when another dip samples lower on the grid.
    """
    values = np.array([gap_fn(float(s)) for s in grid])
    k = int(np.argmin(values))
    best_gap, best_s = float(values[k]), float(grid[k])
    if not refine:
        return best_gap, best_s
    for j in _local_minima(values):
        lo = float(grid[max(j - 1, 0)])
        hi = float(grid[min(j + 1, grid.size - 1)])
        result = optimize.minimize_scalar(
            gap_fn, bounds=(lo, hi), method="bounded", options={"xatol": 1e-12}
        )
        if result.success and float(result.fun) < best_gap:
            best_gap, best_s = float(result.fun), float(result.x)
    return best_gap, best_s


def _local_minima(values: np.ndarray) -> list[int]:
    padded = np.concatenate(([np.inf], values, [np.inf]))
    return [
        j
        for j in range(values.size)
        if padded[j + 1] <= padded[j] and padded[j + 1] <= padded[j + 2]
    ]


def baseline_gap(n: int, s_count: int, refine: bool = True) -> tuple[float, float]:
    """Minimum gap of plain adiabatic search (no prior)."""
    instance = ProblemInstance(
        n=n, wells=(marked_well(n),), driver_schedule=ScheduleTag.RAMP_DOWN
    )

    def gap(s: float) -> float:
        E0, E1 = exact_low_pair(instance, s)
        return E1 - E0

    return minimize_gap(gap, np.linspace(0.0, 1.0, s_count), refine)


def grover_row(params: GroverPriorParams, R: int, baseline: float) -> GroverRow:
    n = params.n
    grid = np.linspace(0.0, 1.0, params.s_count)
    vp, rp = params.prior_depth, params.prior_radius

    gap, s_min = minimize_gap(lambda s: exact_gap(n, R, s, vp, rp), grid, params.refine)

    tb_grid = [tb0_gap(n, R, float(s), vp, rp, params.epsilon) for s in grid]
    finite = [(g[0], float(s)) for g, s in zip(tb_grid, grid, strict=True) if g is not None]
    tb_min = min(finite) if finite else None
    at_min = tb0_gap(n, R, s_min, vp, rp, params.epsilon)

    return GroverRow(
        n=n,
        R=R,
        probability=prior_probability(n, R),
        exact_gap=gap,
        exact_s=s_min,
        tb0_grid_gap=tb_min[0] if tb_min else None,
        tb0_grid_s=tb_min[1] if tb_min else None,
        tb0_gap_at_exact_s=at_min[0] if at_min else None,
        tb0_error_estimate=at_min[1] if at_min else None,
        baseline_gap=baseline,
    )


def run_grover_prior(
    params: GroverPriorParams, jobs: int = 1
) -> tuple[list[GroverRow], dict[str, Any]]:
    """Per-R minimum gaps plus the probability-weighted aggregate."""
    start_time = time.monotonic()
    baseline, baseline_s = baseline_gap(params.n, params.s_count, params.refine)
    distances = params.distance_list()
    log.info("Grover prior sweep started", n=params.n, distances=len(distances))
    rows = run_points(grover_row, [(params, R, baseline) for R in distances], jobs=jobs)

    improved = [row.R for row in rows if row.exact_gap > baseline]
    summary: dict[str, Any] = {
        "n": params.n,
        "baseline_gap": baseline,
        "baseline_s": baseline_s,
        "probability_scaled_gap": sum(row.probability * row.exact_gap for row in rows),
        "improved_distances": " ".join(str(R) for R in improved),
    }
    log.info(
        "Grover prior sweep completed",
        n=params.n,
        baseline_gap=baseline,
        improved=len(improved),
        elapsed_ms=round((time.monotonic() - start_time) * 1000, 2),
    )
    return rows, summary


def scaled_gap(n: int, params: ScalingParams) -> ScalingRow:
    """sum_R P(R) * min-gap(R) over every prior distance."""
    grid = np.linspace(0.0, 1.0, params.s_count)
    vp, rp = params.prior_depth, params.prior_radius
    total = 0.0
    for R in range(n + 1):
        gap, _ = minimize_gap(lambda s, R=R: exact_gap(n, R, s, vp, rp), grid)
        total += prior_probability(n, R) * gap
    baseline, _ = baseline_gap(n, params.s_count)
    return ScalingRow(
        n=n, scaled_gap=total, log2_scaled_gap=math.log2(total), baseline_gap=baseline
    )


def run_scaling(
    params: ScalingParams, jobs: int = 1
) -> tuple[list[ScalingRow], dict[str, Any]]:
    """Probability-scaled gap over a range of n and its log2 slope per qubit.

    The no-prior baseline is fitted alongside; a random prior helps only if
    its slope is shallower than the baseline's.
    """
    ns = list(range(params.n_min, params.n_max + 1))
    rows = run_points(scaled_gap, [(n, params) for n in ns], jobs=jobs)
    summary: dict[str, Any] = {"n_min": params.n_min, "n_max": params.n_max}
    if len(rows) >= 2:
        qubits = [row.n for row in rows]
        slope, intercept = np.polyfit(qubits, [row.log2_scaled_gap for row in rows], 1)
        baseline_slope, _ = np.polyfit(qubits, [math.log2(row.baseline_gap) for row in rows], 1)
        summary["log2_slope"] = float(slope)
        summary["log2_intercept"] = float(intercept)
        summary["baseline_log2_slope"] = float(baseline_slope)
        log.info(
            "Scaling fit",
            slope=float(slope),
            baseline_slope=float(baseline_slope),
            points=len(rows),
        )
    return rows, summary
