"""Random point-well batches: tight-binding gaps against an exact oracle."""

from __future__ import annotations

import time
from typing import Any

import numpy as np
import structlog

from experiments.runner import run_points
from experiments.types import BatchRow, RandomBatchParams
from spectra.brute import brute_force_spectrum
from spectra.exact import exact_low_pair
from tightbinding.solver import tb_solve
from wells.errors import SolverError
from wells.types import (
    BitString,
    ProblemInstance,
    ScheduleTag,
    SolveMethod,
    StepWell,
    WellSpec,
)

log = structlog.get_logger(__name__)

CDF_QUANTILES = (0.01, 0.05, 0.1, 0.25, 0.5)


def generate_instance(rng: np.random.Generator, params: RandomBatchParams) -> ProblemInstance:
    """K point wells at distinct random centers with uniform random depths."""
    n = int(rng.integers(params.n_min, params.n_max + 1))
    K = int(rng.integers(params.K_min, min(params.K_max, 2**n) + 1))
    codes = rng.choice(2**n, size=K, replace=False)
    depths = rng.uniform(params.depth_min, params.depth_max, size=K)
    wells = tuple(
        WellSpec(
            center=BitString.from_str(format(int(code), f"0{n}b")),
            profile=StepWell(depth=float(depth), radius=0),
            schedule=ScheduleTag.RAMP_UP,
        )
        for code, depth in zip(codes, depths, strict=True)
    )
    return ProblemInstance(n=n, wells=wells, driver_schedule=ScheduleTag.RAMP_DOWN)


def oracle_gap(instance: ProblemInstance, s: float) -> float:
    if instance.K <= 3:
        E0, E1 = exact_low_pair(instance, s)
        return E1 - E0
    ev = brute_force_spectrum(instance, s, m=2).eigenvalues
    return float(ev[1] - ev[0])


def run_one(params: RandomBatchParams, run: int, seed: np.random.SeedSequence) -> list[BatchRow]:
    """Every s point of one random instance."""
    rng = np.random.default_rng(seed)
    instance = generate_instance(rng, params)
    oracle = SolveMethod.EXACT if instance.K <= 3 else SolveMethod.BRUTE
    rows: list[BatchRow] = []
    for s in np.linspace(params.s_start, params.s_stop, params.s_count).tolist():
        true_gap = oracle_gap(instance, s)
        try:
            diag = tb_solve(instance, s, order=0, epsilon=params.epsilon)
        except SolverError as exc:
            log.warning("Tight-binding point skipped", run=run, s=s, error=exc.to_dict())
            rows.append(
                BatchRow(
                    run=run, n=instance.n, K=instance.K, s=s, oracle=oracle, oracle_gap=true_gap
                )
            )
            continue
        rel_err = None
        if diag.gap is not None and true_gap > 0.0:
            rel_err = abs(diag.gap - true_gap) / true_gap
        rel_est = None
        if diag.gamma_tilde is not None and diag.gamma_tilde > 0.0:
            rel_est = diag.error_estimate / diag.gamma_tilde
        rows.append(
            BatchRow(
                run=run,
                n=instance.n,
                K=instance.K,
                s=s,
                oracle=oracle,
                oracle_gap=true_gap,
                tb_gap=diag.gap,
                error_estimate=diag.error_estimate,
                gamma_tilde=diag.gamma_tilde,
                relative_error=rel_err,
                relative_estimate=rel_est,
                resolved=diag.resolved,
            )
        )
    return rows


def summarize(rows: list[BatchRow]) -> dict[str, Any]:
    """Bound coverage over resolved points and quantiles of (estimate - error)."""
    scored = [
        r
        for r in rows
        if r.resolved and r.relative_error is not None and r.relative_estimate is not None
    ]
    summary: dict[str, Any] = {
        "points": len(rows),
        "resolved": len(scored),
        "bounded_fraction": None,
    }
    if scored:
        margin = np.array(
            [(r.relative_estimate or 0.0) - (r.relative_error or 0.0) for r in scored]
        )
        summary["bounded_fraction"] = float(np.mean(margin >= 0.0))
        for q in CDF_QUANTILES:
            summary[f"margin_q{q:g}"] = float(np.quantile(margin, q))
    return summary


def run_random_batch(
    params: RandomBatchParams, jobs: int = 1
) -> tuple[list[BatchRow], dict[str, Any]]:
    start_time = time.monotonic()
    seeds = np.random.SeedSequence(params.seed).spawn(params.runs)
    log.info("Random batch started", runs=params.runs, seed=params.seed)
    arguments = [(params, run, seed) for run, seed in enumerate(seeds)]
    per_run = run_points(run_one, arguments, jobs=jobs)
    rows = [row for batch in per_run for row in batch]
    summary = summarize(rows)
    log.info(
        "Random batch completed",
        runs=params.runs,
        resolved=summary["resolved"],
        bounded_fraction=summary["bounded_fraction"],
        elapsed_ms=round((time.monotonic() - start_time) * 1000, 2),
    )
    return rows, summary
