"""s-grid sweeps of a configured instance with the selected method."""

from __future__ import annotations

import time

import structlog

from experiments.runner import run_points
from experiments.types import SweepRow
from spectra.brute import brute_force_spectrum
from spectra.exact import exact_low_pair
from tightbinding.solver import tb_solve
from wells.errors import IncompatibleMethodError
from wells.settings import get_settings
from wells.types import SolveConfig, SolveMethod

log = structlog.get_logger(__name__)

_SOURCE = "experiments.sweep"


def check_method(config: SolveConfig) -> None:
    """Reject method/instance combinations before any point is evaluated."""
    instance = config.instance
    match config.method:
        case SolveMethod.EXACT if instance.K > 3:
            raise IncompatibleMethodError(
                f"method=exact supports at most 3 wells, config has {instance.K}",
                source_module=_SOURCE,
                method=config.method.value,
            )
        case SolveMethod.BRUTE if instance.n > get_settings().brute_max_n:
            cap = get_settings().brute_max_n
            raise IncompatibleMethodError(
                f"method=brute supports n <= {cap}, config has n={instance.n}",
                source_module=_SOURCE,
                method=config.method.value,
            )
        case SolveMethod.TB0 | SolveMethod.TB1 if instance.K == 0:
            raise IncompatibleMethodError(
                "tight-binding needs at least one well",
                source_module=_SOURCE,
                method=config.method.value,
            )


def solve_point(config: SolveConfig, s: float) -> SweepRow:
    """Evaluate one s value."""
    instance = config.instance
    match config.method:
        case SolveMethod.BRUTE:
            ev = brute_force_spectrum(instance, s, m=2).eigenvalues
            E0, E1 = float(ev[0]), float(ev[1])
            return SweepRow(s=s, method=config.method, E0=E0, E1=E1, gap=E1 - E0)
        case SolveMethod.EXACT:
            E0, E1 = exact_low_pair(instance, s)
            return SweepRow(s=s, method=config.method, E0=E0, E1=E1, gap=E1 - E0)
        case SolveMethod.TB0 | SolveMethod.TB1:
            order = 0 if config.method is SolveMethod.TB0 else 1
            diag = tb_solve(instance, s, order=order, epsilon=config.epsilon)
            return SweepRow(
                s=s,
                method=config.method,
                E0=diag.E0,
                E1=diag.E1,
                gap=diag.gap,
                error_estimate=diag.error_estimate,
                gamma_tilde=diag.gamma_tilde,
                stable_dim=diag.stable_dim,
                resolved=diag.resolved,
            )
    raise IncompatibleMethodError(
        f"unknown method {config.method}", source_module=_SOURCE, method=str(config.method)
    )


def run_solve(config: SolveConfig, jobs: int = 1) -> list[SweepRow]:
    """One row per s-grid point, in grid order."""
    check_method(config)
    grid = config.s_grid.values()
    start_time = time.monotonic()
    log.info(
        "Sweep started",
        method=config.method.value,
        n=config.instance.n,
        K=config.instance.K,
        points=len(grid),
    )
    rows = run_points(solve_point, [(config, s) for s in grid], jobs=jobs)
    unresolved = sum(1 for r in rows if r.resolved is False)
    log.info(
        "Sweep completed",
        method=config.method.value,
        points=len(rows),
        unresolved=unresolved,
        elapsed_ms=round((time.monotonic() - start_time) * 1000, 2),
    )
    return rows
