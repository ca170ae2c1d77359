"""Mapping a small transverse-field Ising model onto point wells.

Every Ising basis state q of L spins becomes a point well whose center
repeats each spin bit m times (spare qubits stay 0). Well depths are tuned so
that the diagonal of the effective tight-binding Hamiltonian S^-1 H at s*
matches diag(H_I); the remaining off-diagonal mismatch is reported as the
residual.
"""

from __future__ import annotations

import time
from functools import reduce
from typing import Any

import numpy as np
import structlog
from scipy import linalg

from experiments.types import IsingMapParams, IsingRow
from spectra.brute import brute_force_ground_state
from spectra.geigen import fix_heiberger
from tightbinding.solver import assemble_tb
from tightbinding.types import TBSystem
from wells.errors import CalibrationError, ValidationError
from wells.types import BitString, ProblemInstance, ScheduleTag, StepWell, WellSpec

log = structlog.get_logger(__name__)

_SOURCE = "experiments.ising"

ADIABATIC_MAX_N = 14

PAULI_I = np.eye(2)
PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]])
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]])


def pauli_term(L: int, ops: dict[int, np.ndarray]) -> np.ndarray:
    """Tensor product with ops[i] on spin i (spin 0 most significant) and identity elsewhere."""
    return reduce(np.kron, [ops.get(i, PAULI_I) for i in range(L)])


def ising_hamiltonian(params: IsingMapParams) -> np.ndarray:
    """H_I = -sum_{i<j} J_ij Z_i Z_j - sum_i B_i X_i - alpha."""
    L = params.L
    J = params.coupling_matrix()
    B = params.field_vector()
    H = -params.alpha * np.eye(2**L)
    for i in range(L):
        for j in range(i + 1, L):
            H -= J[i][j] * pauli_term(L, {i: PAULI_Z, j: PAULI_Z})
        H -= B[i] * pauli_term(L, {i: PAULI_X})
    return H


def encode_center(q: int, L: int, m: int, n: int) -> BitString:
    """Well center of Ising basis state q: each spin bit repeated m times, spare bits 0."""
    spins = [(q >> (L - 1 - i)) & 1 for i in range(L)]
    bits = [b for b in spins for _ in range(m)]
    return BitString(bits=tuple(bits) + (0,) * (n - len(bits)))


def state_label(q: int, L: int) -> str:
    return format(q, f"0{L}b")


def build_instance(params: IsingMapParams, depths: np.ndarray) -> ProblemInstance:
    wells = tuple(
        WellSpec(
            center=encode_center(q, params.L, params.m, params.n),
            profile=StepWell(depth=float(depth), radius=0),
            schedule=ScheduleTag.RAMP_UP,
        )
        for q, depth in enumerate(depths)
    )
    return ProblemInstance(n=params.n, wells=wells, driver_schedule=ScheduleTag.RAMP_DOWN)


def effective_hamiltonian(system: TBSystem) -> np.ndarray:
    """S^-1 H of a tight-binding system."""
    return linalg.solve(system.S, system.H, assume_a="pos")


def ground_distribution(
    eigenvalues: np.ndarray, vectors: np.ndarray, rel_tol: float = 1e-9
) -> np.ndarray:
    """Basis probabilities of the ground state, averaged over a degenerate ground space."""
    scale = max(1.0, abs(float(eigenvalues[0])))
    cluster = np.abs(eigenvalues - eigenvalues[0]) <= rel_tol * scale
    prob = vectors[:, cluster] ** 2
    prob = prob / prob.sum(axis=0, keepdims=True)
    return prob.mean(axis=1)


def calibrate_depths(
    params: IsingMapParams,
) -> tuple[np.ndarray, TBSystem, np.ndarray, int]:
    """Fixed-point iteration on the well depths until diag(S^-1 H) matches diag(H_I)."""
    target = np.diag(ising_hamiltonian(params)).copy()
    if np.any(target >= 0.0):
        raise ValidationError(
            "the shift alpha must make every diagonal entry of H_I negative",
            source_module=_SOURCE,
            field_name="alpha",
            expected="alpha > max(-sum J z z)",
            received=str(params.alpha),
            validation_rule="negative_diagonal",
        )
    s_star = params.s_star
    depths = target / s_star
    residual = float("inf")
    for iteration in range(1, params.max_iterations + 1):
        system = assemble_tb(build_instance(params, depths), s_star, order=0)
        H_eff = effective_hamiltonian(system)
        delta = target - np.diag(H_eff)
        residual = float(np.max(np.abs(delta)))
        log.debug("Calibration step", iteration=iteration, residual=residual)
        if residual <= params.tolerance:
            return depths, system, H_eff, iteration
        depths = depths + delta / s_star
        if np.any(depths >= 0.0):
            break
    raise CalibrationError(
        f"well depths did not converge (residual {residual:.3e})",
        source_module=_SOURCE,
        residual=residual,
        iterations=params.max_iterations,
    )


def run_ising_map(params: IsingMapParams) -> tuple[list[IsingRow], dict[str, Any]]:
    """Calibrate the wells, then compare ground distributions.

    p_effective comes from the calibrated tight-binding pencil, p_ising from
    H_I itself and p_adiabatic from the full system at s* (small n only).
    """
    start_time = time.monotonic()
    H_I = ising_hamiltonian(params)
    depths, system, H_eff, iterations = calibrate_depths(params)
    residual = float(np.max(np.abs(H_eff - H_I)))

    pencil = fix_heiberger(system.H, system.S, params.epsilon, eigenvectors=True)
    p_effective = np.full(2**params.L, np.nan)
    if pencil.stable_dim == system.dim:
        p_effective = ground_distribution(pencil.eigenvalues, pencil.vectors)
    else:
        log.warning(
            "Overlap deflated during Ising mapping",
            stable_dim=pencil.stable_dim,
            dim=system.dim,
        )

    w_I, v_I = linalg.eigh(H_I)
    p_ising = ground_distribution(w_I, v_I)

    p_adiabatic: np.ndarray | None = None
    instance = build_instance(params, depths)
    if params.n <= ADIABATIC_MAX_N:
        p_adiabatic = brute_force_ground_state(instance, params.s_star).occupations

    rows = [
        IsingRow(
            state=state_label(q, params.L),
            center=str(instance.wells[q].center),
            depth=float(depths[q]),
            target_diagonal=float(H_I[q, q]),
            effective_diagonal=float(H_eff[q, q]),
            p_effective=float(p_effective[q]),
            p_ising=float(p_ising[q]),
            p_adiabatic=None if p_adiabatic is None else float(p_adiabatic[q]),
        )
        for q in range(2**params.L)
    ]
    summary: dict[str, Any] = {
        "iterations": iterations,
        "residual_max": residual,
        "max_probability_error": float(np.max(np.abs(p_effective - p_ising))),
        "stable_dim": pencil.stable_dim,
    }
    if p_adiabatic is not None:
        summary["max_adiabatic_error"] = float(np.max(np.abs(p_adiabatic - p_effective)))
    log.info(
        "Ising mapping completed",
        L=params.L,
        n=params.n,
        iterations=iterations,
        residual_max=residual,
        elapsed_ms=round((time.monotonic() - start_time) * 1000, 2),
    )
    return rows, summary
