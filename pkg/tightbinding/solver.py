"""Tight-binding assembly and the generalized eigensolve."""

from __future__ import annotations

import dataclasses
import math

import numpy as np
import structlog
from scipy import linalg

from spectra.geigen import fix_heiberger
from spectra.symmetry import SectorIndex, hamming_distance
from tightbinding.elements import (
    PairOperator,
    cross_well_expectation,
    element_frame,
    pair_operator,
    tb_h_element,
    tb_overlap,
    well_expectation,
)
from tightbinding.states import is_bound, isolated_well_states, pair_sector_states
from tightbinding.types import BoundState, TBDiagnostics, TBSystem
from wells.errors import DegenerateOverlapError, IncompatibleMethodError, ValidationError
from wells.types import ProblemInstance

log = structlog.get_logger(__name__)

_SOURCE = "tightbinding.solver"


def _check_order(order: int) -> None:
    if order not in (0, 1):
        raise ValidationError(
            f"tight-binding order must be 0 or 1, got {order}",
            source_module=_SOURCE,
            field_name="order",
            expected="0 or 1",
            received=str(order),
            validation_rule="tb_order",
        )


def _two_well_excited(instance: ProblemInstance, s: float, i: int) -> list[BoundState]:
    """First-order states of well i resolved by sector of the (0, 1) pair frame.

    A sigma=0 candidate contributes the second state of the (0, 0) sector. A
    sigma=1 candidate contributes the ground state of each unit sector instead.
    """
    candidate = isolated_well_states(instance, i, s, order=1)[1]
    if not is_bound(candidate, instance, s):
        return []
    if candidate.sector == (0,):
        states = pair_sector_states(instance, i, s, SectorIndex(), count=2)[1:]
    else:
        n1 = hamming_distance(instance.wells[0].center, instance.wells[1].center)
        n2 = instance.n - n1
        states = []
        if n1 >= 2:
            states += pair_sector_states(instance, i, s, SectorIndex(sigma1=1))
        if n2 >= 2:
            states += pair_sector_states(instance, i, s, SectorIndex(sigma2=1))
    return [dataclasses.replace(st, order=1) for st in states]


def tb_basis(instance: ProblemInstance, s: float, order: int) -> list[BoundState]:
    """Basis states, grouped ground states first."""
    _check_order(order)
    if instance.K == 1:
        return isolated_well_states(instance, 0, s, order=1)
    basis = [isolated_well_states(instance, i, s, order=0)[0] for i in range(instance.K)]
    if order == 0:
        return basis
    if instance.K == 2:
        for i in range(2):
            basis += _two_well_excited(instance, s, i)
        return basis
    for i in range(instance.K):
        candidate = isolated_well_states(instance, i, s, order=1)[1]
        if is_bound(candidate, instance, s):
            basis.append(candidate)
    return basis


def assemble_tb(instance: ProblemInstance, s: float, order: int = 0) -> TBSystem:
    """Tight-binding pencil (H, S) over the bound states of every well."""
    _check_order(order)
    if instance.K == 0:
        raise IncompatibleMethodError(
            "tight-binding needs at least one well",
            source_module=_SOURCE,
            method=f"tb{order}",
        )
    basis = tb_basis(instance, s, order)
    dim = len(basis)
    H = np.zeros((dim, dim))
    S = np.zeros((dim, dim))
    operators: dict[tuple[int, int, tuple[int, int]], PairOperator] = {}
    decoupled = instance.K > 1 and any(st.pair_sector == (-1, -1) for st in basis)
    count = 0

    for a in range(dim):
        for b in range(a, dim):
            count += 1
            sa, sb = basis[a], basis[b]
            if sa.pair_sector != sb.pair_sector:
                continue
            if instance.K == 1:
                H[a, b] = tb_h_element(sa, sb, instance, s)
                # isolated eigenvectors of one well are orthonormal
                S[a, b] = 1.0 if a == b else 0.0
                continue
            if sa.pair_sector == (-1, -1):
                # sigma=1 states of K>2 systems stay at their isolated energy.
                if a == b:
                    H[a, b], S[a, b] = sa.energy, 1.0
                continue
            i, j = element_frame(instance, sa, sb)
            key = (i, j, sa.pair_sector)
            if key not in operators:
                sector = SectorIndex(sigma1=sa.pair_sector[0], sigma2=sa.pair_sector[1])
                operators[key] = pair_operator(instance, s, i, j, sector)
            op = operators[key]
            h_ab = tb_h_element(sa, sb, instance, s, operator=op)
            h_ba = tb_h_element(sb, sa, instance, s, operator=op)
            H[a, b] = 0.5 * (h_ab + h_ba)
            S[a, b] = tb_overlap(sa, sb, op.pair)

    H = np.triu(H) + np.triu(H, 1).T
    S = np.triu(S) + np.triu(S, 1).T
    if decoupled:
        log.warning(
            "Cross-well correction omitted for sigma=1 states",
            K=instance.K,
            s=s,
            states=sum(st.pair_sector == (-1, -1) for st in basis),
        )
    log.debug("Tight-binding system assembled", K=instance.K, order=order, dim=dim, s=s)
    return TBSystem(
        H=H,
        S=S,
        states=tuple(basis),
        s=s,
        element_count=count,
        vc_omitted=decoupled,
    )


def tb_error_estimate(
    instance: ProblemInstance, s: float, states: list[BoundState] | tuple[BoundState, ...]
) -> float:
    """Root-sum-square of <psi_i| H - b_i V_i |psi_i> over the ground state of each well."""
    total = 0.0
    for st in states:
        value = st.energy - well_expectation(st, instance, s)
        for k in range(instance.K):
            if k != st.owner:
                value += cross_well_expectation(st, instance, s, k)
        total += value**2
    return math.sqrt(total)


def _naive_eigenvalues(H: np.ndarray, S: np.ndarray) -> np.ndarray:
    try:
        return linalg.eigh(H, S, eigvals_only=True)
    except (linalg.LinAlgError, ValueError) as exc:
        log.debug("Undeflated pencil solve failed", error=str(exc))
        return np.full(H.shape[0], np.nan)


def tb_solve(
    instance: ProblemInstance,
    s: float,
    order: int = 0,
    epsilon: float = 0.1,
    deflate: bool = True,
) -> TBDiagnostics:
    """Lowest two variational energies and gap diagnostics."""
    system = assemble_tb(instance, s, order)
    if deflate:
        result = fix_heiberger(system.H, system.S, epsilon)
        if result.stable_dim == 0:
            raise DegenerateOverlapError(
                f"overlap matrix deflated completely at s={s}",
                source_module=_SOURCE,
                details={"epsilon": epsilon, "dim": system.dim},
            )
        eigenvalues = result.eigenvalues
        stable_dim = result.stable_dim
    else:
        eigenvalues = _naive_eigenvalues(system.H, system.S)
        stable_dim = system.dim

    grounds = [st for st in system.states if st.order == 0 and st.sector == (0,)]
    estimate = tb_error_estimate(instance, s, grounds)
    E0 = float(eigenvalues[0])
    E1 = float(eigenvalues[1]) if eigenvalues.size > 1 else None
    gamma = None if E1 is None else E1 - E0 - math.sqrt(2.0) * estimate
    resolved = gamma is not None and gamma > 0.0
    if not resolved:
        log.debug("Gap not resolved", s=s, gamma_tilde=gamma, stable_dim=stable_dim)
    return TBDiagnostics(
        E0=E0,
        E1=E1,
        error_estimate=estimate,
        gamma_tilde=gamma,
        stable_dim=stable_dim,
        resolved=resolved,
        vc_omitted=system.vc_omitted,
    )
