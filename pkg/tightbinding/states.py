"""Isolated-well bound states.

Each well is solved as if it were alone: its sigma blocks give the radial
ground state and the first-excited candidate. For two wells, states can also
be taken directly in a sector of the pair frame.
"""

from __future__ import annotations

import numpy as np
import structlog
from scipy import linalg

from spectra.exact import solve_single_well
from spectra.sectors import product_block
from spectra.symmetry import SectorIndex, pair_frame
from tightbinding.types import BoundState
from wells.errors import ValidationError
from wells.potential import schedule_eval, scheduled_profile
from wells.types import ProblemInstance

log = structlog.get_logger(__name__)

_SOURCE = "tightbinding.states"


def _check_index(instance: ProblemInstance, i: int) -> None:
    if not 0 <= i < instance.K:
        raise ValidationError(
            f"well index {i} out of range for K={instance.K}",
            source_module=_SOURCE,
            field_name="i",
            expected=f"0 <= i < {instance.K}",
            received=str(i),
            validation_rule="well_index",
        )


def isolated_well_states(
    instance: ProblemInstance, i: int, s: float, order: int = 0
) -> list[BoundState]:
    """Ground state of well i alone, plus its first-excited candidate when order=1.

    The candidate is the lower of the sigma=0 second level and the sigma=1
    ground level.
    """
    _check_index(instance, i)
    n = instance.n
    well = instance.wells[i]
    driver = instance.driver_schedule

    zero = solve_single_well(n, well, s, 0, driver)
    states = [
        BoundState(
            owner=i,
            order=0,
            sector=(0,),
            energy=float(zero.eigenvalues[0]),
            radial=zero.vectors[:, 0].copy(),
        )
    ]
    if order == 0:
        return states

    excited_zero = BoundState(
        owner=i,
        order=1,
        sector=(0,),
        energy=float(zero.eigenvalues[1]),
        radial=zero.vectors[:, 1].copy(),
    )
    if n < 2:
        states.append(excited_zero)
        return states

    one = solve_single_well(n, well, s, 1, driver)
    if one.ground < excited_zero.energy:
        states.append(
            BoundState(
                owner=i,
                order=1,
                sector=(1,),
                energy=one.ground,
                radial=one.vectors[:, 0].copy(),
            )
        )
    else:
        states.append(excited_zero)
    return states


def is_bound(state: BoundState, instance: ProblemInstance, s: float) -> bool:
    """Isolated energy strictly below the free-driver floor -a(s)."""
    return state.energy < -schedule_eval(instance.driver_schedule, s)


def pair_sector_states(
    instance: ProblemInstance, i: int, s: float, sector: SectorIndex, count: int = 1
) -> list[BoundState]:
    """Lowest ``count`` eigenstates of well i alone, in one sector of the (0, 1) pair frame."""
    _check_index(instance, i)
    if instance.K != 2:
        raise ValidationError(
            "pair-frame sector states are defined for two-well instances",
            source_module=_SOURCE,
            field_name="K",
            expected="2",
            received=str(instance.K),
            validation_rule="pair_instance",
        )
    frame = pair_frame(instance.wells[0].center, instance.wells[1].center)
    v = scheduled_profile(instance.wells[i], instance.n, s)
    n1 = frame.n1

    def diagonal(h1: np.ndarray, h2: np.ndarray) -> np.ndarray:
        return v[h1 + h2] if i == 0 else v[(n1 - h1) + h2]

    block = product_block(
        (frame.n1, frame.n2),
        (sector.sigma1, sector.sigma2),
        schedule_eval(instance.driver_schedule, s),
        instance.n,
        diagonal,
    )
    w, vecs = linalg.eigh(block.matrix)
    count = min(count, w.size)
    out = []
    for q in range(count):
        vec = vecs[:, q].copy()
        if vec.sum() < 0:
            vec = -vec
        out.append(
            BoundState(
                owner=i,
                order=min(q, 1),
                sector=(sector.sigma1, sector.sigma2),
                energy=float(w[q]),
                pair_vector=vec,
                frame_wells=(0, 1),
            )
        )
    return out
