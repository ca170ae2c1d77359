"""Tight-binding matrix elements.

Elements between two states are evaluated exactly inside the pair frame of
their owners: the two owning wells enter through the two-well sector
operator, and every other well k enters through V_c, the average of
b_k V_k over each (h1, h2) cell. Same-owner elements use the frame of the
owner with its lowest-indexed neighbor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np
import structlog

from spectra.binomial import log_binomial_table
from spectra.exact import radial_block
from spectra.sectors import product_block
from spectra.symmetry import (
    PairFrame,
    SectorIndex,
    intersection_tensor,
    pair_frame,
    radial_to_pair,
    triple_frame_for,
)
from tightbinding.types import BoundState
from wells.errors import IncompatibleMethodError, InvalidInstanceError, ValidationError
from wells.potential import schedule_eval, scheduled_profile
from wells.types import ProblemInstance

log = structlog.get_logger(__name__)

_SOURCE = "tightbinding.elements"


def _radial(state: BoundState) -> np.ndarray:
    if state.radial is None:
        raise InvalidInstanceError(
            f"state of well {state.owner} carries no radial vector",
            source_module=_SOURCE,
            field_name="radial",
            received=str(state.pair_sector),
            validation_rule="radial_state",
        )
    return state.radial


@dataclass(frozen=True)
class FramedPair:
    """A pair frame together with the well indices it was built from (i at the origin)."""

    i: int
    j: int
    frame: PairFrame

    def side(self, owner: int) -> Literal["i", "j"]:
        if owner == self.i:
            return "i"
        if owner == self.j:
            return "j"
        raise ValidationError(
            f"state of well {owner} is not expressible in frame ({self.i}, {self.j})",
            source_module=_SOURCE,
            field_name="owner",
            expected=f"{self.i} or {self.j}",
            received=str(owner),
            validation_rule="frame_match",
        )


@dataclass(frozen=True)
class PairOperator:
    """Hamiltonian restricted to one sector of a pair frame, V_c included."""

    pair: FramedPair
    sector: tuple[int, int]
    matrix: np.ndarray = field(repr=False)


def framed_pair(instance: ProblemInstance, i: int, j: int) -> FramedPair:
    frame = pair_frame(instance.wells[i].center, instance.wells[j].center)
    return FramedPair(i=i, j=j, frame=frame)


def vc_diagonal(instance: ProblemInstance, s: float, i: int, j: int) -> np.ndarray:
    """Cell-averaged potential of every well other than i and j, over (h1, h2) of frame (i, j)."""
    wells = instance.wells
    frame = pair_frame(wells[i].center, wells[j].center)
    n = instance.n
    vc = np.zeros((frame.n1 + 1, frame.n2 + 1))
    others = [k for k in range(instance.K) if k not in (i, j)]
    if not others:
        return vc
    table = log_binomial_table(n)
    h1 = np.arange(frame.n1 + 1)[:, None]
    h2 = np.arange(frame.n2 + 1)[None, :]
    cell = np.exp(table[frame.n1, h1] + table[frame.n2, h2])
    for k in others:
        counts = intersection_tensor(
            triple_frame_for(wells[i].center, wells[j].center, wells[k].center)
        )
        vc += counts @ scheduled_profile(wells[k], n, s)
    return vc / cell


def pair_operator(
    instance: ProblemInstance,
    s: float,
    i: int,
    j: int,
    sector: SectorIndex | None = None,
) -> PairOperator:
    """H_d + b_i V_i + b_j V_j + V_c in one sector of frame (i, j)."""
    sector = sector or SectorIndex()
    label = (sector.sigma1, sector.sigma2)
    if label != (0, 0) and instance.K > 2:
        raise IncompatibleMethodError(
            f"sector {label} elements are only defined without further wells (K=2)",
            source_module=_SOURCE,
            method="tb1",
        )
    pair = framed_pair(instance, i, j)
    frame = pair.frame
    n = instance.n
    vi = scheduled_profile(instance.wells[i], n, s)
    vj = scheduled_profile(instance.wells[j], n, s)
    vc = vc_diagonal(instance, s, i, j) if label == (0, 0) else None
    n1 = frame.n1

    def diagonal(h1: np.ndarray, h2: np.ndarray) -> np.ndarray:
        d = vi[h1 + h2] + vj[(n1 - h1) + h2]
        if vc is not None:
            d = d + vc[h1, h2]
        return d

    block = product_block(
        (frame.n1, frame.n2),
        label,
        schedule_eval(instance.driver_schedule, s),
        n,
        diagonal,
    )
    return PairOperator(pair=pair, sector=label, matrix=block.matrix)


def state_vector(state: BoundState, pair: FramedPair, sector: tuple[int, int]) -> np.ndarray:
    """Flattened amplitudes of ``state`` in ``sector`` of the pair frame."""
    if state.pair_sector != sector:
        raise ValidationError(
            f"state sector {state.sector} does not match frame sector {sector}",
            source_module=_SOURCE,
            field_name="sector",
            expected=str(sector),
            received=str(state.sector),
            validation_rule="sector_match",
        )
    if state.pair_vector is not None:
        if state.frame_wells != (pair.i, pair.j):
            raise ValidationError(
                f"state is stored in frame {state.frame_wells}, requested ({pair.i}, {pair.j})",
                source_module=_SOURCE,
                field_name="frame",
                expected=str((pair.i, pair.j)),
                received=str(state.frame_wells),
                validation_rule="frame_match",
            )
        return state.pair_vector
    return radial_to_pair(_radial(state), pair.frame, pair.side(state.owner)).ravel()


def tb_overlap(a: BoundState, b: BoundState, pair: FramedPair) -> float:
    """<a|b>; states in different symmetry sectors are exactly orthogonal."""
    if a.pair_sector != b.pair_sector or a.pair_sector == (-1, -1):
        return 0.0
    sector = a.pair_sector
    return float(state_vector(a, pair, sector) @ state_vector(b, pair, sector))


def element_frame(instance: ProblemInstance, a: BoundState, b: BoundState) -> tuple[int, int]:
    """Well indices (i < j) of the frame an element is evaluated in."""
    if a.frame_wells is not None:
        return a.frame_wells
    if b.frame_wells is not None:
        return b.frame_wells
    if a.owner != b.owner:
        return (min(a.owner, b.owner), max(a.owner, b.owner))
    partner = next(k for k in range(instance.K) if k != a.owner)
    return (min(a.owner, partner), max(a.owner, partner))


def _single_well_element(
    instance: ProblemInstance, s: float, a: BoundState, b: BoundState
) -> float:
    if a.radial is None or b.radial is None or a.sector != b.sector:
        return 0.0
    well = instance.wells[a.owner]
    block = radial_block(
        instance.n,
        scheduled_profile(well, instance.n, s),
        schedule_eval(instance.driver_schedule, s),
        a.sector[0],
    )
    return float(a.radial @ block.matrix @ b.radial)


def tb_h_element(
    a: BoundState,
    b: BoundState,
    instance: ProblemInstance,
    s: float,
    operator: PairOperator | None = None,
) -> float:
    """<a|H|b>, exact within the span of the two states."""
    if a.pair_sector != b.pair_sector:
        return 0.0
    if instance.K == 1:
        return _single_well_element(instance, s, a, b)
    if a.pair_sector == (-1, -1):
        raise IncompatibleMethodError(
            "radial sigma=1 states have no pair-frame expansion",
            source_module=_SOURCE,
            method="tb1",
        )
    if operator is None:
        i, j = element_frame(instance, a, b)
        sector = SectorIndex(sigma1=a.pair_sector[0], sigma2=a.pair_sector[1])
        operator = pair_operator(instance, s, i, j, sector)
    ua = state_vector(a, operator.pair, operator.sector)
    ub = state_vector(b, operator.pair, operator.sector)
    return float(ua @ operator.matrix @ ub)


def well_expectation(state: BoundState, instance: ProblemInstance, s: float) -> float:
    """<psi|b_i V_i|psi> for a radial state of well i."""
    v = scheduled_profile(instance.wells[state.owner], instance.n, s)
    return float(_radial(state) ** 2 @ v)


def cross_well_expectation(
    state: BoundState, instance: ProblemInstance, s: float, k: int
) -> float:
    """<psi|b_k V_k|psi> for a radial sigma=0 state of another well, in the (owner, k) frame."""
    i = state.owner
    if k == i:
        return well_expectation(state, instance, s)
    pair = framed_pair(instance, min(i, k), max(i, k))
    frame = pair.frame
    amp = radial_to_pair(_radial(state), frame, pair.side(i))
    v = scheduled_profile(instance.wells[k], instance.n, s)
    h1 = np.arange(frame.n1 + 1)[:, None]
    h2 = np.arange(frame.n2 + 1)[None, :]
    r_k = h1 + h2 if pair.i == k else (frame.n1 - h1) + h2
    return float(np.sum(amp**2 * v[r_k]))
