"""Exact symmetry-reduced spectra for up to three wells.

One well reduces to a tridiagonal block per spin sector sigma. Two wells are
solved in their pair frame over (h1, h2) and three wells in the triple frame
over (h1', h2', h3', h4'). The ground state always lies in the all-zeros
sector; the first excited level is taken as the lower of that sector's second
eigenvalue and the ground energies of the sectors carrying one unit of spin.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
import structlog
from scipy import linalg

from spectra.binomial import log_binomial_table
from spectra.sectors import SectorBlock, product_block
from spectra.symmetry import SectorIndex, hamming_distance, pair_frame, triple_frame_for
from wells.errors import IncompatibleMethodError, SolverError, ValidationError
from wells.potential import schedule_eval, scheduled_profile
from wells.types import ProblemInstance, ScheduleTag, WellSpec

log = structlog.get_logger(__name__)

_SOURCE = "spectra.exact"


@dataclass(frozen=True)
class EigenResult:
    """Ascending eigenvalues of one sector, optionally with eigenvectors (columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None = field(default=None, repr=False)
    label: tuple[int, ...] = ()
    coords: np.ndarray | None = field(default=None, repr=False)

    @property
    def ground(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def vectors(self) -> np.ndarray:
        if self.eigenvectors is None:
            raise SolverError("eigenvectors were not computed", source_module=_SOURCE)
        return self.eigenvectors


def _solve_block(block: SectorBlock) -> EigenResult:
    w, v = linalg.eigh(block.matrix)
    # Perron-Frobenius: the ground vector of a stoquastic block has one sign.
    if v[:, 0].sum() < 0:
        v[:, 0] = -v[:, 0]
    return EigenResult(eigenvalues=w, eigenvectors=v, label=block.label, coords=block.coords)


def free_driver_spectrum(
    n: int, s: float, driver: ScheduleTag = ScheduleTag.RAMP_DOWN
) -> tuple[np.ndarray, np.ndarray]:
    """Levels -a(s)(n-2k)/n for k = 0..n with their degeneracies binomial(n, k)."""
    a = schedule_eval(driver, s)
    k = np.arange(n + 1)
    levels = -a * (n - 2 * k) / n
    degeneracy = np.rint(np.exp(log_binomial_table(n)[n, k])).astype(np.int64)
    return levels, degeneracy


def radial_block(n: int, potential: np.ndarray, a: float, sigma: int) -> SectorBlock:
    """Single-center sigma block with diagonal potential[w]."""
    potential = np.asarray(potential, dtype=float)
    if potential.shape != (n + 1,):
        raise ValidationError(
            f"radial potential has {potential.size} entries, expected {n + 1}",
            source_module=_SOURCE,
            field_name="potential",
            expected=str(n + 1),
            received=str(potential.size),
            validation_rule="radial_length",
        )
    return product_block((n,), (sigma,), a, n, lambda w: potential[w])


def solve_radial(n: int, potential: np.ndarray, a: float, sigma: int = 0) -> EigenResult:
    """Spectrum of the sigma block for an arbitrary radial potential V(w)."""
    return _solve_block(radial_block(n, potential, a, sigma))


def solve_single_well(
    n: int,
    well: WellSpec,
    s: float,
    sigma: int,
    driver: ScheduleTag = ScheduleTag.RAMP_DOWN,
) -> EigenResult:
    """Full spectrum of one well's sigma block, solved in the well's own frame."""
    return solve_radial(n, scheduled_profile(well, n, s), schedule_eval(driver, s), sigma)


def _require_k(instance: ProblemInstance, k: int) -> None:
    if instance.K != k:
        raise IncompatibleMethodError(
            f"solver needs exactly {k} wells, instance has {instance.K}",
            source_module=_SOURCE,
            method="exact",
        )


def two_well_block(instance: ProblemInstance, s: float, sector: SectorIndex) -> SectorBlock:
    _require_k(instance, 2)
    wi, wj = instance.wells
    frame = pair_frame(wi.center, wj.center)
    vi = scheduled_profile(wi, instance.n, s)
    vj = scheduled_profile(wj, instance.n, s)
    n1 = frame.n1

    def diagonal(h1: np.ndarray, h2: np.ndarray) -> np.ndarray:
        return vi[h1 + h2] + vj[(n1 - h1) + h2]

    return product_block(
        (frame.n1, frame.n2),
        (sector.sigma1, sector.sigma2),
        schedule_eval(instance.driver_schedule, s),
        instance.n,
        diagonal,
    )


def solve_two_well(
    instance: ProblemInstance, s: float, sector: SectorIndex | None = None
) -> EigenResult:
    """Spectrum of a two-well instance in one (sigma1, sigma2) sector of its pair frame."""
    return _solve_block(two_well_block(instance, s, sector or SectorIndex()))


def three_well_block(
    instance: ProblemInstance, s: float, sector: Sequence[int] = (0, 0, 0, 0)
) -> SectorBlock:
    _require_k(instance, 3)
    if len(sector) != 4:
        raise ValidationError(
            "three-well sectors carry four sigma labels",
            source_module=_SOURCE,
            field_name="sector",
            expected="4",
            received=str(len(sector)),
            validation_rule="label_count",
        )
    wi, wj, wk = instance.wells
    frame = triple_frame_for(wi.center, wj.center, wk.center)
    n = instance.n
    vi = scheduled_profile(wi, n, s)
    vj = scheduled_profile(wj, n, s)
    vk = scheduled_profile(wk, n, s)
    n1p, n2p, n3p, _ = frame.blocks

    def diagonal(g1: np.ndarray, g2: np.ndarray, g3: np.ndarray, g4: np.ndarray) -> np.ndarray:
        ri = (n1p - g1) + g2 + g3 + g4
        rj = g1 + (n2p - g2) + g3 + g4
        rk = g1 + g2 + (n3p - g3) + g4
        return vi[ri] + vj[rj] + vk[rk]

    return product_block(
        frame.blocks,
        tuple(sector),
        schedule_eval(instance.driver_schedule, s),
        n,
        diagonal,
    )


def solve_three_well(
    instance: ProblemInstance, s: float, sector: Sequence[int] = (0, 0, 0, 0)
) -> EigenResult:
    """Spectrum of a three-well instance in one four-label sector of its triple frame."""
    return _solve_block(three_well_block(instance, s, sector))


def _unit_sectors(sizes: Sequence[int]) -> list[tuple[int, ...]]:
    out = []
    for b, m in enumerate(sizes):
        if m >= 2:
            out.append(tuple(1 if c == b else 0 for c in range(len(sizes))))
    return out


def _low_pair(zero: EigenResult, unit: list[EigenResult]) -> tuple[float, float]:
    e0 = zero.ground
    candidates = [float(r.eigenvalues[0]) for r in unit]
    if zero.eigenvalues.size > 1:
        candidates.append(float(zero.eigenvalues[1]))
    return e0, min(candidates)


def exact_low_pair(instance: ProblemInstance, s: float) -> tuple[float, float]:
    """Lowest two eigenvalues (E0, E1) of an instance with at most three wells."""
    n = instance.n
    match instance.K:
        case 0:
            levels, _ = free_driver_spectrum(n, s, instance.driver_schedule)
            return float(levels[0]), float(levels[1])
        case 1:
            well = instance.wells[0]
            driver = instance.driver_schedule
            zero = solve_single_well(n, well, s, 0, driver)
            unit = [solve_single_well(n, well, s, 1, driver)] if n >= 2 else []
            return _low_pair(zero, unit)
        case 2:
            wi, wj = instance.wells
            n1 = hamming_distance(wi.center, wj.center)
            zero = solve_two_well(instance, s, SectorIndex())
            unit = [
                solve_two_well(instance, s, SectorIndex(sigma1=lab[0], sigma2=lab[1]))
                for lab in _unit_sectors((n1, n - n1))
            ]
            return _low_pair(zero, unit)
        case 3:
            frame = triple_frame_for(*instance.centers)
            zero = solve_three_well(instance, s)
            unit = [solve_three_well(instance, s, lab) for lab in _unit_sectors(frame.blocks)]
            return _low_pair(zero, unit)
    raise IncompatibleMethodError(
        f"exact solver supports at most 3 wells, instance has {instance.K}",
        source_module=_SOURCE,
        method="exact",
    )
