"""Tight-binding data types."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


@dataclass(frozen=True)
class BoundState:
    """An isolated-well eigenstate used as a tight-binding basis function.

    Radially symmetric states carry ``radial`` (phi(r), r = 0..n) and a
    one-element ``sector`` (sigma,). States defined natively in a pair frame
    carry ``pair_vector`` (flattened sector amplitudes), the frame's well
    indices in ``frame_wells`` and a two-element ``sector`` (sigma1, sigma2).
    """

    owner: int
    order: int
    sector: tuple[int, ...]
    energy: float
    radial: np.ndarray | None = field(default=None, repr=False)
    pair_vector: np.ndarray | None = field(default=None, repr=False)
    frame_wells: tuple[int, int] | None = None

    @property
    def is_radial_ground_sector(self) -> bool:
        return self.radial is not None and self.sector == (0,)

    @property
    def pair_sector(self) -> tuple[int, int]:
        """Sector label in any pair frame; radial sigma=0 states sit in (0, 0)."""
        if len(self.sector) == 2:
            return (self.sector[0], self.sector[1])
        return (0, 0) if self.sector == (0,) else (-1, -1)


@dataclass(frozen=True)
class TBSystem:
    """Tight-binding pencil (H, S) at one value of s."""

    H: np.ndarray = field(repr=False)
    S: np.ndarray = field(repr=False)
    states: tuple[BoundState, ...]
    s: float
    element_count: int
    vc_omitted: bool = False

    @property
    def dim(self) -> int:
        return int(self.H.shape[0])

    def labels(self) -> list[tuple[int, int, tuple[int, ...]]]:
        """(well, order, sector) per basis row."""
        return [(st.owner, st.order, st.sector) for st in self.states]


class TBDiagnostics(BaseModel):
    """Variational energies and gap diagnostics of one tight-binding solve."""

    model_config = ConfigDict(frozen=True)

    E0: float
    E1: float | None = None
    error_estimate: float = Field(ge=0.0)
    gamma_tilde: float | None = None
    stable_dim: int = Field(ge=0)
    resolved: bool = False
    vc_omitted: bool = False

    @property
    def gap(self) -> float | None:
        if self.E1 is None:
            return None
        return self.E1 - self.E0
