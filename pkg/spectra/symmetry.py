"""Combinatorics of Hamming-symmetric wells.

Two wells i, j are viewed in a *pair frame*: the n1 positions where their
centers differ form S1, the rest form S2. A string is then labeled by
(h1, h2), the number of positions in S1 and S2 where it differs from center i;
its distance from i is h1+h2 and from j is (n1-h1)+h2.

Three wells add a *triple frame*: four position blocks of sizes n1'..n4'
(where i, j, k respectively is the odd one out, and where all agree).
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from spectra.binomial import log_binomial_table
from wells.errors import InvalidInstanceError, ValidationError
from wells.types import BitString

_SOURCE = "spectra.symmetry"


class PairFrame(BaseModel):
    """Relabeled coordinates for a pair of wells."""

    model_config = ConfigDict(frozen=True)

    n1: int = Field(gt=0, description="Hamming distance between the two centers")
    n2: int = Field(ge=0, description="n - n1")
    mask: BitString = Field(description="XOR of the two centers; ones mark S1")

    @property
    def n(self) -> int:
        return self.n1 + self.n2


class TripleFrame(BaseModel):
    """Block sizes n1'..n4' for a triple of wells (i, j, k)."""

    model_config = ConfigDict(frozen=True)

    n1p: int = Field(ge=0)
    n2p: int = Field(ge=0)
    n3p: int = Field(ge=0)
    n4p: int = Field(ge=0)

    @property
    def n(self) -> int:
        return self.n1p + self.n2p + self.n3p + self.n4p

    @property
    def blocks(self) -> tuple[int, int, int, int]:
        return (self.n1p, self.n2p, self.n3p, self.n4p)

    def distances(self) -> tuple[int, int, int]:
        """(R_ij, R_ik, R_jk) reconstructed from the block sizes."""
        return (self.n1p + self.n2p, self.n1p + self.n3p, self.n2p + self.n3p)


class SectorIndex(BaseModel):
    """Pair-basis symmetry labels (sigma1, sigma2)."""

    model_config = ConfigDict(frozen=True)

    sigma1: int = Field(default=0, ge=0)
    sigma2: int = Field(default=0, ge=0)

    def is_empty(self, n1: int, n2: int) -> bool:
        return 2 * self.sigma1 > n1 or 2 * self.sigma2 > n2

    def dimension(self, n1: int, n2: int) -> int:
        if self.is_empty(n1, n2):
            return 0
        return (n1 - 2 * self.sigma1 + 1) * (n2 - 2 * self.sigma2 + 1)

    def __str__(self) -> str:
        return f"({self.sigma1},{self.sigma2})"


def hamming_distance(x: BitString, y: BitString) -> int:
    """Number of positions where x and y differ."""
    if x.n != y.n:
        raise ValidationError(
            f"length mismatch: {x.n} != {y.n}",
            source_module=_SOURCE,
            field_name="bits",
            expected=str(x.n),
            received=str(y.n),
            validation_rule="equal_length",
        )
    return sum(a != b for a, b in zip(x.bits, y.bits, strict=True))


def ladder_coeffs(w: int, sigma: int, n: int) -> tuple[float, float]:
    """Raising/lowering coefficients (C+, C-) at weight w in spin sector sigma of n qubits."""
    if not sigma <= w <= n - sigma:
        raise ValidationError(
            f"w={w} outside [{sigma}, {n - sigma}]",
            source_module=_SOURCE,
            field_name="w",
            expected=f"{sigma} <= w <= {n - sigma}",
            received=str(w),
            validation_rule="ladder_range",
        )
    c_plus = math.sqrt((w - sigma + 1) * (n - sigma - w))
    c_minus = math.sqrt((w - sigma) * (n - sigma - w + 1))
    return c_plus, c_minus


def pair_frame(ci: BitString, cj: BitString) -> PairFrame:
    """Pair frame with well i at the origin and well j at 1^n1 0^n2."""
    n1 = hamming_distance(ci, cj)
    if n1 == 0:
        raise ValidationError(
            "pair frame needs distinct centers",
            source_module=_SOURCE,
            field_name="center",
            received=str(ci),
            validation_rule="distinct_centers",
        )
    return PairFrame(n1=n1, n2=ci.n - n1, mask=ci.xor(cj))


def triple_frame(n1: int, Rik: int, Rjk: int, n: int) -> TripleFrame | None:
    """Solve n1 = n1'+n2', Rik = n1'+n3', Rjk = n2'+n3'; None if inconsistent."""
    for value in (n1, Rik, Rjk):
        if not 0 <= value <= n:
            return None
    twice_1 = n1 + Rik - Rjk
    twice_3 = Rik + Rjk - n1
    if twice_1 % 2 or twice_3 % 2:
        return None
    n1p = twice_1 // 2
    n2p = n1 - n1p
    n3p = twice_3 // 2
    n4p = n - n1p - n2p - n3p
    if min(n1p, n2p, n3p, n4p) < 0:
        return None
    return TripleFrame(n1p=n1p, n2p=n2p, n3p=n3p, n4p=n4p)


def triple_frame_for(ci: BitString, cj: BitString, ck: BitString) -> TripleFrame:
    """Triple frame of three actual centers."""
    frame = triple_frame(
        hamming_distance(ci, cj), hamming_distance(ci, ck), hamming_distance(cj, ck), ci.n
    )
    if frame is None:
        raise InvalidInstanceError(
            "centers do not span a consistent triple frame",
            source_module=_SOURCE,
            field_name="centers",
            received=f"{ci}, {cj}, {ck}",
            validation_rule="triple_frame",
        )
    return frame


def _check_cell(h1: int, h2: int, frame: TripleFrame, rk: int) -> None:
    n1 = frame.n1p + frame.n2p
    n2 = frame.n3p + frame.n4p
    if not (0 <= h1 <= n1 and 0 <= h2 <= n2 and 0 <= rk <= frame.n):
        raise ValidationError(
            f"cell (h1={h1}, h2={h2}, rk={rk}) out of range for n1={n1}, n={frame.n}",
            source_module=_SOURCE,
            field_name="h1,h2,rk",
            validation_rule="cell_range",
        )


def _block_solutions(
    h1: int, h2: int, frame: TripleFrame, rk: int
) -> list[tuple[int, int, int, int]]:
    n1p, n2p, n3p, n4p = frame.blocks
    ri = h1 + h2
    rj = (n1p + n2p - h1) + h2
    t2 = ri - rj - n1p + n2p
    t3 = ri - rk - n1p + n3p
    t4 = rj + rk - n2p - n3p
    if t2 % 2 or t3 % 2 or t4 % 2:
        return []
    out = []
    for g1 in range(n1p + 1):
        g2 = g1 + t2 // 2
        g3 = g1 + t3 // 2
        g4 = t4 // 2 - g1
        if 0 <= g2 <= n2p and 0 <= g3 <= n3p and 0 <= g4 <= n4p:
            out.append((g1, g2, g3, g4))
    return out


def count_triple_intersections(
    h1: int, h2: int, frame: TripleFrame, rk: int, exact: bool = False
) -> float | int:
    """Strings at distances (h1+h2, n1-h1+h2, rk) from wells (i, j, k).

    With ``exact=True`` the count is an integer from exact binomials;
    otherwise it is accumulated from log-binomials.
    """
    _check_cell(h1, h2, frame, rk)
    solutions = _block_solutions(h1, h2, frame, rk)
    blocks = frame.blocks
    if exact:
        return sum(
            math.prod(math.comb(m, g) for m, g in zip(blocks, sol, strict=True))
            for sol in solutions
        )
    table = log_binomial_table(frame.n)
    return float(
        sum(
            np.exp(sum(table[m, g] for m, g in zip(blocks, sol, strict=True)))
            for sol in solutions
        )
    )


@lru_cache(maxsize=4096)
def _intersection_tensor(n1p: int, n2p: int, n3p: int, n4p: int) -> np.ndarray:
    n = n1p + n2p + n3p + n4p
    n1 = n1p + n2p
    n2 = n3p + n4p
    table = log_binomial_table(n)

    h1 = np.arange(n1 + 1)[:, None, None, None]
    h2 = np.arange(n2 + 1)[None, :, None, None]
    rk = np.arange(n + 1)[None, None, :, None]
    g1 = np.arange(n1p + 1)[None, None, None, :]

    ri = h1 + h2
    rj = n1 - h1 + h2
    t2 = ri - rj - n1p + n2p
    t3 = ri - rk - n1p + n3p
    t4 = rj + rk - n2p - n3p
    parity = (t2 % 2 == 0) & (t3 % 2 == 0) & (t4 % 2 == 0)

    g2 = g1 + t2 // 2
    g3 = g1 + t3 // 2
    g4 = t4 // 2 - g1
    valid = (
        parity
        & (g2 >= 0) & (g2 <= n2p)
        & (g3 >= 0) & (g3 <= n3p)
        & (g4 >= 0) & (g4 <= n4p)
    )
    logs = (
        table[n1p, g1]
        + table[n2p, np.clip(g2, 0, n2p)]
        + table[n3p, np.clip(g3, 0, n3p)]
        + table[n4p, np.clip(g4, 0, n4p)]
    )
    counts = np.where(valid, np.exp(np.where(valid, logs, 0.0)), 0.0).sum(axis=3)
    counts.setflags(write=False)
    return counts


def intersection_tensor(frame: TripleFrame) -> np.ndarray:
    """N[h1, h2, rk] for every cell of the (i, j) pair frame and every rk."""
    return _intersection_tensor(*frame.blocks)


def radial_to_pair(
    phi: np.ndarray, frame: PairFrame, which: Literal["i", "j"] = "i"
) -> np.ndarray:
    """Expand a sigma=0 radial state into (0,0)-sector amplitudes over (h1, h2)."""
    phi = np.asarray(phi, dtype=float)
    n = frame.n
    if phi.shape != (n + 1,):
        raise ValidationError(
            f"radial state has {phi.size} amplitudes, expected {n + 1}",
            source_module=_SOURCE,
            field_name="phi",
            expected=str(n + 1),
            received=str(phi.size),
            validation_rule="radial_length",
        )
    norm = float(phi @ phi)
    if abs(norm - 1.0) > 1e-9:
        raise ValidationError(
            f"radial state is not normalized (norm^2={norm})",
            source_module=_SOURCE,
            field_name="phi",
            expected="1",
            received=str(norm),
            validation_rule="normalized",
        )
    table = log_binomial_table(n)
    h1 = np.arange(frame.n1 + 1)[:, None]
    h2 = np.arange(frame.n2 + 1)[None, :]
    r = h1 + h2 if which == "i" else (frame.n1 - h1) + h2
    weight = np.exp(0.5 * (table[frame.n1, h1] + table[frame.n2, h2] - table[n, r]))
    return phi[r] * weight
