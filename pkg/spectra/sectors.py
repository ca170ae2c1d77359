"""Sector blocks built as Kronecker sums of per-block spin ladders.

Every reduced Hamiltonian in this package has the same shape: the qubits are
split into position blocks of sizes m_1..m_B, each block carries its own
total-spin label sigma_b, and the driver acts as a sum of independent ladders.
The potential is diagonal in the block weights (h_1..h_B).
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np

from spectra.symmetry import ladder_coeffs
from wells.errors import ValidationError

_SOURCE = "spectra.sectors"

DiagonalFn = Callable[..., np.ndarray]


@dataclass(frozen=True)
class SectorBlock:
    """Dense Hamiltonian restricted to one symmetry sector.

    ``coords[row]`` holds the block weights (h_1..h_B) of each basis row.
    """

    label: tuple[int, ...]
    matrix: np.ndarray = field(repr=False)
    coords: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])


def ladder_matrix(m: int, sigma: int) -> np.ndarray:
    """Sum of X over m qubits restricted to spin sector sigma, in the weight basis."""
    if 2 * sigma > m:
        raise _empty(m, sigma)
    size = m - 2 * sigma + 1
    L = np.zeros((size, size))
    for idx in range(size - 1):
        c_plus, _ = ladder_coeffs(sigma + idx, sigma, m)
        L[idx + 1, idx] = L[idx, idx + 1] = c_plus
    return L


def _empty(m: int, sigma: int) -> ValidationError:
    return ValidationError(
        f"sector sigma={sigma} is empty for a block of {m} qubits",
        source_module=_SOURCE,
        field_name="sigma",
        expected=f"0 <= sigma <= {m // 2}",
        received=str(sigma),
        validation_rule="empty_sector",
    )


def product_block(
    sizes: Sequence[int],
    sigmas: Sequence[int],
    driver: float,
    n: int,
    diagonal: DiagonalFn,
) -> SectorBlock:
    """Assemble -(driver/n) * sum_b L_b + diag(diagonal(h_1, ..., h_B)).

    ``diagonal`` receives one integer array per block (weights of every basis
    row) and returns the potential on those rows.
    """
    if len(sizes) != len(sigmas):
        raise ValidationError(
            "one sigma label is needed per block",
            source_module=_SOURCE,
            field_name="sigmas",
            expected=str(len(sizes)),
            received=str(len(sigmas)),
            validation_rule="label_count",
        )
    for m, sigma in zip(sizes, sigmas, strict=True):
        if sigma < 0 or 2 * sigma > m:
            raise _empty(m, sigma)

    ladders = [ladder_matrix(m, sigma) for m, sigma in zip(sizes, sigmas, strict=True)]
    dims = [L.shape[0] for L in ladders]
    total = int(np.prod(dims))

    kinetic = np.zeros((total, total))
    for b, L in enumerate(ladders):
        left = int(np.prod(dims[:b]))
        right = int(np.prod(dims[b + 1 :]))
        kinetic += np.kron(np.kron(np.eye(left), L), np.eye(right))

    grid = np.indices(dims).reshape(len(dims), -1)
    coords = (grid + np.asarray(sigmas)[:, None]).T
    potential = np.asarray(diagonal(*coords.T), dtype=float)

    matrix = -(driver / n) * kinetic + np.diag(potential)
    return SectorBlock(label=tuple(int(x) for x in sigmas), matrix=matrix, coords=coords)
