"""Dense symmetric eigensolvers.

``fix_heiberger`` solves A x = lambda B x for symmetric A and a symmetric,
possibly nearly singular, positive semidefinite B. Directions in which B is
numerically zero relative to ``epsilon`` are deflated in at most two stages;
only eigenvalues of the stable part of the pencil are reported.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import structlog
from scipy import linalg

from wells.errors import SingularPencilError, SolverError, ValidationError

log = structlog.get_logger(__name__)

_SOURCE = "spectra.geigen"
_SYMMETRY_TOL = 1e-10


@dataclass(frozen=True)
class DeflationStage:
    stage: int
    kept: int
    cut: int
    threshold: float


@dataclass(frozen=True)
class PencilResult:
    """Finite eigenvalues of a deflated pencil (ascending)."""

    eigenvalues: np.ndarray
    stable_dim: int
    deflation_log: tuple[DeflationStage, ...] = ()
    eigenvectors: np.ndarray | None = field(default=None, repr=False)

    @property
    def vectors(self) -> np.ndarray:
        if self.eigenvectors is None:
            raise SolverError("eigenvectors were not requested", source_module=_SOURCE)
        return self.eigenvectors


def _check_symmetric(M: np.ndarray, name: str) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValidationError(
            f"{name} must be square, got shape {M.shape}",
            source_module=_SOURCE,
            field_name=name,
            received=str(M.shape),
            validation_rule="square",
        )
    scale = max(float(np.max(np.abs(M))) if M.size else 0.0, 1.0)
    asym = float(np.max(np.abs(M - M.T))) if M.size else 0.0
    if asym > _SYMMETRY_TOL * scale:
        raise ValidationError(
            f"{name} is not symmetric (max |M - M^T| = {asym:.3e})",
            source_module=_SOURCE,
            field_name=name,
            expected=f"<= {_SYMMETRY_TOL:g} relative",
            received=f"{asym:.3e}",
            validation_rule="symmetric",
        )
    return 0.5 * (M + M.T)


def sym_eig(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Ascending eigenvalues and orthonormal eigenvectors (columns) of symmetric A."""
    A = _check_symmetric(A, "A")
    w, v = linalg.eigh(A)
    return w, v


def _check_epsilon(epsilon: float) -> None:
    if not 0.0 < epsilon < 1.0:
        raise ValidationError(
            f"epsilon={epsilon} outside (0, 1)",
            source_module=_SOURCE,
            field_name="epsilon",
            expected="0 < epsilon < 1",
            received=str(epsilon),
            validation_rule="epsilon_range",
        )


def fix_heiberger(
    A: np.ndarray,
    B: np.ndarray,
    epsilon: float,
    *,
    eigenvectors: bool = False,
) -> PencilResult:
    """Solve the symmetric pencil (A, B), discarding directions where B < epsilon * max(B)."""
    _check_epsilon(epsilon)
    A = _check_symmetric(A, "A")
    B = _check_symmetric(B, "B")
    if A.shape != B.shape:
        raise ValidationError(
            f"A and B shapes differ: {A.shape} vs {B.shape}",
            source_module=_SOURCE,
            field_name="B",
            expected=str(A.shape),
            received=str(B.shape),
            validation_rule="matching_shape",
        )
    dim = A.shape[0]

    # Stage 1: split B into its retained spectrum and a numerically null part.
    d, Q = linalg.eigh(B)
    order = np.argsort(d)[::-1]
    d, Q = d[order], Q[:, order]
    d_max = float(d[0]) if dim else 0.0
    threshold1 = epsilon * d_max
    keep = d > threshold1 if d_max > 0.0 else np.zeros(dim, dtype=bool)
    n1 = int(keep.sum())
    stages = [DeflationStage(stage=1, kept=n1, cut=dim - n1, threshold=threshold1)]

    if n1 == 0:
        log.debug("Overlap fully deflated", dim=dim, threshold=threshold1)
        return PencilResult(
            eigenvalues=np.empty(0),
            stable_dim=0,
            deflation_log=tuple(stages),
            eigenvectors=np.empty((dim, 0)) if eigenvectors else None,
        )

    W = Q[:, keep] / np.sqrt(d[keep])
    Q2 = Q[:, ~keep]
    A11 = W.T @ A @ W
    A11 = 0.5 * (A11 + A11.T)

    if Q2.shape[1] == 0:
        lam, y = linalg.eigh(A11)
        return PencilResult(
            eigenvalues=lam,
            stable_dim=n1,
            deflation_log=tuple(stages),
            eigenvectors=W @ y if eigenvectors else None,
        )

    # Stage 2: A restricted to the null directions of B.
    A22 = Q2.T @ A @ Q2
    e, P = linalg.eigh(0.5 * (A22 + A22.T))
    e_max = float(np.max(np.abs(e)))
    threshold2 = epsilon * e_max
    nonsingular = np.abs(e) > threshold2 if e_max > 0.0 else np.zeros(e.size, dtype=bool)
    G = Q2 @ P
    G3, G4 = G[:, nonsingular], G[:, ~nonsingular]
    E3 = e[nonsingular]
    n4 = G4.shape[1]
    stages.append(
        DeflationStage(stage=2, kept=int(nonsingular.sum()), cut=n4, threshold=threshold2)
    )

    A13 = W.T @ A @ G3
    schur = A11 - (A13 / E3) @ A13.T
    schur = 0.5 * (schur + schur.T)

    if n4 == 0:
        lam, y = linalg.eigh(schur)
        x1 = y
        U2 = None
    else:
        A14 = W.T @ A @ G4
        if n4 > n1:
            raise SingularPencilError(
                f"constraint block has {n4} columns but only {n1} free coordinates",
                source_module=_SOURCE,
                stage=2,
            )
        U, sv, _ = linalg.svd(A14, full_matrices=True)
        if sv[-1] <= epsilon * sv[0] or sv[0] == 0.0:
            raise SingularPencilError(
                "constraint block is rank deficient; pencil has no well-defined finite part",
                source_module=_SOURCE,
                stage=2,
            )
        U2 = U[:, n4:]
        if U2.shape[1] == 0:
            log.debug("Pencil has no finite eigenvalues after constraints", n1=n1, n4=n4)
            return PencilResult(
                eigenvalues=np.empty(0),
                stable_dim=0,
                deflation_log=tuple(stages),
                eigenvectors=np.empty((dim, 0)) if eigenvectors else None,
            )
        reduced = U2.T @ schur @ U2
        lam, y = linalg.eigh(0.5 * (reduced + reduced.T))
        x1 = U2 @ y

    log.debug(
        "Pencil deflated",
        dim=dim,
        stable_dim=lam.size,
        stages=[(s.stage, s.kept, s.cut) for s in stages],
    )

    vectors = None
    if eigenvectors:
        x3 = -(A13.T @ x1) / E3[:, None]
        vectors = W @ x1 + G3 @ x3
        if U2 is not None:
            A14 = W.T @ A @ G4
            U, sv, Vt = linalg.svd(A14, full_matrices=True)
            U1 = U[:, :n4]
            residual = lam[None, :] * x1 - A11 @ x1 - A13 @ x3
            x4 = Vt.T @ ((U1.T @ residual) / sv[:, None])
            vectors = vectors + G4 @ x4

    return PencilResult(
        eigenvalues=lam,
        stable_dim=int(lam.size),
        deflation_log=tuple(stages),
        eigenvectors=vectors,
    )
