"""Full 2^n oracle for validating the reduced solvers.

Strings are indexed by their integer value with bits[0] as the most
significant bit. The potential is a diagonal array built from Hamming
distances to each center; the driver flips one bit at a time.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import structlog
from scipy import linalg
from scipy.sparse.linalg import ArpackNoConvergence, LinearOperator, eigsh

from spectra.binomial import log_binomial_table
from spectra.exact import EigenResult
from wells.errors import IncompatibleMethodError, SolverError, ValidationError
from wells.potential import radial_profile, schedule_eval, scheduled_profile
from wells.settings import get_settings
from wells.types import BitString, ProblemInstance, StepWell, TabulatedWell, WellSpec

log = structlog.get_logger(__name__)

_SOURCE = "spectra.brute"

GROUND_CLUSTER_MAX = 8
ARPACK_TOL = 1e-12
ARPACK_ATTEMPTS = 3


@dataclass(frozen=True)
class GroundState:
    """Ground vector of the full operator and its probability inside each well."""

    energy: float
    vector: np.ndarray = field(repr=False)
    occupations: np.ndarray
    degeneracy: int = 1


def _check_cap(n: int) -> None:
    cap = get_settings().brute_max_n
    if n > cap:
        raise IncompatibleMethodError(
            f"brute force is limited to n <= {cap}, got n={n}",
            source_module=_SOURCE,
            method="brute",
        )


def distances_from(center: BitString) -> np.ndarray:
    """Hamming distance of every basis string to ``center``."""
    n = center.n
    flipped = np.arange(2**n, dtype=np.int64) ^ center.to_int()
    dist = np.zeros(2**n, dtype=np.int64)
    for j in range(n):
        dist += (flipped >> j) & 1
    return dist


def potential_diagonal(instance: ProblemInstance, s: float) -> np.ndarray:
    diag = np.zeros(2**instance.n)
    for well in instance.wells:
        diag += scheduled_profile(well, instance.n, s)[distances_from(well.center)]
    return diag


def hamiltonian_matrix(instance: ProblemInstance, s: float) -> np.ndarray:
    """Dense 2^n x 2^n Hamiltonian."""
    _check_cap(instance.n)
    n = instance.n
    a = schedule_eval(instance.driver_schedule, s)
    idx = np.arange(2**n)
    H = np.diag(potential_diagonal(instance, s))
    for j in range(n):
        H[idx, idx ^ (1 << j)] -= a / n
    return H


def _operator(instance: ProblemInstance, s: float) -> LinearOperator:
    n = instance.n
    a = schedule_eval(instance.driver_schedule, s)
    diag = potential_diagonal(instance, s)
    idx = np.arange(2**n)
    flips = [idx ^ (1 << j) for j in range(n)]

    def matvec(v: np.ndarray) -> np.ndarray:
        v = np.ravel(v)
        y = diag * v
        hop = np.zeros_like(v)
        for f in flips:
            hop += v[f]
        return y - (a / n) * hop

    return LinearOperator((2**n, 2**n), matvec=matvec, dtype=float)


def _iterative_lowest(
    instance: ProblemInstance, s: float, m: int
) -> tuple[np.ndarray, np.ndarray]:
    """Lanczos on the implicit operator, widening the Krylov space on each retry.

    A few levels beyond m are requested so a near-degenerate cluster at the
    bottom of the spectrum converges as a whole. The start vector is seeded
    from n, so repeated calls return identical results.
    """
    n = instance.n
    dim = 2**n
    k = min(m + 4, dim - 2)
    op = _operator(instance, s)
    v0 = np.random.default_rng(n).standard_normal(dim)
    ncv = min(dim - 1, max(2 * k + 1, 40))
    for attempt in range(1, ARPACK_ATTEMPTS + 1):
        log.debug("Iterative brute-force solve", n=n, m=m, s=s, ncv=ncv, attempt=attempt)
        try:
            w, v = eigsh(op, k=k, which="SA", v0=v0, ncv=ncv, tol=ARPACK_TOL, maxiter=50 * dim)
        except ArpackNoConvergence as exc:
            log.warning(
                "Lanczos did not converge",
                n=n,
                s=s,
                ncv=ncv,
                converged=len(exc.eigenvalues),
            )
            ncv = min(dim - 1, 2 * ncv)
            continue
        order = np.argsort(w)[:m]
        return w[order], v[:, order]
    raise SolverError(
        f"Lanczos did not converge for n={n} at s={s} after {ARPACK_ATTEMPTS} attempts",
        source_module=_SOURCE,
        details={"n": n, "s": s, "m": m, "ncv": ncv},
    )


def _lowest(instance: ProblemInstance, s: float, m: int, vectors: bool) -> EigenResult:
    _check_cap(instance.n)
    n = instance.n
    dim = 2**n
    if not 1 <= m <= dim:
        raise ValidationError(
            f"requested {m} eigenvalues of a {dim}-dimensional operator",
            source_module=_SOURCE,
            field_name="m",
            expected=f"1 <= m <= {dim}",
            received=str(m),
            validation_rule="eigen_count",
        )
    a = schedule_eval(instance.driver_schedule, s)
    if a == 0.0:
        diag = potential_diagonal(instance, s)
        order = np.argsort(diag, kind="stable")[:m]
        vecs = np.eye(dim)[:, order] if vectors else None
        return EigenResult(eigenvalues=diag[order], eigenvectors=vecs)

    if n <= get_settings().dense_max_n or m >= dim - 1:
        w, v = linalg.eigh(hamiltonian_matrix(instance, s), subset_by_index=[0, m - 1])
    else:
        w, v = _iterative_lowest(instance, s, m)
    return EigenResult(eigenvalues=w, eigenvectors=v if vectors else None)


def brute_force_spectrum(instance: ProblemInstance, s: float, m: int = 2) -> EigenResult:
    """Lowest m eigenvalues of the full Hamiltonian."""
    return _lowest(instance, s, m, vectors=False)


def _well_support(well: WellSpec, n: int) -> np.ndarray:
    match well.profile:
        case StepWell(radius=radius):
            return np.arange(n + 1) <= radius
        case TabulatedWell():
            return radial_profile(well, n) != 0.0
    raise TypeError(f"unknown profile {type(well.profile).__name__}")


def brute_force_ground_state(
    instance: ProblemInstance, s: float, rel_tol: float = 1e-9
) -> GroundState:
    """Ground vector plus the probability mass inside each well, normalized over wells.

    Levels within rel_tol * max(1, |E0|) of the ground energy count as one
    ground space; the occupations are averaged over it.
    """
    m = min(GROUND_CLUSTER_MAX, 2**instance.n)
    result = _lowest(instance, s, m, vectors=True)
    vecs = result.vectors
    w = result.eigenvalues
    cluster = np.flatnonzero(np.abs(w - w[0]) <= rel_tol * max(1.0, abs(float(w[0]))))
    psi = vecs[:, 0]
    if psi.sum() < 0:
        psi = -psi
    prob = np.mean(vecs[:, cluster] ** 2, axis=1)
    mass = np.array(
        [
            prob[_well_support(well, instance.n)[distances_from(well.center)]].sum()
            for well in instance.wells
        ]
    )
    total = mass.sum()
    occupations = mass / total if total > 0 else mass
    if cluster.size > 1:
        log.debug("Degenerate ground space", size=int(cluster.size), s=s)
    return GroundState(
        energy=result.ground, vector=psi, occupations=occupations, degeneracy=int(cluster.size)
    )


def expand_radial_state(phi: np.ndarray, center: BitString) -> np.ndarray:
    """Embed a sigma=0 radial state phi(r) around ``center`` into the 2^n basis."""
    n = center.n
    dist = distances_from(center)
    table = log_binomial_table(n)
    return np.asarray(phi, dtype=float)[dist] * np.exp(-0.5 * table[n, dist])
