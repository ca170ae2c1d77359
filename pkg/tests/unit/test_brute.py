"""Unit tests for the 2^n brute-force oracle."""

import numpy as np
import pytest
from scipy.sparse.linalg import ArpackNoConvergence

from spectra.brute import (
    ARPACK_ATTEMPTS,
    brute_force_ground_state,
    brute_force_spectrum,
    distances_from,
    expand_radial_state,
    hamiltonian_matrix,
)
from spectra.exact import solve_single_well
from wells.errors import IncompatibleMethodError, SolverError, ValidationError
from wells.settings import get_settings
from wells.types import BitString, ProblemInstance, ScheduleTag, StepWell, WellSpec


def _point(center: str, depth: float) -> WellSpec:
    return WellSpec(center=BitString.from_str(center), profile=StepWell(depth=depth, radius=0))


@pytest.fixture(autouse=True)
def _clear_settings_cache():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


class TestHamiltonian:
    def test_distances(self):
        dist = distances_from(BitString.from_str("101"))
        assert dist[0b101] == 0
        assert dist[0b010] == 3
        assert dist[0b100] == 1

    def test_matrix_symmetric_with_driver_entries(self):
        inst = ProblemInstance(n=3, wells=(_point("000", -1.0),))
        H = hamiltonian_matrix(inst, 0.4)
        np.testing.assert_allclose(H, H.T)
        assert H[0, 0] == pytest.approx(-0.4)
        assert H[0, 1] == pytest.approx(-0.6 / 3)
        assert H[0, 3] == 0.0

    def test_free_driver_ground(self):
        result = brute_force_spectrum(ProblemInstance(n=5), 0.3, m=2)
        assert result.eigenvalues[0] == pytest.approx(-0.7)
        assert result.eigenvalues[1] == pytest.approx(-0.7 * 3 / 5)

    def test_driver_off_sorts_diagonal(self):
        inst = ProblemInstance(n=3, wells=(_point("000", -1.0), _point("111", -2.0)))
        result = brute_force_spectrum(inst, 1.0, m=3)
        np.testing.assert_allclose(result.eigenvalues, [-2.0, -1.0, 0.0])

    def test_size_cap(self, monkeypatch):
        monkeypatch.setenv("WELLGAP_BRUTE_MAX_N", "4")
        with pytest.raises(IncompatibleMethodError):
            brute_force_spectrum(ProblemInstance(n=5), 0.5)

    def test_eigen_count(self):
        with pytest.raises(ValidationError):
            brute_force_spectrum(ProblemInstance(n=2), 0.5, m=5)

    def test_iterative_path_matches_dense(self, monkeypatch):
        inst = ProblemInstance(n=7, wells=(_point("0000000", -2.0), _point("1110000", -1.5)))
        dense = brute_force_spectrum(inst, 0.6, m=2).eigenvalues
        monkeypatch.setenv("WELLGAP_DENSE_MAX_N", "4")
        get_settings.cache_clear()
        sparse = brute_force_spectrum(inst, 0.6, m=2).eigenvalues
        np.testing.assert_allclose(sparse, dense, atol=1e-9)

    def test_iterative_path_repeatable(self, monkeypatch):
        inst = ProblemInstance(n=8, wells=(_point("00000000", -1.0), _point("11110000", -1.0)))
        dense = brute_force_spectrum(inst, 0.5, m=2).eigenvalues
        monkeypatch.setenv("WELLGAP_DENSE_MAX_N", "4")
        get_settings.cache_clear()
        first = brute_force_spectrum(inst, 0.5, m=2).eigenvalues
        second = brute_force_spectrum(inst, 0.5, m=2).eigenvalues
        np.testing.assert_allclose(first, second, rtol=0.0, atol=1e-13)
        np.testing.assert_allclose(first, dense, atol=1e-9)

    def test_lanczos_failure_is_solver_error(self, monkeypatch):
        calls = []

        def no_convergence(*args, **kwargs):
            calls.append(kwargs["ncv"])
            raise ArpackNoConvergence("no convergence", np.array([]), np.zeros((0, 0)))

        monkeypatch.setattr("spectra.brute.eigsh", no_convergence)
        monkeypatch.setenv("WELLGAP_DENSE_MAX_N", "4")
        get_settings.cache_clear()
        inst = ProblemInstance(n=6, wells=(_point("000000", -1.0),))
        with pytest.raises(SolverError) as excinfo:
            brute_force_spectrum(inst, 0.5)
        assert excinfo.value.details["n"] == 6
        assert len(calls) == ARPACK_ATTEMPTS
        assert calls == sorted(calls)


class TestGauge:
    def test_xor_of_every_center_keeps_spectrum(self):
        wells = (
            WellSpec(center=BitString.from_str("000000"), profile=StepWell(depth=-2.0, radius=1)),
            WellSpec(
                center=BitString.from_str("110100"),
                profile=StepWell(depth=-1.5, radius=0),
                schedule=ScheduleTag.RAMP_DOWN,
            ),
            _point("011011", -1.2),
        )
        mask = BitString.from_str("101101")
        moved = tuple(
            WellSpec(center=w.center.xor(mask), profile=w.profile, schedule=w.schedule)
            for w in wells
        )
        for s in (0.3, 0.7):
            before = brute_force_spectrum(ProblemInstance(n=6, wells=wells), s, m=4)
            after = brute_force_spectrum(ProblemInstance(n=6, wells=moved), s, m=4)
            np.testing.assert_allclose(after.eigenvalues, before.eigenvalues, atol=1e-10)


class TestGroundState:
    def test_radial_expansion_matches(self):
        well = WellSpec(
            center=BitString.from_str("0110100"), profile=StepWell(depth=-2.0, radius=1)
        )
        inst = ProblemInstance(n=7, wells=(well,))
        radial = solve_single_well(7, well, 0.5, 0)
        assert radial.eigenvectors is not None
        expanded = expand_radial_state(radial.eigenvectors[:, 0], well.center)
        ground = brute_force_ground_state(inst, 0.5)
        assert ground.energy == pytest.approx(radial.ground, abs=1e-10)
        assert float(expanded @ expanded) == pytest.approx(1.0)
        np.testing.assert_allclose(ground.vector, expanded, atol=1e-8)
        np.testing.assert_allclose(ground.occupations, [1.0])

    def test_symmetric_wells_share_occupation(self):
        inst = ProblemInstance(n=6, wells=(_point("000000", -3.0), _point("111111", -3.0)))
        ground = brute_force_ground_state(inst, 0.9)
        np.testing.assert_allclose(ground.occupations, [0.5, 0.5], atol=1e-9)

    def test_degenerate_ground_space_averaged(self):
        inst = ProblemInstance(n=4, wells=(_point("0000", -1.0), _point("1111", -1.0)))
        ground = brute_force_ground_state(inst, 1.0)
        assert ground.degeneracy == 2
        np.testing.assert_allclose(ground.occupations, [0.5, 0.5])

    def test_deeper_well_dominates(self):
        inst = ProblemInstance(n=6, wells=(_point("000000", -3.0), _point("111000", -1.0)))
        ground = brute_force_ground_state(inst, 0.8)
        assert ground.occupations[0] > 0.9
        assert ground.occupations.sum() == pytest.approx(1.0)
