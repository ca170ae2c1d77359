"""Unit tests for the Ising-to-wells mapping."""

import numpy as np
import pytest

from experiments.ising import (
    PAULI_X,
    PAULI_Z,
    build_instance,
    calibrate_depths,
    encode_center,
    ground_distribution,
    ising_hamiltonian,
    pauli_term,
    run_ising_map,
    state_label,
)
from experiments.types import IsingMapParams
from wells.errors import CalibrationError, ValidationError


@pytest.fixture
def two_spins():
    return IsingMapParams(L=2, J=1.0, B=0.05, alpha=10.0, s_star=0.95, n=5, m=2)


class TestEncoding:
    def test_block_repetition(self):
        assert str(encode_center(5, 3, 2, 8)) == "11001100"
        assert str(encode_center(0, 3, 3, 10)) == "0000000000"
        assert str(encode_center(7, 3, 3, 10)) == "1111111110"

    def test_state_label(self):
        assert state_label(2, 3) == "010"

    def test_instance(self, two_spins):
        inst = build_instance(two_spins, np.array([-1.0, -2.0, -3.0, -4.0]))
        assert [str(c) for c in inst.centers] == ["00000", "00110", "11000", "11110"]
        assert all(w.profile.radius == 0 for w in inst.wells)
        assert inst.wells[3].profile.depth == -4.0


class TestHamiltonian:
    def test_pauli_term_ordering(self):
        term = pauli_term(2, {0: PAULI_Z})
        np.testing.assert_allclose(np.diag(term), [1.0, 1.0, -1.0, -1.0])
        np.testing.assert_allclose(pauli_term(1, {0: PAULI_X}), PAULI_X)

    def test_single_spin(self):
        H = ising_hamiltonian(IsingMapParams(L=1, B=0.2, alpha=3.0, n=3, m=1))
        np.testing.assert_allclose(H, [[-3.0, -0.2], [-0.2, -3.0]])

    def test_two_spin_diagonal(self, two_spins):
        H = ising_hamiltonian(two_spins)
        np.testing.assert_allclose(np.diag(H), [-11.0, -9.0, -9.0, -11.0])
        np.testing.assert_allclose(H, H.T)
        assert H[0, 1] == pytest.approx(-0.05)
        assert H[0, 3] == 0.0


class TestGroundDistribution:
    def test_degenerate_ground_space(self):
        prob = ground_distribution(np.array([-1.0, -1.0, 0.0]), np.eye(3))
        np.testing.assert_allclose(prob, [0.5, 0.5, 0.0])

    def test_single_ground_state(self):
        v = np.array([[0.6, 0.8], [0.8, -0.6]])
        np.testing.assert_allclose(ground_distribution(np.array([-2.0, 1.0]), v), [0.36, 0.64])


class TestCalibration:
    def test_diagonal_matches_target(self, two_spins):
        depths, system, H_eff, iterations = calibrate_depths(two_spins)
        assert iterations >= 1
        assert system.dim == 4
        np.testing.assert_allclose(np.diag(H_eff), [-11.0, -9.0, -9.0, -11.0], atol=1e-9)
        assert np.all(depths < 0.0)

    def test_positive_diagonal_rejected(self):
        params = IsingMapParams(L=2, J=1.0, alpha=0.5, n=4, m=2)
        with pytest.raises(ValidationError) as exc:
            calibrate_depths(params)
        assert exc.value.validation_rule == "negative_diagonal"

    def test_iteration_cap(self):
        params = IsingMapParams(
            L=2, alpha=10.0, n=5, m=2, tolerance=1e-15, max_iterations=1
        )
        with pytest.raises(CalibrationError) as exc:
            calibrate_depths(params)
        assert exc.value.iterations == 1


class TestRunIsingMap:
    def test_distributions(self, two_spins):
        rows, summary = run_ising_map(two_spins)
        assert [row.state for row in rows] == ["00", "01", "10", "11"]
        p_eff = np.array([row.p_effective for row in rows])
        p_ising = np.array([row.p_ising for row in rows])
        assert p_eff.sum() == pytest.approx(1.0)
        assert p_ising.sum() == pytest.approx(1.0)
        assert p_eff[0] == pytest.approx(p_eff[3], abs=1e-6)
        assert summary["max_probability_error"] < 1e-2
        assert summary["stable_dim"] == 4
        assert all(row.p_adiabatic is not None for row in rows)
        assert "max_adiabatic_error" in summary
