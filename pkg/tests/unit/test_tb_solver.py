"""Unit tests for tight-binding assembly and the deflated solve."""

import numpy as np
import pytest

from spectra.exact import exact_low_pair, solve_single_well
from tightbinding.solver import assemble_tb, tb_basis, tb_error_estimate, tb_solve
from tightbinding.states import is_bound, isolated_well_states
from wells.errors import IncompatibleMethodError, ValidationError
from wells.types import BitString, ProblemInstance, ScheduleTag, StepWell, WellSpec


def _step(center: str, depth: float, radius: int = 0, schedule: str = "up") -> WellSpec:
    return WellSpec(
        center=BitString.from_str(center),
        profile=StepWell(depth=depth, radius=radius),
        schedule=ScheduleTag(schedule),
    )


@pytest.fixture
def wide_and_point():
    return ProblemInstance(
        n=10, wells=(_step("0000000000", -5.0, 1), _step("1111110000", -4.9, 0))
    )


@pytest.fixture
def wide_triple():
    return ProblemInstance(
        n=8,
        wells=(
            _step("00000000", -5.0, 2),
            _step("11110000", -5.0, 2),
            _step("00001111", -5.0, 2),
        ),
    )


class TestAssembly:
    def test_order_zero_basis(self, wide_and_point):
        system = assemble_tb(wide_and_point, 0.5, order=0)
        assert system.dim == 2
        assert system.labels() == [(0, 0, (0,)), (1, 0, (0,))]
        assert system.element_count == 3
        np.testing.assert_allclose(np.diag(system.S), [1.0, 1.0])
        np.testing.assert_allclose(system.H, system.H.T)
        assert 0.0 < abs(system.S[0, 1]) < 1.0

    def test_element_count(self, wide_and_point):
        system = assemble_tb(wide_and_point, 0.5, order=1)
        assert system.element_count == system.dim * (system.dim + 1) // 2

    def test_first_order_sectors(self, wide_and_point):
        system = assemble_tb(wide_and_point, 0.5, order=1)
        sectors = {st.pair_sector for st in system.states}
        assert sectors == {(0, 0), (1, 0), (0, 1)}
        assert not system.vc_omitted
        for a, sa in enumerate(system.states):
            for b, sb in enumerate(system.states):
                if sa.pair_sector != sb.pair_sector:
                    assert system.S[a, b] == 0.0
                    assert system.H[a, b] == 0.0

    def test_point_well_excited_state_screened(self, wide_and_point):
        basis = tb_basis(wide_and_point, 0.5, order=1)
        assert all(st.owner == 0 for st in basis if st.order == 1)

    @pytest.mark.parametrize("s", [0.2, 0.5, 0.8])
    def test_each_well_adds_only_its_lower_candidate(self, wide_and_point, s):
        basis = tb_basis(wide_and_point, s, order=1)
        for owner in range(2):
            candidate = isolated_well_states(wide_and_point, owner, s, order=1)[1]
            excited = [st.pair_sector for st in basis if st.order == 1 and st.owner == owner]
            if not is_bound(candidate, wide_and_point, s):
                assert excited == []
            elif candidate.sector == (0,):
                assert excited == [(0, 0)]
            else:
                assert (0, 0) not in excited
                assert set(excited) == {(1, 0), (0, 1)}

    def test_single_well(self):
        inst = ProblemInstance(n=6, wells=(_step("000000", -2.0, 1),))
        system = assemble_tb(inst, 0.5)
        assert system.dim == 2
        np.testing.assert_allclose(system.S, np.eye(2))
        np.testing.assert_allclose(np.diag(system.H), [st.energy for st in system.states])

    def test_wide_wells_with_many_neighbors(self, wide_triple):
        system = assemble_tb(wide_triple, 0.8, order=1)
        decoupled = [a for a, st in enumerate(system.states) if st.pair_sector == (-1, -1)]
        assert decoupled
        assert system.vc_omitted
        for a in decoupled:
            assert system.H[a, a] == pytest.approx(system.states[a].energy)
            assert system.S[a, a] == 1.0
            assert np.count_nonzero(system.S[a]) == 1

    def test_no_wells(self):
        with pytest.raises(IncompatibleMethodError):
            assemble_tb(ProblemInstance(n=4), 0.5)

    def test_order_range(self, wide_and_point):
        with pytest.raises(ValidationError):
            assemble_tb(wide_and_point, 0.5, order=2)


class TestSolve:
    def test_single_well_is_exact(self):
        well = _step("0000000", -2.0, 1)
        inst = ProblemInstance(n=7, wells=(well,))
        diag = tb_solve(inst, 0.4, order=0)
        assert diag.E0 == pytest.approx(solve_single_well(7, well, 0.4, 0).ground)
        E0, E1 = exact_low_pair(inst, 0.4)
        assert diag.gap == pytest.approx(E1 - E0)

    def test_variational_bound(self, wide_and_point):
        for s in (0.3, 0.5, 0.8):
            exact_E0, _ = exact_low_pair(wide_and_point, s)
            for order in (0, 1):
                diag = tb_solve(wide_and_point, s, order=order, deflate=False)
                assert diag.E0 >= exact_E0 - 1e-10

    def test_gamma_tilde(self, wide_and_point):
        diag = tb_solve(wide_and_point, 0.7)
        assert diag.E1 is not None
        assert diag.gamma_tilde == pytest.approx(
            diag.E1 - diag.E0 - np.sqrt(2.0) * diag.error_estimate
        )
        assert diag.resolved == (diag.gamma_tilde > 0.0)
        assert diag.stable_dim == 2

    def test_without_deflation_on_well_conditioned_pencil(self, wide_and_point):
        deflated = tb_solve(wide_and_point, 0.6, epsilon=0.1)
        naive = tb_solve(wide_and_point, 0.6, deflate=False)
        assert naive.E0 == pytest.approx(deflated.E0, abs=1e-10)
        assert naive.E1 == pytest.approx(deflated.E1, abs=1e-10)

    @pytest.mark.parametrize("order", [0, 1])
    def test_relabeling_wells(self, wide_and_point, order):
        swapped = ProblemInstance(n=10, wells=wide_and_point.wells[::-1])
        for s in (0.4, 0.6, 0.8):
            base = tb_solve(wide_and_point, s, order=order)
            other = tb_solve(swapped, s, order=order)
            assert other.E0 == pytest.approx(base.E0, abs=1e-9)
            assert other.E1 == pytest.approx(base.E1, abs=1e-9)
            assert other.error_estimate == pytest.approx(base.error_estimate, abs=1e-9)

    def test_relabeling_three_wells(self, wide_triple):
        w0, w1, w2 = wide_triple.wells
        rotated = ProblemInstance(n=8, wells=(w2, w0, w1))
        for s in (0.5, 0.8):
            base = tb_solve(wide_triple, s)
            other = tb_solve(rotated, s)
            assert other.E0 == pytest.approx(base.E0, abs=1e-9)
            assert other.E1 == pytest.approx(base.E1, abs=1e-9)

    def test_error_estimate_nonnegative(self, wide_and_point):
        system = assemble_tb(wide_and_point, 0.5)
        assert tb_error_estimate(wide_and_point, 0.5, system.states) >= 0.0

    def test_many_wells_flagged(self, wide_triple):
        diag = tb_solve(wide_triple, 0.8, order=1)
        assert diag.vc_omitted
        assert diag.stable_dim >= 1
