"""Cross-checks of the symmetry-reduced solvers against full 2^n enumeration."""

import math
from itertools import product

import numpy as np
import pytest

from spectra.brute import brute_force_spectrum
from spectra.exact import exact_low_pair, solve_single_well
from spectra.geigen import fix_heiberger
from spectra.symmetry import (
    count_triple_intersections,
    hamming_distance,
    intersection_tensor,
    triple_frame_for,
)
from tightbinding.solver import assemble_tb, tb_solve
from wells.errors import DegenerateOverlapError
from wells.settings import get_settings
from wells.types import (
    BitString,
    ProblemInstance,
    ScheduleTag,
    StepWell,
    TabulatedWell,
    WellSpec,
)

pytestmark = pytest.mark.slow

S_GRID = np.linspace(0.05, 0.95, 17)


def _bits(code: int, n: int) -> BitString:
    return BitString.from_str(format(code, f"0{n}b"))


def _random_instance(rng: np.random.Generator) -> ProblemInstance:
    n = int(rng.integers(4, 13))
    K = int(rng.integers(1, 4))
    codes = rng.choice(2**n, size=K, replace=False)
    wells = tuple(
        WellSpec(
            center=_bits(int(c), n),
            profile=StepWell(
                depth=float(rng.uniform(-6.0, -1.0)), radius=int(rng.integers(0, 3))
            ),
            schedule=ScheduleTag(str(rng.choice(["up", "down"]))),
        )
        for c in codes
    )
    return ProblemInstance(n=n, wells=wells)


@pytest.fixture(autouse=True)
def _iterative_above_ten(monkeypatch):
    monkeypatch.setenv("WELLGAP_DENSE_MAX_N", "10")
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture(scope="module")
def instances():
    rng = np.random.default_rng(2024)
    return [_random_instance(rng) for _ in range(100)]


class TestExactSolvers:
    def test_lowest_pair_matches_brute_force(self, instances):
        for inst in instances:
            for s in S_GRID:
                E0, E1 = exact_low_pair(inst, float(s))
                brute = brute_force_spectrum(inst, float(s), m=2).eigenvalues
                assert E0 == pytest.approx(brute[0], abs=1e-9)
                assert E1 == pytest.approx(brute[1], abs=1e-9)

    def test_first_excited_in_low_sectors(self):
        rng = np.random.default_rng(77)
        for _ in range(500):
            n = int(rng.integers(2, 13))
            values = tuple(float(v) for v in -rng.uniform(0.0, 6.0, size=n + 1))
            well = WellSpec(center=BitString.zeros(n), profile=TabulatedWell(values=values))
            s = float(rng.uniform(0.02, 0.98))
            zero = solve_single_well(n, well, s, 0)
            one = solve_single_well(n, well, s, 1)
            low = min(float(zero.eigenvalues[1]), one.ground)
            for sigma in range(2, n // 2 + 1):
                assert solve_single_well(n, well, s, sigma).ground >= low - 1e-10
            brute = brute_force_spectrum(ProblemInstance(n=n, wells=(well,)), s, m=2)
            assert low == pytest.approx(brute.eigenvalues[1], abs=1e-10)


class TestTightBindingBound:
    def test_variational_on_undeflated_pencils(self, instances):
        checked = 0
        for inst in instances:
            if inst.K < 2:
                continue
            for s in S_GRID:
                exact_E0, _ = exact_low_pair(inst, float(s))
                for order in (0, 1):
                    system = assemble_tb(inst, float(s), order)
                    result = fix_heiberger(system.H, system.S, 0.1)
                    if result.stable_dim != system.dim:
                        continue
                    assert result.eigenvalues[0] >= exact_E0 - 1e-10
                    checked += 1
        assert checked > 0

    def test_variational_with_default_deflation(self, instances):
        checked = 0
        for inst in instances:
            for s in S_GRID:
                exact_E0, exact_E1 = exact_low_pair(inst, float(s))
                for order in (0, 1):
                    try:
                        diag = tb_solve(inst, float(s), order)
                    except DegenerateOverlapError:
                        continue
                    assert diag.E0 >= exact_E0 - 1e-10
                    if diag.E1 is not None:
                        assert diag.E1 >= exact_E1 - 1e-10
                    checked += 1
        assert checked > 2000


class TestIntersectionCounts:
    def test_matches_enumeration(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            n = int(rng.integers(3, 15))
            codes = rng.choice(2**n, size=3, replace=False)
            ci, cj, ck = (_bits(int(c), n) for c in codes)
            frame = triple_frame_for(ci, cj, ck)
            strings = (np.arange(2**n)[:, None] >> np.arange(n - 1, -1, -1)) & 1
            diff_i = strings != np.array(ci.bits)
            mask = np.array(ci.xor(cj).bits, dtype=bool)
            h1 = diff_i[:, mask].sum(axis=1)
            h2 = diff_i[:, ~mask].sum(axis=1)
            rk = (strings != np.array(ck.bits)).sum(axis=1)
            n1 = hamming_distance(ci, cj)
            truth = np.zeros((n1 + 1, n - n1 + 1, n + 1), dtype=np.int64)
            np.add.at(truth, (h1, h2, rk), 1)

            tensor = intersection_tensor(frame)
            np.testing.assert_allclose(tensor, truth, rtol=1e-9, atol=1e-9)
            for a, b, r in product(range(n1 + 1), range(n - n1 + 1), range(n + 1)):
                assert count_triple_intersections(a, b, frame, r, exact=True) == truth[a, b, r]
            sizes = np.outer(
                [math.comb(n1, a) for a in range(n1 + 1)],
                [math.comb(n - n1, b) for b in range(n - n1 + 1)],
            )
            np.testing.assert_allclose(tensor.sum(axis=2), sizes, rtol=1e-9)
