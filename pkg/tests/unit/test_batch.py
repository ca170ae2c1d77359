"""Unit tests for random-instance batches."""

import numpy as np
import pytest

from experiments.batch import (
    CDF_QUANTILES,
    generate_instance,
    oracle_gap,
    run_random_batch,
    summarize,
)
from experiments.types import BatchRow, RandomBatchParams
from spectra.brute import brute_force_spectrum
from wells.types import ScheduleTag, SolveMethod


def _row(estimate: float | None, error: float | None, resolved: bool = True) -> BatchRow:
    return BatchRow(
        run=0,
        n=4,
        K=2,
        s=0.5,
        oracle=SolveMethod.EXACT,
        oracle_gap=0.1,
        relative_error=error,
        relative_estimate=estimate,
        resolved=resolved,
    )


@pytest.fixture
def small_params():
    return RandomBatchParams(runs=3, n_min=4, n_max=6, K_min=2, K_max=4, s_count=3, seed=11)


class TestGenerateInstance:
    def test_ranges(self, small_params):
        rng = np.random.default_rng(5)
        for _ in range(20):
            inst = generate_instance(rng, small_params)
            assert 4 <= inst.n <= 6
            assert 2 <= inst.K <= 4
            for well in inst.wells:
                assert well.profile.radius == 0
                assert -5.99 <= well.profile.depth <= -1.0
                assert well.schedule is ScheduleTag.RAMP_UP

    def test_seeded(self, small_params):
        a = generate_instance(np.random.default_rng(9), small_params)
        b = generate_instance(np.random.default_rng(9), small_params)
        assert a == b

    def test_well_count_capped_by_cube(self):
        params = RandomBatchParams(n_min=2, n_max=2, K_min=4, K_max=10)
        inst = generate_instance(np.random.default_rng(0), params)
        assert inst.K == 4


class TestOracle:
    def test_many_wells_use_brute_force(self, small_params):
        rng = np.random.default_rng(3)
        inst = generate_instance(rng, small_params.model_copy(update={"K_min": 4}))
        assert inst.K == 4
        ev = brute_force_spectrum(inst, 0.5, m=2).eigenvalues
        assert oracle_gap(inst, 0.5) == pytest.approx(ev[1] - ev[0])


class TestSummarize:
    def test_bounded_fraction_and_quantiles(self):
        rows = [_row(0.2, 0.1), _row(0.3, 0.05), _row(0.1, 0.4), _row(0.5, 0.0)]
        rows.append(_row(None, 0.1, resolved=False))
        summary = summarize(rows)
        assert summary["points"] == 5
        assert summary["resolved"] == 4
        assert summary["bounded_fraction"] == pytest.approx(0.75)
        margins = np.array([0.1, 0.25, -0.3, 0.5])
        for q in CDF_QUANTILES:
            assert summary[f"margin_q{q:g}"] == pytest.approx(np.quantile(margins, q))

    def test_nothing_resolved(self):
        summary = summarize([_row(None, None, resolved=False)])
        assert summary["resolved"] == 0
        assert summary["bounded_fraction"] is None
        assert "margin_q0.5" not in summary


class TestRunRandomBatch:
    def test_rows_per_run(self, small_params):
        rows, summary = run_random_batch(small_params)
        assert len(rows) == 9
        assert [row.run for row in rows] == [0, 0, 0, 1, 1, 1, 2, 2, 2]
        assert summary["points"] == 9
        for row in rows:
            assert row.oracle is (SolveMethod.EXACT if row.K <= 3 else SolveMethod.BRUTE)
            assert row.oracle_gap > 0.0

    def test_deterministic_across_jobs(self, small_params):
        assert run_random_batch(small_params, jobs=1) == run_random_batch(small_params, jobs=2)
