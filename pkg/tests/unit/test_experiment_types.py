"""Unit tests for experiment parameter records."""

import pytest

from experiments.types import (
    GroverPriorParams,
    IsingMapParams,
    RandomBatchParams,
    ScalingParams,
)
from wells.errors import ValidationError


class TestGroverPriorParams:
    def test_defaults(self):
        params = GroverPriorParams()
        assert params.n == 20
        assert params.distance_list() == list(range(21))

    def test_explicit_distances(self):
        assert GroverPriorParams(n=8, distances=(0, 3, 8)).distance_list() == [0, 3, 8]

    def test_distance_out_of_range(self):
        with pytest.raises(ValidationError) as exc:
            GroverPriorParams(n=8, distances=(9,))
        assert exc.value.validation_rule == "distance_range"

    def test_radius_out_of_range(self):
        with pytest.raises(ValidationError):
            GroverPriorParams(n=6, prior_radius=7)


class TestScalingParams:
    def test_range_order(self):
        with pytest.raises(ValidationError) as exc:
            ScalingParams(n_min=12, n_max=10)
        assert exc.value.validation_rule == "n_range"


class TestIsingMapParams:
    def test_uniform_couplings(self):
        params = IsingMapParams(L=3, J=2.0, B=0.5)
        assert params.coupling_matrix() == [[0.0, 2.0, 2.0], [2.0, 0.0, 2.0], [2.0, 2.0, 0.0]]
        assert params.field_vector() == [0.5, 0.5, 0.5]

    def test_explicit_couplings(self):
        params = IsingMapParams(
            L=2, n=6, couplings=((0.0, 1.5), (1.5, 0.0)), field_strengths=(0.1, 0.2)
        )
        assert params.coupling_matrix()[0][1] == 1.5
        assert params.field_vector() == [0.1, 0.2]

    def test_encoding_must_fit(self):
        with pytest.raises(ValidationError) as exc:
            IsingMapParams(L=3, m=4, n=10)
        assert exc.value.validation_rule == "encoding_fits"

    def test_coupling_shape(self):
        with pytest.raises(ValidationError):
            IsingMapParams(L=2, n=6, couplings=((0.0, 1.0),))

    def test_field_count(self):
        with pytest.raises(ValidationError):
            IsingMapParams(L=2, n=6, field_strengths=(0.1,))


class TestRandomBatchParams:
    def test_defaults(self):
        params = RandomBatchParams()
        assert params.runs == 200
        assert (params.n_min, params.n_max) == (4, 10)
        assert (params.K_min, params.K_max) == (2, 10)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"n_min": 8, "n_max": 6},
            {"K_min": 5, "K_max": 3},
            {"depth_min": -1.0, "depth_max": -2.0},
        ],
    )
    def test_empty_ranges(self, kwargs):
        with pytest.raises(ValidationError) as exc:
            RandomBatchParams(**kwargs)
        assert exc.value.validation_rule == "range_order"

    def test_brute_force_reach(self):
        with pytest.raises(ValidationError) as exc:
            RandomBatchParams(n_max=14, K_max=5)
        assert exc.value.validation_rule == "oracle_reach"
        assert RandomBatchParams(n_max=14, K_max=3).n_max == 14
