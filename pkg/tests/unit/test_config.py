"""Unit tests for the configuration format."""

import pytest

from experiments.types import GroverPriorParams, IsingMapParams
from wells.config import (
    parse_config,
    parse_params,
    parse_problem,
    serialize_config,
    serialize_problem,
)
from wells.errors import ConfigurationError, ValidationError
from wells.types import ScheduleTag, SolveMethod, StepWell, TabulatedWell

TWO_WELLS = """
n = 10
s_grid = 0.2:0.9:8
method = tb1
well center=0000000000 depth=-5 radius=1
well center=1111110000 depth=-4.9 radius=0
"""


class TestParseProblem:
    def test_single_well(self):
        inst = parse_problem("n=10; well center=0000000000 depth=-1 radius=0")
        assert inst.n == 10
        assert inst.K == 1
        assert inst.wells[0].profile == StepWell(depth=-1.0, radius=0)
        assert inst.wells[0].schedule is ScheduleTag.RAMP_UP
        assert inst.driver_schedule is ScheduleTag.RAMP_DOWN

    def test_wide_and_point(self):
        config = parse_config(TWO_WELLS)
        inst = config.instance
        assert inst.K == 2
        assert [str(c) for c in inst.centers] == ["0000000000", "1111110000"]
        assert inst.wells[1].profile == StepWell(depth=-4.9, radius=0)
        assert config.method is SolveMethod.TB1
        assert config.s_grid.count == 8

    def test_comments_and_schedules(self):
        text = """
        # two wells
        n = 3   # qubits
        driver = const
        well center=000 table=-1,-0.5,0,0 schedule=down
        """
        inst = parse_problem(text)
        assert inst.driver_schedule is ScheduleTag.CONSTANT
        assert isinstance(inst.wells[0].profile, TabulatedWell)
        assert inst.wells[0].schedule is ScheduleTag.RAMP_DOWN

    def test_duplicate_centers(self):
        text = "n=3; well center=010 depth=-1 radius=0; well center=010 depth=-2 radius=0"
        with pytest.raises(ValidationError) as exc:
            parse_problem(text)
        assert "duplicate well centers" in exc.value.message

    def test_missing_n(self):
        with pytest.raises(ConfigurationError) as exc:
            parse_problem("well center=01 depth=-1 radius=0")
        assert exc.value.config_key == "n"

    def test_unknown_key_reports_line(self):
        with pytest.raises(ConfigurationError) as exc:
            parse_config("n = 2\nfoo = 1\n")
        assert exc.value.line_number == 2
        assert exc.value.config_key == "foo"

    def test_bad_number(self):
        with pytest.raises(ConfigurationError):
            parse_config("n = ten")

    def test_table_and_depth_conflict(self):
        with pytest.raises(ConfigurationError):
            parse_problem("n=1; well center=0 table=-1,0 depth=-1")

    def test_bad_method(self):
        with pytest.raises(ConfigurationError) as exc:
            parse_config("n = 2\nmethod = tb2")
        assert exc.value.config_key == "method"

    def test_radius_beyond_n_is_validation_error(self):
        with pytest.raises(ValidationError):
            parse_problem("n=2; well center=01 depth=-1 radius=3")


class TestSerialize:
    def test_problem_round_trip(self):
        inst = parse_config(TWO_WELLS).instance
        assert parse_problem(serialize_problem(inst)) == inst

    def test_config_round_trip(self):
        config = parse_config(TWO_WELLS + "epsilon = 0.05\ndriver = up\n")
        assert parse_config(serialize_config(config)) == config


class TestParseParams:
    def test_scalars_and_lists(self):
        params = parse_params(
            "n = 12\ndistances = 0,3,12\nprior_depth = -2.5\nrefine = false\n",
            GroverPriorParams,
        )
        assert params.n == 12
        assert params.distances == (0, 3, 12)
        assert params.prior_depth == -2.5
        assert params.refine is False

    def test_single_entry_list(self):
        params = parse_params("n = 8\ndistances = 5\n", GroverPriorParams)
        assert params.distances == (5,)
        assert params.distance_list() == [5]

    def test_matrix(self):
        params = parse_params(
            "L = 2\ncouplings = 0,1.5/1.5,0\nfield_strengths = 0.1,0.2\nn = 6\n",
            IsingMapParams,
        )
        assert params.coupling_matrix() == [[0.0, 1.5], [1.5, 0.0]]
        assert params.field_vector() == [0.1, 0.2]

    def test_overrides_win(self):
        params = parse_params("n = 12", GroverPriorParams, {"n": 8, "prior_radius": None})
        assert params.n == 8
        assert params.prior_radius == 0

    def test_unknown_key(self):
        with pytest.raises(ConfigurationError) as exc:
            parse_params("depth = -1", GroverPriorParams)
        assert exc.value.config_key == "depth"

    def test_invalid_value_is_validation_error(self):
        with pytest.raises(ValidationError):
            parse_params("n = 2", GroverPriorParams)
