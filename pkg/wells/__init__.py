# Wells - problem model, configuration format and shared errors

from wells.config import (
    parse_config,
    parse_params,
    parse_problem,
    serialize_config,
    serialize_problem,
)
from wells.errors import (
    CalibrationError,
    ConfigurationError,
    DegenerateOverlapError,
    IncompatibleMethodError,
    InvalidInstanceError,
    SingularPencilError,
    SolverError,
    ValidationError,
    WellGapError,
)
from wells.potential import potential_at, radial_profile, schedule_eval, scheduled_profile
from wells.types import (
    BitString,
    ProblemInstance,
    ScheduleTag,
    SGrid,
    SolveConfig,
    SolveMethod,
    StepWell,
    TabulatedWell,
    WellSpec,
)

__all__ = [
    "BitString",
    "CalibrationError",
    "ConfigurationError",
    "DegenerateOverlapError",
    "IncompatibleMethodError",
    "InvalidInstanceError",
    "ProblemInstance",
    "SGrid",
    "ScheduleTag",
    "SingularPencilError",
    "SolveConfig",
    "SolveMethod",
    "SolverError",
    "StepWell",
    "TabulatedWell",
    "ValidationError",
    "WellGapError",
    "WellSpec",
    "parse_config",
    "parse_params",
    "parse_problem",
    "potential_at",
    "radial_profile",
    "schedule_eval",
    "scheduled_profile",
    "serialize_config",
    "serialize_problem",
]
