"""Line-oriented configuration format for problem instances and sweeps.

    n = 10
    s_grid = 0.2:0.9:8          # inclusive endpoints, evenly spaced
    method = exact              # brute | exact | tb0 | tb1
    epsilon = 0.1               # Fix-Heiberger tolerance
    driver = down               # a(s) schedule, default down
    well center=0000000000 depth=-5 radius=1 [schedule=up|down|const]
    well center=1111110000 table=v0,v1,...,vn [schedule=...]

``#`` starts a comment; ``;`` separates statements sharing a line.
"""

from __future__ import annotations

import types
import typing
from typing import Any

import pydantic
from pydantic.fields import FieldInfo
import structlog

from wells.errors import ConfigurationError, ValidationError
from wells.settings import get_settings
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

log = structlog.get_logger(__name__)

_SOURCE = "wells.config"
_SCALAR_KEYS = ("n", "s_grid", "method", "epsilon", "driver")
_WELL_KEYS = ("center", "depth", "radius", "table", "schedule")


def _statements(text: str) -> list[tuple[int, str]]:
    out: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        for part in line.split(";"):
            stmt = part.strip()
            if stmt:
                out.append((lineno, stmt))
    return out


def _as_int(value: str, key: str, lineno: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigurationError(
            f"line {lineno}: {key} expects an integer, got {value!r}",
            source_module=_SOURCE,
            line_number=lineno,
            config_key=key,
        ) from None


def _as_float(value: str, key: str, lineno: int) -> float:
    try:
        return float(value)
    except ValueError:
        raise ConfigurationError(
            f"line {lineno}: {key} expects a real number, got {value!r}",
            source_module=_SOURCE,
            line_number=lineno,
            config_key=key,
        ) from None


def _as_schedule(value: str, lineno: int) -> ScheduleTag:
    try:
        return ScheduleTag(value)
    except ValueError:
        raise ConfigurationError(
            f"line {lineno}: schedule must be up, down or const, got {value!r}",
            source_module=_SOURCE,
            line_number=lineno,
            config_key="schedule",
        ) from None


def _parse_well(body: str, lineno: int) -> WellSpec:
    fields: dict[str, str] = {}
    for token in body.split():
        key, sep, value = token.partition("=")
        if not sep or not value:
            raise ConfigurationError(
                f"line {lineno}: expected key=value in well statement, got {token!r}",
                source_module=_SOURCE,
                line_number=lineno,
                config_key="well",
            )
        if key not in _WELL_KEYS:
            raise ConfigurationError(
                f"line {lineno}: unknown well attribute {key!r}",
                source_module=_SOURCE,
                line_number=lineno,
                config_key=key,
            )
        if key in fields:
            raise ConfigurationError(
                f"line {lineno}: well attribute {key!r} given twice",
                source_module=_SOURCE,
                line_number=lineno,
                config_key=key,
            )
        fields[key] = value

    if "center" not in fields:
        raise ConfigurationError(
            f"line {lineno}: well statement needs center=",
            source_module=_SOURCE,
            line_number=lineno,
            config_key="center",
        )
    center = BitString.from_str(fields["center"])

    profile: StepWell | TabulatedWell
    if "table" in fields:
        if "depth" in fields or "radius" in fields:
            raise ConfigurationError(
                f"line {lineno}: table= cannot be combined with depth=/radius=",
                source_module=_SOURCE,
                line_number=lineno,
                config_key="table",
            )
        values = tuple(_as_float(v, "table", lineno) for v in fields["table"].split(","))
        profile = TabulatedWell(values=values)
    else:
        if "depth" not in fields or "radius" not in fields:
            raise ConfigurationError(
                f"line {lineno}: step well needs both depth= and radius=",
                source_module=_SOURCE,
                line_number=lineno,
                config_key="depth" if "depth" not in fields else "radius",
            )
        depth = _as_float(fields["depth"], "depth", lineno)
        radius = _as_int(fields["radius"], "radius", lineno)
        profile = _build(StepWell, depth=depth, radius=radius)

    schedule = _as_schedule(fields.get("schedule", "up"), lineno)
    return WellSpec(center=center, profile=profile, schedule=schedule)


def _build[M: pydantic.BaseModel](model: type[M], **kwargs: Any) -> M:
    """Construct a model, mapping pydantic failures onto ValidationError."""
    try:
        return model(**kwargs)
    except pydantic.ValidationError as exc:
        first = exc.errors()[0]
        field = ".".join(str(p) for p in first.get("loc", ()))
        raise ValidationError(
            f"{model.__name__}: {field}: {first.get('msg', 'invalid value')}",
            source_module=_SOURCE,
            field_name=field,
            received=repr(first.get("input")),
            validation_rule=str(first.get("type", "")),
        ) from None


def _parse_sgrid(value: str, lineno: int) -> SGrid:
    parts = value.split(":")
    if len(parts) != 3:
        raise ConfigurationError(
            f"line {lineno}: s_grid must be <s0>:<s1>:<count>, got {value!r}",
            source_module=_SOURCE,
            line_number=lineno,
            config_key="s_grid",
        )
    start = _as_float(parts[0], "s_grid", lineno)
    stop = _as_float(parts[1], "s_grid", lineno)
    count = _as_int(parts[2], "s_grid", lineno)
    return _build(SGrid, start=start, stop=stop, count=count)


def parse_config(text: str) -> SolveConfig:
    """Parse a full configuration document (instance plus sweep settings)."""
    scalars: dict[str, tuple[int, str]] = {}
    wells: list[WellSpec] = []

    for lineno, stmt in _statements(text):
        if stmt.startswith("well ") or stmt == "well":
            wells.append(_parse_well(stmt[4:], lineno))
            continue
        key, sep, value = stmt.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not value:
            raise ConfigurationError(
                f"line {lineno}: expected '<key> = <value>', got {stmt!r}",
                source_module=_SOURCE,
                line_number=lineno,
            )
        if key not in _SCALAR_KEYS:
            raise ConfigurationError(
                f"line {lineno}: unknown key {key!r}",
                source_module=_SOURCE,
                line_number=lineno,
                config_key=key,
            )
        if key in scalars:
            raise ConfigurationError(
                f"line {lineno}: {key} given twice",
                source_module=_SOURCE,
                line_number=lineno,
                config_key=key,
            )
        scalars[key] = (lineno, value)

    if "n" not in scalars:
        raise ConfigurationError(
            "configuration does not set n", source_module=_SOURCE, config_key="n"
        )
    n = _as_int(scalars["n"][1], "n", scalars["n"][0])

    driver = ScheduleTag.RAMP_DOWN
    if "driver" in scalars:
        driver = _as_schedule(scalars["driver"][1], scalars["driver"][0])

    instance = _build(ProblemInstance, n=n, wells=tuple(wells), driver_schedule=driver)

    s_grid = SGrid()
    if "s_grid" in scalars:
        s_grid = _parse_sgrid(scalars["s_grid"][1], scalars["s_grid"][0])

    method = SolveMethod.EXACT
    if "method" in scalars:
        lineno, value = scalars["method"]
        try:
            method = SolveMethod(value)
        except ValueError:
            raise ConfigurationError(
                f"line {lineno}: method must be brute, exact, tb0 or tb1, got {value!r}",
                source_module=_SOURCE,
                line_number=lineno,
                config_key="method",
            ) from None

    epsilon = get_settings().epsilon
    if "epsilon" in scalars:
        epsilon = _as_float(scalars["epsilon"][1], "epsilon", scalars["epsilon"][0])

    config = _build(
        SolveConfig, instance=instance, s_grid=s_grid, method=method, epsilon=epsilon
    )
    log.debug("Configuration parsed", n=n, wells=len(wells), method=method.value)
    return config


def parse_problem(text: str) -> ProblemInstance:
    """Parse a configuration document and return only its problem instance."""
    return parse_config(text).instance


def serialize_problem(instance: ProblemInstance) -> str:
    lines = [f"n = {instance.n}", f"driver = {instance.driver_schedule.value}"]
    for well in instance.wells:
        match well.profile:
            case StepWell(depth=depth, radius=radius):
                body = f"depth={depth!r} radius={radius}"
            case TabulatedWell(values=values):
                body = "table=" + ",".join(repr(float(v)) for v in values)
        lines.append(f"well center={well.center} {body} schedule={well.schedule.value}")
    return "\n".join(lines) + "\n"


def serialize_config(config: SolveConfig) -> str:
    grid = config.s_grid
    head = [
        f"s_grid = {grid.start!r}:{grid.stop!r}:{grid.count}",
        f"method = {config.method.value}",
        f"epsilon = {config.epsilon!r}",
    ]
    return "\n".join(head) + "\n" + serialize_problem(config.instance)


def _tuple_depth(info: FieldInfo) -> int:
    """How many tuple levels a field nests: 0 scalar, 1 list, 2 matrix."""
    annotation: Any = info.annotation
    depth = 0
    while True:
        origin = typing.get_origin(annotation)
        args = [a for a in typing.get_args(annotation) if a not in (type(None), Ellipsis)]
        if origin is tuple and args:
            depth += 1
        elif origin not in (typing.Union, types.UnionType) or not args:
            return depth
        annotation = args[0]


def _param_value(value: str, depth: int) -> Any:
    match depth:
        case 0:
            return value
        case 1:
            return [v.strip() for v in value.split(",") if v.strip()]
    return [[v.strip() for v in row.split(",") if v.strip()] for row in value.split("/")]


def parse_params[M: pydantic.BaseModel](
    text: str, model: type[M], overrides: dict[str, Any] | None = None
) -> M:
    """Parse ``key = value`` statements into an experiment parameter model.

    Tuple-typed fields are comma separated, even with a single entry; a
    matrix separates its rows with ``/``.
    Non-None ``overrides`` win over the text.
    """
    values: dict[str, Any] = {}
    for lineno, stmt in _statements(text):
        key, sep, value = stmt.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not value:
            raise ConfigurationError(
                f"line {lineno}: expected '<key> = <value>', got {stmt!r}",
                source_module=_SOURCE,
                line_number=lineno,
            )
        if key not in model.model_fields:
            raise ConfigurationError(
                f"line {lineno}: unknown key {key!r} for {model.__name__}",
                source_module=_SOURCE,
                line_number=lineno,
                config_key=key,
            )
        values[key] = _param_value(value, _tuple_depth(model.model_fields[key]))
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return _build(model, **values)
