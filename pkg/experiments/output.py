"""CSV output: header row, comma delimiter, 17 significant digits, LF line endings."""

from __future__ import annotations

import csv
import sys
from collections.abc import Iterable, Mapping, Sequence
from enum import Enum
from pathlib import Path
from typing import Any, TextIO

from pydantic import BaseModel

from wells.errors import ConfigurationError

_SOURCE = "experiments.output"


def format_value(value: Any) -> str:
    """Render one CSV field; missing values are empty."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _write(stream: TextIO, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    writer = csv.writer(stream, delimiter=",", lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(v) for v in row])


def _open(path: Path) -> TextIO:
    try:
        return path.open("w", encoding="utf-8", newline="")
    except OSError as exc:
        raise ConfigurationError(
            f"cannot write output file {path}: {exc.strerror}",
            source_module=_SOURCE,
            config_key="out",
        ) from exc


def write_rows(
    rows: Sequence[BaseModel], path: Path | None = None, header: Sequence[str] = ()
) -> None:
    """Write model rows as CSV to ``path`` (stdout when None)."""
    if rows:
        header = list(type(rows[0]).model_fields)
    values = [[getattr(row, name) for name in header] for row in rows]
    if path is None:
        _write(sys.stdout, header, values)
        return
    with _open(path) as stream:
        _write(stream, header, values)


def write_summary(summary: Mapping[str, Any], path: Path | None = None) -> None:
    """Write a two-column key,value CSV."""
    values = [[key, value] for key, value in summary.items()]
    if path is None:
        _write(sys.stdout, ["key", "value"], values)
        return
    with _open(path) as stream:
        _write(stream, ["key", "value"], values)


def summary_path(out: Path | None) -> Path | None:
    """Companion summary file next to ``out``."""
    if out is None:
        return None
    return out.with_name(f"{out.stem}.summary.csv")
