# Copyright 2024 Google LLC
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Run configuration and the CSV/JSON report every subcommand emits."""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import logging
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from .common import InvalidSpecError

logger = logging.getLogger(__name__)

DEFAULT_FORMAT = "csv"
FORMATS = ("csv", "json")
NUMBER_FORMAT = ".17g"

Cell = Union[str, int, float, bool, None]


@dataclass(frozen=True)
class RunConfig:
    """Defaults shared by every subcommand.

    Values come from the dataclass defaults, then from a ``key=value`` file
    given with ``--config``, then from explicit command-line flags.
    """

    euler_terms: int = 1_000_000
    gamma_terms: int = 100_000
    dirichlet_terms: int = 10_000
    rearrange_steps: int = 100_000
    euler_spread_tolerance: float = 2e-6
    digamma_tolerance: float = 1e-4
    agreement_tolerance: float = 1e-8
    contour_tolerance: float = 1e-5
    zero_tolerance: float = 1e-6
    slope_tolerance: float = 0.2
    roundtrip_tolerance: float = 1e-12
    format: str = DEFAULT_FORMAT
    out: Optional[str] = None
    seed: int = 0
    workers: int = 1

    def __post_init__(self) -> None:
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if f.name.endswith("_tolerance") and not value > 0:
                raise InvalidSpecError(f.name + " must be positive, got " + str(value))
            if f.name.endswith(("_terms", "_steps")) and value < 1:
                raise InvalidSpecError(
                    f.name + " must be at least 1, got " + str(value)
                )
        if self.format not in FORMATS:
            raise InvalidSpecError(
                "format must be one of " + ", ".join(FORMATS) + ", got " + self.format
            )
        if self.workers < 1:
            raise InvalidSpecError("workers must be at least 1")

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> RunConfig:
        """Read ``key=value`` lines; blank lines and ``#`` comments are skipped."""
        defaults = cls()
        known = {f.name for f in dataclasses.fields(cls)}
        values: Dict[str, Any] = {}
        text = Path(path).read_text(encoding="utf-8")
        for number, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, raw = line.partition("=")
            key, raw = key.strip(), raw.strip()
            if not sep or key not in known:
                raise InvalidSpecError(
                    "Invalid config entry on line "
                    + str(number)
                    + " of "
                    + str(path)
                    + ": "
                    + line
                )
            values[key] = _coerce(key, raw, getattr(defaults, key))
        logger.debug("Loaded %d config values from %s", len(values), path)
        return cls(**values)

    def with_overrides(self, **overrides: Any) -> RunConfig:
        """A copy with every override that is not None applied."""
        return dataclasses.replace(
            self, **{k: v for k, v in overrides.items() if v is not None}
        )


def _coerce(key: str, raw: str, default: Any) -> Any:
    if default is None or isinstance(default, str):
        return raw
    try:
        return type(default)(raw)
    except ValueError as e:
        raise InvalidSpecError(
            "Config value for " + key + " is not a " + type(default).__name__
        ) from e


def format_cell(value: Cell) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, NUMBER_FORMAT)
    return str(value)


def _json_cell(value: Cell) -> Cell:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


@dataclass
class Report:
    """Rows of one subcommand run plus a summary and invariant-suite results.

    The report is deterministic: rows keep insertion order, and nothing
    time- or host-dependent is recorded.
    """

    tool_version: str
    command: str
    columns: Tuple[str, ...]
    rows: List[Tuple[Cell, ...]] = field(default_factory=list)
    summary: Dict[str, Cell] = field(default_factory=dict)
    suites: Dict[str, bool] = field(default_factory=dict)

    def add_row(self, *cells: Cell) -> None:
        if len(cells) != len(self.columns):
            raise ValueError(
                "Row has "
                + str(len(cells))
                + " cells, expected "
                + str(len(self.columns))
            )
        self.rows.append(tuple(cells))

    @property
    def passed(self) -> bool:
        return all(self.suites.values())

    def records(self) -> List[Dict[str, Cell]]:
        return [dict(zip(self.columns, row)) for row in self.rows]

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        buffer.write("# tool_version: " + self.tool_version + "\n")
        buffer.write("# command: " + self.command + "\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([format_cell(cell) for cell in row])
        for key, value in self.summary.items():
            buffer.write("# summary " + key + ": " + format_cell(value) + "\n")
        for name, ok in self.suites.items():
            buffer.write("# suite " + name + ": " + ("pass" if ok else "fail") + "\n")
        return buffer.getvalue()

    def to_json(self) -> str:
        payload = {
            "tool_version": self.tool_version,
            "command": self.command,
            "columns": list(self.columns),
            "rows": [
                {k: _json_cell(v) for k, v in record.items()}
                for record in self.records()
            ],
            "summary": {k: _json_cell(v) for k, v in self.summary.items()},
            "suites": dict(self.suites),
            "passed": self.passed,
        }
        return json.dumps(payload, indent=2) + "\n"

    def render(self, fmt: str = DEFAULT_FORMAT) -> str:
        if fmt not in FORMATS:
            raise InvalidSpecError("Unknown report format: " + fmt)
        return self.to_json() if fmt == "json" else self.to_csv()


def write_report(report: Report, config: RunConfig) -> None:
    """Write the rendered report to ``config.out``, or stdout when unset."""
    text = report.render(config.format)
    if config.out:
        Path(config.out).write_text(text, encoding="utf-8")
        logger.info("Wrote %d rows to %s", len(report.rows), config.out)
    else:
        sys.stdout.write(text)
