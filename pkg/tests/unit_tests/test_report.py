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
# mypy: disable-error-code="arg-type,attr-defined,no-untyped-def"

import json

import pytest

from zeta_series_lab.common import InvalidSpecError
from zeta_series_lab.report import Report, RunConfig, format_cell, write_report


@pytest.fixture
def report() -> Report:
    report = Report("zeta-series-lab:test/0.1.0", "zeta-series-lab test", ("x", "y"))
    report.add_row(0.1, 1 / 3)
    report.add_row("inf", float("inf"))
    report.summary["count"] = 2
    report.suites["finite"] = True
    return report


def test_config_from_file(tmp_path) -> None:
    path = tmp_path / "lab.cfg"
    path.write_text(
        "# defaults for the nightly run\n"
        "\n"
        "euler_terms = 5000\n"
        "agreement_tolerance=1e-6\n"
        "format = json\n"
    )
    config = RunConfig.from_file(path)
    assert config.euler_terms == 5000
    assert config.agreement_tolerance == 1e-6
    assert config.format == "json"
    assert config.gamma_terms == RunConfig().gamma_terms


@pytest.mark.parametrize(
    "text", ["colour = blue\n", "euler_terms\n", "euler_terms = many\n"]
)
def test_config_file_errors(tmp_path, text) -> None:
    path = tmp_path / "lab.cfg"
    path.write_text(text)
    with pytest.raises(InvalidSpecError):
        RunConfig.from_file(path)


def test_config_overrides() -> None:
    config = RunConfig(seed=3).with_overrides(seed=None, workers=4, format="json")
    assert (config.seed, config.workers, config.format) == (3, 4, "json")


@pytest.mark.parametrize(
    "kwargs",
    [
        {"agreement_tolerance": 0.0},
        {"euler_terms": 0},
        {"format": "xml"},
        {"workers": 0},
    ],
)
def test_config_validation(kwargs) -> None:
    with pytest.raises(InvalidSpecError):
        RunConfig(**kwargs)


def test_format_cell() -> None:
    assert format_cell(None) == ""
    assert format_cell(True) == "true"
    assert format_cell(0.1) == "0.10000000000000001"
    assert format_cell(3) == "3"
    assert format_cell("Absolute") == "Absolute"


def test_csv(report) -> None:
    lines = report.to_csv().splitlines()
    assert lines[0] == "# tool_version: zeta-series-lab:test/0.1.0"
    assert lines[1] == "# command: zeta-series-lab test"
    assert lines[2] == "x,y"
    assert lines[3] == "0.10000000000000001,0.33333333333333331"
    assert lines[4] == "inf,inf"
    assert lines[5:] == ["# summary count: 2", "# suite finite: pass"]


def test_json(report) -> None:
    payload = json.loads(report.render("json"))
    assert payload["columns"] == ["x", "y"]
    assert payload["rows"][1] == {"x": "inf", "y": None}
    assert payload["summary"] == {"count": 2}
    assert payload["passed"] is True


def test_row_width_and_failures(report) -> None:
    with pytest.raises(ValueError):
        report.add_row(1.0)
    report.suites["other"] = False
    assert not report.passed
    with pytest.raises(InvalidSpecError):
        report.render("yaml")


def test_write_report(tmp_path, report, capsys) -> None:
    out = tmp_path / "report.csv"
    write_report(report, RunConfig(out=str(out)))
    assert out.read_text() == report.to_csv()
    write_report(report, RunConfig())
    assert capsys.readouterr().out == report.to_csv()
