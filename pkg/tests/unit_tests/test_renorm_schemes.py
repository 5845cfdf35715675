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

import math

import pytest

from zeta_series_lab.common import InvalidSpecError
from zeta_series_lab.renorm_schemes import (
    FACTOR_PAIRS,
    RenormParams,
    SchemeFactor,
    alpha_from_bare,
    alpha_minimal_subtraction,
    bare_from_alpha,
    ms_to_msbar_ratio,
    scheme_divergence,
)

FOUR_PI_SQUARED = (4 * math.pi) ** 2


@pytest.mark.parametrize("mu", [0.5, 1.0, 2.0, 91.1876])
def test_four_dimensions_is_scale_free(mu) -> None:
    alpha = alpha_from_bare(RenormParams(mu=mu, epsilon=0.0, e0=1.0))
    assert alpha == pytest.approx(1 / FOUR_PI_SQUARED, rel=1e-12)
    assert alpha == alpha_from_bare(RenormParams(mu=1.0, epsilon=0.0, e0=1.0))


def test_dimension() -> None:
    p = RenormParams(mu=1.0, epsilon=0.1, e0=1.0)
    assert p.d + 2 * p.epsilon == pytest.approx(4.0, abs=1e-15)
    assert p.bare_coupling == pytest.approx(1 / (4 * math.pi) ** 1.9, rel=1e-14)


def test_factor_choice_is_second_order() -> None:
    p = RenormParams(mu=2.0, epsilon=0.01, e0=1.0)
    ratio = alpha_from_bare(p, SchemeFactor.GAMMA_ONE_PLUS) / alpha_from_bare(
        p, SchemeFactor.EXP_GAMMA_EPS
    )
    assert ratio - 1 == pytest.approx(math.pi**2 * 0.01**2 / 12, rel=0.05)


@pytest.mark.parametrize("factor", list(SchemeFactor))
@pytest.mark.parametrize("epsilon", [-0.2, 0.0, 0.05, 0.3])
def test_matched_roundtrip(factor, epsilon) -> None:
    p = RenormParams(mu=3.0, epsilon=epsilon, e0=0.3)
    recovered = bare_from_alpha(alpha_from_bare(p, factor), p, factor=factor)
    assert abs(recovered / p.bare_coupling - 1) < 1e-12


def test_mixed_roundtrip_defect() -> None:
    epsilon = 0.05
    p = RenormParams(mu=1.5, epsilon=epsilon, e0=1.0)
    alpha = alpha_from_bare(p, SchemeFactor.EXP_GAMMA_EPS)
    recovered = bare_from_alpha(alpha, p, factor=SchemeFactor.GAMMA_ONE_PLUS)
    defect = abs(recovered / p.bare_coupling - 1)
    assert defect == pytest.approx(math.pi**2 * epsilon**2 / 12, rel=0.3)


def test_z_alpha_scales_bare_coupling() -> None:
    p = RenormParams(mu=2.0, epsilon=0.1, e0=1.0)
    alpha = alpha_from_bare(p)
    assert bare_from_alpha(alpha, p, z_alpha=2.0) == pytest.approx(
        2 * bare_from_alpha(alpha, p), rel=1e-15
    )
    for z_alpha in [0.0, -1.0]:
        with pytest.raises(InvalidSpecError):
            bare_from_alpha(alpha, p, z_alpha=z_alpha)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"mu": 0.0, "epsilon": 0.1, "e0": 1.0},
        {"mu": -1.0, "epsilon": 0.1, "e0": 1.0},
        {"mu": 1.0, "epsilon": 0.5, "e0": 1.0},
        {"mu": 1.0, "epsilon": -0.7, "e0": 1.0},
    ],
)
def test_invalid_params(kwargs) -> None:
    with pytest.raises(InvalidSpecError):
        RenormParams(**kwargs)


@pytest.mark.parametrize("c", [2.0, 10.0])
@pytest.mark.parametrize("epsilon", [0.2, -0.1])
def test_scale_change_compensated_by_bare_charge(c, epsilon) -> None:
    base = alpha_from_bare(RenormParams(mu=1.0, epsilon=epsilon, e0=0.7))
    scaled = alpha_from_bare(RenormParams(mu=c, epsilon=epsilon, e0=0.7 * c**epsilon))
    assert scaled == pytest.approx(base, rel=1e-12)


@pytest.mark.parametrize("factor", list(SchemeFactor))
def test_factors_tend_to_one(factor) -> None:
    assert factor.evaluate(0.0) == pytest.approx(1.0, abs=1e-10)
    assert factor.evaluate(1e-12) == pytest.approx(1.0, abs=1e-10)


def test_minimal_subtraction() -> None:
    p = RenormParams(mu=2.0, epsilon=0.1, e0=1.0)
    assert alpha_minimal_subtraction(
        RenormParams(mu=1.0, epsilon=0.0, e0=1.0)
    ) == pytest.approx(1 / (4 * math.pi), rel=1e-15)
    expected = (4 * math.pi) ** -0.1 * math.exp(pytest.euler_gamma * 0.1)
    assert ms_to_msbar_ratio(p) == pytest.approx(expected, rel=1e-10)


def test_scheme_table_at_zero() -> None:
    (row,) = scheme_divergence([0.0]).rows
    assert all(d <= 1e-10 for d in row.differences.values())
    assert set(row.differences) == set(FACTOR_PAIRS)


def test_scheme_table_is_quadratic() -> None:
    table = scheme_divergence([0.1, 0.01, 0.001])
    row = table.rows[1]
    difference = row.differences[
        (SchemeFactor.EXP_GAMMA_EPS, SchemeFactor.GAMMA_ONE_PLUS)
    ]
    assert difference == pytest.approx(8.17e-5, rel=0.03)
    for slope in table.slopes().values():
        assert 1.8 <= slope <= 2.2


def test_scheme_table_preconditions() -> None:
    with pytest.raises(ValueError):
        scheme_divergence([0.0, 0.1]).slopes()
    with pytest.raises(InvalidSpecError):
        scheme_divergence([0.6])
