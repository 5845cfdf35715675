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
from scipy import special

from zeta_series_lab.common import PoleError
from zeta_series_lab.gamma_euler import (
    EulerGammaMethod,
    GammaMethod,
    digamma_near_origin,
    euler_gamma,
    euler_gamma_corrected,
    euler_gamma_tail,
    gamma_value,
    gauss_gamma,
    log_gamma_derivative,
    pi_function,
    weierstrass_gamma,
    weierstrass_log_inv_gamma,
)


def test_euler_gamma_methods_agree() -> None:
    values = [euler_gamma(method, 1_000_000) for method in EulerGammaMethod]
    for value in values:
        assert abs(value - pytest.euler_gamma) < 1e-5
    assert max(values) - min(values) <= 2e-6


@pytest.mark.parametrize(
    "method,expected",
    [
        (EulerGammaMethod.HARMONIC_MINUS_LOG, 1.0),
        (EulerGammaMethod.TAIL_PLUS_LOG_DIFF, 1.0),
        (EulerGammaMethod.FULL_LOG_DIFF_SERIES, 1.0 - math.log(2.0)),
    ],
)
def test_euler_gamma_single_term(method, expected) -> None:
    assert euler_gamma(method, 1) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("method", list(EulerGammaMethod))
def test_euler_gamma_tail_closes_the_gap(method) -> None:
    n = 1000
    raw_gap = abs(euler_gamma(method, n) - pytest.euler_gamma)
    corrected = euler_gamma(method, n) + euler_gamma_tail(method, n)
    assert abs(corrected - pytest.euler_gamma) < raw_gap / 100


def test_euler_gamma_corrected() -> None:
    assert euler_gamma_corrected() == pytest.approx(pytest.euler_gamma, abs=1e-10)


def test_euler_gamma_needs_terms() -> None:
    with pytest.raises(ValueError):
        euler_gamma(EulerGammaMethod.HARMONIC_MINUS_LOG, 0)


def test_gauss_gamma_half() -> None:
    result = gauss_gamma(0.5, 1_000_000)
    assert result.method == GammaMethod.GAUSS_LIMIT
    assert result.n_used == 1_000_000
    assert abs(result.value - math.sqrt(math.pi)) < 1e-5
    assert result.error_estimate > 0


def test_gauss_gamma_deficit_and_extrapolation() -> None:
    result = gauss_gamma(2.0, 100_000)
    # the finite product falls short by about x(x+1)/(2n)
    assert 1e-5 < 1.0 - result.value < 5e-5
    assert result.extrapolated == pytest.approx(1.0, abs=1e-8)
    assert result.error_estimate >= 0.9 * abs(result.value - 1.0)


def test_gauss_gamma_negative_argument() -> None:
    result = gauss_gamma(-0.5, 1_000_000)
    assert result.value == pytest.approx(-2.0 * math.sqrt(math.pi), abs=1e-4)


@pytest.mark.parametrize("x", [0.0, -1.0, -3.0])
def test_gauss_gamma_poles(x) -> None:
    with pytest.raises(PoleError):
        gauss_gamma(x, 1000)


@pytest.mark.parametrize("x", [0.3, 0.5, 1.7, 4.5, -0.5])
def test_weierstrass_gamma_real(x) -> None:
    result = weierstrass_gamma(x)
    assert result.method == GammaMethod.WEIERSTRASS_PRODUCT
    assert isinstance(result.value, float)
    assert result.value == pytest.approx(special.gamma(x), rel=1e-10)
    assert result.error_estimate > 0


@pytest.mark.parametrize("z", [0.3 + 2j, 0.5 - 14j, 4.0 - 2j])
def test_weierstrass_gamma_complex(z) -> None:
    assert gamma_value(z) == pytest.approx(complex(special.gamma(z)), rel=1e-9)


def test_weierstrass_gamma_pole() -> None:
    with pytest.raises(PoleError):
        weierstrass_gamma(-2.0)


def test_pi_function() -> None:
    assert pi_function(1.0) == pytest.approx(1.0, abs=1e-12)
    assert pi_function(0.5) == pytest.approx(special.gamma(1.5), rel=1e-10)


def test_minus_digamma_at_one_is_euler_gamma() -> None:
    assert -log_gamma_derivative(1.0).real == pytest.approx(
        pytest.euler_gamma, abs=1e-4
    )
    assert log_gamma_derivative(2.5).real == pytest.approx(
        special.digamma(2.5), abs=1e-6
    )


def test_digamma_near_origin() -> None:
    z = 0.01
    approximation = digamma_near_origin(z).real
    # remainder is about (pi^2/6) z
    assert abs(approximation - special.digamma(z)) < 0.02
    assert approximation == pytest.approx(-1.0 / z - pytest.euler_gamma, abs=1e-10)


def test_digamma_near_origin_domain() -> None:
    with pytest.raises(PoleError):
        digamma_near_origin(0.0)
    with pytest.raises(ValueError):
        digamma_near_origin(1.0)


def test_finite_forms_agree() -> None:
    n = 100_000
    harmonic = euler_gamma(EulerGammaMethod.HARMONIC_MINUS_LOG, n)
    tail = euler_gamma(EulerGammaMethod.TAIL_PLUS_LOG_DIFF, n)
    assert abs(harmonic - tail) < 1e-9


@pytest.mark.parametrize("x", [0.5, 1.5, 2.5])
def test_gauss_gamma_recurrence(x) -> None:
    n = 1_000_000
    ratio = gauss_gamma(x + 1, n).value / gauss_gamma(x, n).value
    assert ratio == pytest.approx(x, abs=1e-4)


def test_weierstrass_cross_checks() -> None:
    n = 100_000
    assert abs(weierstrass_log_inv_gamma(1.0, n)) < 1e-5
    assert weierstrass_gamma(3.0, n).value == pytest.approx(2.0, abs=1e-4)
    gauss = gauss_gamma(0.5, 1_000_000).value
    assert weierstrass_gamma(0.5, n).value == pytest.approx(gauss, abs=1e-4)


def test_reflection_spot_check() -> None:
    s = 0.3
    product = gamma_value(s) * gamma_value(1 - s) * math.sin(math.pi * s) / math.pi
    assert product == pytest.approx(1.0, abs=1e-5)


def test_digamma_asymptotic_error_is_linear() -> None:
    deviations = [
        abs(digamma_near_origin(z).real - log_gamma_derivative(z).real)
        for z in (0.1, 0.01)
    ]
    assert deviations[0] == pytest.approx(0.16, abs=0.02)
    assert deviations[1] < deviations[0] / 5
