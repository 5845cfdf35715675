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
# mypy: disable-error-code="arg-type,attr-defined,no-untyped-def,union-attr"

import cmath
import math

import pytest

from zeta_series_lab.common import (
    IndeterminateFormError,
    InvalidSpecError,
    PoleError,
    SingularityError,
)
from zeta_series_lab.gamma_euler import gamma_value
from zeta_series_lab.hankel_quadrature import (
    Branch,
    ContourSpec,
    bose_integral,
    contour_and_zeta,
    decay_exponent,
    exponential_moment,
    factorial_recurrence_defect,
    integrand,
    integrate_contour,
    middle_term_decay,
    reconstruct_zeta,
    reflection_defect,
)
from zeta_series_lab.series_core import VerdictClass
from zeta_series_lab.zeta_engines import ZetaMethod, zeta_eta

ZETA_HALF = -1.4603545088095868


def test_integrand_on_the_cut() -> None:
    assert integrand(1.0, 2.0) == pytest.approx(1 / (math.e - 1), rel=1e-14)
    below = integrand(1.0, 1.5, Branch.BELOW_CUT)
    assert below == pytest.approx(cmath.exp(1.5j * math.pi) / (math.e - 1), rel=1e-14)


@pytest.mark.parametrize("s", [0.5, 1.5, 2.25 + 1j])
def test_integrand_branch_ratio(s) -> None:
    above = integrand(2.0, s, Branch.ABOVE_CUT)
    below = integrand(2.0, s, Branch.BELOW_CUT)
    assert above / below == pytest.approx(cmath.exp(-2j * math.pi * s), rel=1e-12)


def test_integrand_singularity() -> None:
    with pytest.raises(SingularityError):
        integrand(0.0, 1.5)
    with pytest.raises(SingularityError):
        integrand(0j, 0.5, Branch.BELOW_CUT)


@pytest.mark.parametrize("s", [1.5, 2.5, 3.25])
def test_contour_total(s) -> None:
    result = integrate_contour(s)
    expected = 2j * math.sin(math.pi * s) * gamma_value(s) * zeta_eta(s).value
    assert result.total == pytest.approx(expected, abs=1e-6)
    assert result.total == result.upper_ray + result.circle + result.lower_ray
    assert result.truncation_estimate > 0


def test_contour_total_vanishes_at_integer() -> None:
    assert abs(integrate_contour(2.0).total) < 1e-10


@pytest.mark.parametrize("s", [1.5, 2.5])
def test_total_is_discontinuity_times_bose_integral(s) -> None:
    discontinuity = cmath.exp(1j * math.pi * s) - cmath.exp(-1j * math.pi * s)
    expected = discontinuity * bose_integral(s)
    assert integrate_contour(s).total == pytest.approx(expected, abs=1e-7)


@pytest.mark.parametrize("s", [1.5, 2.5, 0.3 + 2j])
def test_reconstruct_matches_eta(s) -> None:
    result = reconstruct_zeta(s)
    assert result.method == ZetaMethod.HANKEL_CONTOUR
    assert result.verdict.classification == VerdictClass.ABSOLUTE
    assert result.verdict.evidence.test == "contour-truncation"
    assert result.value == pytest.approx(zeta_eta(s).value, abs=1e-5)


def test_reconstruct_left_of_the_pole() -> None:
    assert reconstruct_zeta(0.5).value.real == pytest.approx(ZETA_HALF, abs=1e-4)
    assert reconstruct_zeta(-1.0).value.real == pytest.approx(-1.0 / 12, abs=1e-8)


def test_reconstruct_rejects_integers() -> None:
    with pytest.raises(IndeterminateFormError):
        reconstruct_zeta(2.0)
    with pytest.raises(IndeterminateFormError):
        reconstruct_zeta(5.0)
    with pytest.raises(PoleError):
        reconstruct_zeta(1.0)


@pytest.mark.parametrize("s", [1.5, 2.5])
def test_reconstruction_is_stable_as_offset_shrinks(s) -> None:
    base = reconstruct_zeta(s)
    thinner = reconstruct_zeta(s, ContourSpec(offset=5e-4))
    assert abs(thinner.value - base.value) < 2 * base.error_estimate


def test_contour_is_stable_under_refinement() -> None:
    base = integrate_contour(1.5, ContourSpec())
    thinner = integrate_contour(1.5, ContourSpec(offset=5e-4))
    denser = integrate_contour(1.5, ContourSpec(nodes_ray=1024, nodes_circle=512))
    assert abs(thinner.total - base.total) < 2 * base.truncation_estimate
    assert abs(denser.total - base.total) < base.truncation_estimate


@pytest.mark.parametrize(
    "kwargs",
    [
        {"offset": 0.0},
        {"offset": 0.2},
        {"delta": 7.0, "offset": 1e-3},
        {"x_max": 0.05},
        {"nodes_ray": 8},
        {"nodes_circle": 0},
    ],
)
def test_contour_spec_validation(kwargs) -> None:
    with pytest.raises(InvalidSpecError):
        ContourSpec(**kwargs)


def test_middle_term_decay_square_root() -> None:
    deltas = [0.2, 0.1, 0.05]
    magnitudes = middle_term_decay(1.5, deltas)
    assert magnitudes[0] > magnitudes[1] > magnitudes[2] > 0
    assert decay_exponent(deltas, magnitudes) == pytest.approx(0.5, rel=0.25)


def test_middle_term_decay_integer_exponent() -> None:
    magnitudes = middle_term_decay(3.0, [0.1, 0.05])
    assert magnitudes[1] / magnitudes[0] == pytest.approx(0.25, rel=0.25)
    (wide,) = middle_term_decay(1.5, [0.5])
    assert math.isfinite(wide) and wide > 0


def test_middle_term_decay_preconditions() -> None:
    with pytest.raises(ValueError):
        middle_term_decay(1.0, [0.1])
    with pytest.raises(ValueError):
        middle_term_decay(1.5 + 1j, [0.1])
    with pytest.raises(ValueError):
        middle_term_decay(1.5, [1.5])
    with pytest.raises(ValueError):
        decay_exponent([0.1], [1.0])


def test_real_integrals() -> None:
    assert bose_integral(2.0) == pytest.approx(math.pi**2 / 6, rel=1e-9)
    assert bose_integral(4.0) == pytest.approx(math.pi**4 / 15, rel=1e-9)
    assert exponential_moment(2.0, 1.5) == pytest.approx(
        math.gamma(1.5) / 2**1.5, rel=1e-9
    )
    with pytest.raises(ValueError):
        bose_integral(1.0)
    with pytest.raises(ValueError):
        exponential_moment(0.0, 1.5)


@pytest.mark.parametrize("s", [0.3, 0.7, 1.2])
def test_pi_function_identities(s) -> None:
    assert factorial_recurrence_defect(s) < 1e-5
    assert reflection_defect(s) < 1e-5


def test_contour_and_zeta_share_one_integration() -> None:
    contour, zeta = contour_and_zeta(2.5)
    assert contour == integrate_contour(2.5)
    assert zeta == reconstruct_zeta(2.5)
    with pytest.raises(IndeterminateFormError):
        contour_and_zeta(3.0)
