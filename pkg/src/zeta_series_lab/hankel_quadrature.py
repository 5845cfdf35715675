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

"""Numerical integration of the Hankel contour representation of zeta.

The contour comes in from +x_max slightly above the positive real axis,
circles the origin counterclockwise at radius delta and returns below the
axis. Along it (-x)^s = exp(s log(-x)) is taken with the argument of x
running continuously from 0 to 2 pi, so log(-x) = log x - i pi on the
upper ray and log x + i pi on the lower one. For the complete contour

    total = 2i sin(pi s) Gamma(s) zeta(s)

and zeta(s) = Gamma(1-s) / (2 pi i) * total.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, List, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial import legendre
from scipy import integrate

from .common import (
    EPSILON,
    IndeterminateFormError,
    InvalidSpecError,
    PoleError,
    SingularityError,
)
from .gamma_euler import DEFAULT_GAMMA_TERMS, gamma_value, pi_function
from .series_core import ConvergenceVerdict, Evidence, VerdictClass
from .zeta_engines import EvalResult, ZetaMethod

logger = logging.getLogger(__name__)

GAUSS_ORDER = 16
MIN_NODES = 16
TRUNCATION_SAFETY = 10.0
ROUNDING_SAFETY = 1e3
# middle_term_decay keeps offset / delta fixed at this ratio.
DECAY_OFFSET_RATIO = 1e-2
BOSE_SPLIT = 1.0
TWO_PI = 2.0 * math.pi

_GL_NODES, _GL_WEIGHTS = legendre.leggauss(GAUSS_ORDER)

ArrayLike = Union[complex, np.ndarray]


class Branch(str, Enum):
    ABOVE_CUT = "AboveCut"
    BELOW_CUT = "BelowCut"


@dataclass(frozen=True)
class ContourSpec:
    """Geometry and node counts of the truncated Hankel contour.

    Args:
        delta: radius of the circle around the origin, below 2 pi so no
            other zero of e^x - 1 is enclosed.
        offset: distance of both rays from the positive real axis.
        x_max: abscissa where both rays are truncated.
        nodes_ray: quadrature nodes per ray, used in panels of 16.
        nodes_circle: quadrature nodes on the circle, same panelling.
    """

    delta: float = 0.1
    offset: float = 1e-3
    x_max: float = 40.0
    nodes_ray: int = 512
    nodes_circle: int = 256

    def __post_init__(self) -> None:
        if not 0 < self.offset < self.delta:
            raise InvalidSpecError(
                "offset must satisfy 0 < offset < delta, got offset="
                + str(self.offset)
                + " delta="
                + str(self.delta)
            )
        if self.delta >= TWO_PI:
            raise InvalidSpecError(
                "delta must be below 2 pi, got " + str(self.delta)
            )
        if self.x_max <= self.delta:
            raise InvalidSpecError(
                "x_max must exceed delta, got " + str(self.x_max)
            )
        if min(self.nodes_ray, self.nodes_circle) < MIN_NODES:
            raise InvalidSpecError(
                "node counts must be at least " + str(MIN_NODES)
            )


@dataclass(frozen=True)
class ContourResult:
    upper_ray: complex
    circle: complex
    lower_ray: complex
    total: complex
    truncation_estimate: float


def _argument(x: np.ndarray, branch: Branch) -> np.ndarray:
    theta = np.angle(x)
    theta = np.where(theta < 0, theta + TWO_PI, theta)
    on_cut = (x.imag == 0) & (x.real > 0)
    return np.where(on_cut, 0.0 if branch == Branch.ABOVE_CUT else TWO_PI, theta)


def integrand(x: ArrayLike, s: complex, branch: Branch = Branch.ABOVE_CUT) -> ArrayLike:
    """(-x)^s / (e^x - 1) / x with log(-x) = log|x| + i(arg x - pi).

    arg x runs over [0, 2 pi]; `branch` only matters on the positive real
    axis, where AboveCut takes arg x = 0 and BelowCut takes 2 pi.

    Raises:
        SingularityError: x = 0 or e^x = 1.
    """
    points = np.asarray(x, dtype=np.complex128)
    denominator = np.expm1(points)
    if np.any(points == 0) or np.any(denominator == 0):
        raise SingularityError("The contour integrand is singular at x=" + str(x))
    log_minus_x = np.log(np.abs(points)) + 1j * (_argument(points, branch) - math.pi)
    values = np.exp(complex(s) * log_minus_x) / denominator / points
    return complex(values) if values.ndim == 0 else values


def _panels(edges: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    # composite Gauss-Legendre: nodes and weights in ascending order
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    points = (mid[:, None] + half[:, None] * _GL_NODES).ravel()
    weights = (half[:, None] * _GL_WEIGHTS).ravel()
    return points, weights


def _panel_count(nodes: int) -> int:
    return max(1, nodes // GAUSS_ORDER)


def _ray(s: complex, spec: ContourSpec, branch: Branch) -> Tuple[complex, float]:
    start = math.sqrt(spec.delta**2 - spec.offset**2)
    edges = np.geomspace(start, spec.x_max, _panel_count(spec.nodes_ray) + 1)
    u, w = _panels(edges)
    height = spec.offset if branch == Branch.ABOVE_CUT else -spec.offset
    weighted = w * integrand(u + 1j * height, s, branch)
    return complex(np.sum(weighted)), float(np.sum(np.abs(weighted)))


def _circle(s: complex, spec: ContourSpec) -> Tuple[complex, float]:
    # x = delta e^(i phi), dx = i x dphi, counterclockwise from the upper ray
    start = math.asin(spec.offset / spec.delta)
    edges = np.linspace(start, TWO_PI - start, _panel_count(spec.nodes_circle) + 1)
    phi, w = _panels(edges)
    x = spec.delta * np.exp(1j * phi)
    weighted = w * 1j * x * integrand(x, s, Branch.ABOVE_CUT)
    return complex(np.sum(weighted)), float(np.sum(np.abs(weighted)))


def integrate_contour(s: complex, spec: ContourSpec = ContourSpec()) -> ContourResult:
    """Integrate the three pieces of the truncated Hankel contour.

    The upper ray runs from x_max down to the circle, so its integral over
    ascending abscissae is negated. The truncation estimate is the size of
    the integrand at x_max with a safety factor, floored at the rounding
    level of the quadrature sums.
    """
    s = complex(s)
    upper, upper_abs = _ray(s, spec, Branch.ABOVE_CUT)
    lower, lower_abs = _ray(s, spec, Branch.BELOW_CUT)
    circle, circle_abs = _circle(s, spec)
    upper_ray = -upper
    total = upper_ray + circle + lower
    tail = TRUNCATION_SAFETY * abs(
        np.exp((s - 1) * math.log(spec.x_max) - spec.x_max)
    )
    rounding = ROUNDING_SAFETY * EPSILON * (upper_abs + lower_abs + circle_abs)
    logger.debug(
        "Contour at s=%s: %d ray panels, %d circle panels",
        s,
        _panel_count(spec.nodes_ray),
        _panel_count(spec.nodes_circle),
    )
    return ContourResult(upper_ray, circle, lower, total, max(tail, rounding))


def middle_term_decay(
    s: float, deltas: Sequence[float], spec: ContourSpec = ContourSpec()
) -> List[float]:
    """|circle term| for each radius, with the ray offset scaled to the radius."""
    if complex(s).imag != 0 or s <= 1:
        raise ValueError("middle_term_decay needs real s > 1, got " + str(s))
    magnitudes = []
    for delta in deltas:
        if not 0 < delta < 1:
            raise ValueError("deltas must lie in (0, 1), got " + str(delta))
        scaled = ContourSpec(
            delta=delta,
            offset=delta * DECAY_OFFSET_RATIO,
            x_max=spec.x_max,
            nodes_ray=spec.nodes_ray,
            nodes_circle=spec.nodes_circle,
        )
        circle, _ = _circle(complex(s), scaled)
        magnitudes.append(abs(circle))
    return magnitudes


def decay_exponent(deltas: Sequence[float], magnitudes: Sequence[float]) -> float:
    """Least-squares slope of log |circle| against log delta."""
    if len(deltas) < 2:
        raise ValueError("At least two radii are needed for a slope")
    slope, _ = np.polyfit(np.log(deltas), np.log(magnitudes), 1)
    return float(slope)


def contour_and_zeta(
    s: complex,
    spec: ContourSpec = ContourSpec(),
    depth: int = DEFAULT_GAMMA_TERMS,
) -> Tuple[ContourResult, EvalResult]:
    """The contour pieces and zeta(s) = Gamma(1-s) / (2 pi i) times their total.

    Raises:
        PoleError: s = 1.
        IndeterminateFormError: s is an integer >= 2, where Gamma(1-s) has a
            pole and the contour total vanishes.
    """
    s = complex(s)
    if s == 1:
        raise PoleError("zeta has a pole at s=1")
    if s.imag == 0 and s.real >= 2 and s.real == math.floor(s.real):
        raise IndeterminateFormError(
            "Contour reconstruction is 0 * infinity at integer s="
            + str(s.real)
            + "; use a series engine"
        )
    contour = integrate_contour(s, spec)
    prefactor = gamma_value(1.0 - s, depth) / (2j * math.pi)
    value = prefactor * contour.total
    error = abs(prefactor) * contour.truncation_estimate + 1e-12 * abs(value)
    verdict = ConvergenceVerdict(
        VerdictClass.ABSOLUTE,
        Evidence(
            "contour-truncation",
            bound=contour.truncation_estimate,
            note="integrand decays like e^-x along both rays",
        ),
    )
    return contour, EvalResult(s, value, error, ZetaMethod.HANKEL_CONTOUR, verdict)


def reconstruct_zeta(
    s: complex,
    spec: ContourSpec = ContourSpec(),
    depth: int = DEFAULT_GAMMA_TERMS,
) -> EvalResult:
    """zeta(s) from the Hankel contour; see `contour_and_zeta`."""
    return contour_and_zeta(s, spec, depth)[1]


def _real_integral(function: Callable[[float], float]) -> Tuple[float, float]:
    # split at BOSE_SPLIT: the x^(s-1) endpoint singularity and the infinite tail
    head, head_error = integrate.quad(function, 0.0, BOSE_SPLIT, limit=200)
    tail, tail_error = integrate.quad(function, BOSE_SPLIT, np.inf, limit=200)
    return head + tail, head_error + tail_error


def bose_integral(s: float) -> float:
    """The real integral of x^(s-1) / (e^x - 1) over (0, inf), for s > 1."""
    if s <= 1:
        raise ValueError("bose_integral converges only for s > 1, got " + str(s))

    def bose(x: float) -> float:
        return x ** (s - 1) * math.exp(-x) / -math.expm1(-x)

    value, error = _real_integral(bose)
    logger.debug("Bose integral at s=%s: %s (quad error %s)", s, value, error)
    return value


def exponential_moment(n: float, s: float) -> float:
    """The real integral of e^(-n x) x^(s-1) over (0, inf), equal to Pi(s-1)/n^s."""
    if n <= 0 or s <= 0:
        raise ValueError(
            "exponential_moment needs n > 0 and s > 0, got n="
            + str(n)
            + " s="
            + str(s)
        )
    value, error = _real_integral(lambda x: math.exp(-n * x) * x ** (s - 1))
    logger.debug("Exponential moment n=%s s=%s: %s (quad error %s)", n, s, value, error)
    return value


def _pi(s: float, depth: int) -> float:
    return pi_function(s, depth).real


def factorial_recurrence_defect(s: float, depth: int = DEFAULT_GAMMA_TERMS) -> float:
    """|Pi(s) - s Pi(s-1)| with Pi from the Weierstrass product."""
    return abs(_pi(s, depth) - s * _pi(s - 1.0, depth))


def reflection_defect(s: float, depth: int = DEFAULT_GAMMA_TERMS) -> float:
    """|sin(pi s) - pi s / (Pi(-s) Pi(s))|."""
    return abs(math.sin(math.pi * s) - math.pi * s / (_pi(-s, depth) * _pi(s, depth)))
