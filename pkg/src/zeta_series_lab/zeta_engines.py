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

"""Three independent evaluators of the Riemann zeta function.

* ``zeta_dirichlet`` sums the Dirichlet series and refuses Re(s) <= 1.
* ``zeta_eta`` uses the alternating (eta) series with the prefactor
  (1 - 2^(1-s))^-1, accelerated with Borwein's weights, for Re(s) > 0.
* ``zeta_functional`` extends to Re(s) < 1/2 with the reflection
  zeta(s) = chi(s) zeta(1-s), chi(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s).
"""

from __future__ import annotations

import cmath
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import more_itertools
import numpy as np
from scipy import optimize, special

from .common import (
    EPSILON,
    LN2,
    LabError,
    PoleError,
    RemovableSingularityError,
)
from .gamma_euler import DEFAULT_GAMMA_TERMS, weierstrass_log_inv_gamma
from .series_core import (
    ConvergenceVerdict,
    Evidence,
    VerdictClass,
    alternating_reciprocal_power,
    classify,
    dirichlet_domain_verdict,
)

logger = logging.getLogger(__name__)

DEFAULT_DIRICHLET_TERMS = 10_000
EULER_MACLAURIN_ORDER = 6
ETA_TOLERANCE = 1e-14
MIN_BORWEIN_ORDER = 20
MAX_BORWEIN_ORDER = 600
BORWEIN_MARGIN = 10
# Gamma(s) only sizes the Borwein order, so a short product is enough.
BOUND_GAMMA_TERMS = 2_000
# theta(t) only decides the sign of Z(t).
THETA_GAMMA_TERMS = 2_000
ZERO_SCAN_STEP = 0.05
MAX_ZERO_HEIGHT = 100.0
MIN_ZERO_TOLERANCE = 1e-6
BRACKET_SHRINK = 1e-6
GRID_BATCH_SIZE = 64
LN_BORWEIN_RATE = math.log(3.0 + math.sqrt(8.0))


class ZetaMethod(str, Enum):
    DIRICHLET_SERIES = "DirichletSeries"
    ETA_THIRD_DEFINITION = "EtaThirdDefinition"
    FUNCTIONAL_EQUATION = "FunctionalEquation"
    HANKEL_CONTOUR = "HankelContour"


@dataclass(frozen=True)
class EvalResult:
    """A zeta value with its error estimate, method and domain verdict.

    `value` is None when the method's series does not converge at `s`.
    """

    s: complex
    value: Optional[complex]
    error_estimate: float
    method: ZetaMethod
    verdict: ConvergenceVerdict

    @property
    def in_domain(self) -> bool:
        return self.value is not None


@dataclass(frozen=True)
class ZeroBracket:
    t_low: float
    t_high: float
    z_low: float
    z_high: float

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.t_low + self.t_high)


@dataclass(frozen=True)
class Region:
    re_low: float
    re_high: float
    im_low: float
    im_high: float


@dataclass(frozen=True)
class GridPoint:
    s: complex
    results: Tuple[EvalResult, ...]
    failures: Tuple[Tuple[ZetaMethod, str], ...] = ()

    def result(self, method: ZetaMethod) -> Optional[EvalResult]:
        for r in self.results:
            if r.method == method:
                return r
        return None

    @property
    def deltas(self) -> Dict[Tuple[ZetaMethod, ZetaMethod], float]:
        valued = [r for r in self.results if r.value is not None]
        return {
            (a.method, b.method): abs(a.value - b.value)  # type: ignore[operator]
            for i, a in enumerate(valued)
            for b in valued[i + 1 :]
        }


@dataclass(frozen=True)
class AgreementGrid:
    points: Tuple[GridPoint, ...]
    methods: Tuple[ZetaMethod, ...] = field(default=())

    def max_delta(self) -> float:
        deltas = [d for p in self.points for d in p.deltas.values()]
        return max(deltas) if deltas else 0.0


def _check_pole(s: complex) -> None:
    if s == 1:
        raise PoleError("zeta has a pole at s=1")


def _euler_maclaurin(s: complex, n_terms: int) -> Tuple[complex, float]:
    # sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2 + sum_k B_2k/(2k)! (s)_(2k-1) N^(1-s-2k)
    n = np.arange(1, n_terms, dtype=np.float64)
    head = complex(np.sum(np.exp(-s * np.log(n))))
    big_n = float(n_terms)
    total = head + big_n ** (1 - s) / (s - 1) + 0.5 * big_n**-s
    bernoulli = special.bernoulli(2 * EULER_MACLAURIN_ORDER + 2)
    rising = s
    correction = 0j
    for k in range(1, EULER_MACLAURIN_ORDER + 2):
        term = (
            bernoulli[2 * k]
            / math.factorial(2 * k)
            * rising
            * big_n ** (1 - s - 2 * k)
        )
        if k > EULER_MACLAURIN_ORDER:
            next_term = abs(term)
            break
        correction += term
        rising *= (s + 2 * k - 1) * (s + 2 * k)
    value = total + correction
    rounding = 8 * EPSILON * float(np.sum(n ** -s.real)) + EPSILON * abs(value)
    return value, max(next_term, rounding)


def zeta_dirichlet(s: complex, n_terms: int = DEFAULT_DIRICHLET_TERMS) -> EvalResult:
    """Zeta from its Dirichlet series, defined only where the series converges.

    For Re(s) > 1 the first `n_terms` terms are summed and the remainder is
    replaced by its Euler-Maclaurin expansion, whose leading part is the
    integral tail N^(1-s)/(s-1). For Re(s) <= 1 no value is produced and
    the verdict is Divergent.
    """
    s = complex(s)
    verdict = dirichlet_domain_verdict(s)
    if verdict.classification != VerdictClass.ABSOLUTE:
        return EvalResult(s, None, math.inf, ZetaMethod.DIRICHLET_SERIES, verdict)
    if n_terms < 2:
        raise ValueError("n_terms must be at least 2, got " + str(n_terms))
    value, error = _euler_maclaurin(s, n_terms)
    return EvalResult(s, value, error, ZetaMethod.DIRICHLET_SERIES, verdict)


@lru_cache(maxsize=64)
def _borwein_weights(order: int) -> np.ndarray:
    # w_k = (d_n - d_k) / d_n with d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    i = np.arange(order, dtype=np.float64)
    ratios = np.log(4.0 * (order + i) * (order - i))
    ratios -= np.log((2 * i + 1) * (2 * i + 2))
    log_terms = np.concatenate(([0.0], np.cumsum(ratios)))
    terms = np.exp(log_terms - log_terms.max())
    tails = np.cumsum(terms[::-1])[::-1]
    weights = tails[1:] / tails[0]
    weights.flags.writeable = False
    return weights


def _borwein_order(s: complex) -> int:
    t = abs(s.imag)
    log_abs_gamma = -weierstrass_log_inv_gamma(s, BOUND_GAMMA_TERMS).real
    needed = (
        math.log(3.0)
        + math.log(1.0 + 2.0 * t)
        + 0.5 * math.pi * t
        - log_abs_gamma
        - math.log(ETA_TOLERANCE)
    ) / LN_BORWEIN_RATE
    order = math.ceil(needed) + BORWEIN_MARGIN
    return int(min(MAX_BORWEIN_ORDER, max(MIN_BORWEIN_ORDER, order)))


def alternating_zeta(s: complex) -> Tuple[complex, float, int]:
    """The alternating series 1 - 2^-s + 3^-s - ..., Borwein-accelerated.

    Returns:
        tuple: value, error estimate and the acceleration order used.
    """
    s = complex(s)
    order = _borwein_order(s)
    weights = _borwein_weights(order)
    k = np.arange(1, order + 1, dtype=np.float64)
    signs = np.where(np.arange(order) % 2 == 0, 1.0, -1.0)
    value = complex(np.sum(signs * weights * np.exp(-s * np.log(k))))
    t = abs(s.imag)
    log_abs_gamma = -weierstrass_log_inv_gamma(s, BOUND_GAMMA_TERMS).real
    log_bound = (
        math.log(3.0 * (1.0 + 2.0 * t))
        + 0.5 * math.pi * t
        - log_abs_gamma
        - order * LN_BORWEIN_RATE
    )
    error = max(math.exp(log_bound), 16 * EPSILON * order)
    logger.debug("Borwein order %d for s=%s (bound %.3g)", order, s, error)
    return value, error, order


def _eta_prefactor(s: complex) -> complex:
    denominator = 1.0 - cmath.exp((1.0 - s) * LN2)
    k = s.imag * LN2 / (2 * math.pi)
    if (abs(s.real - 1.0) < 1e-12 and abs(k - round(k)) < 1e-9) or abs(
        denominator
    ) < 1e-12:
        raise RemovableSingularityError(
            "The eta prefactor 1 - 2^(1-s) vanishes at s="
            + str(s)
            + "; use the FunctionalEquation method there"
        )
    return 1.0 / denominator


def _eta_verdict(s: complex) -> ConvergenceVerdict:
    if s.real <= 0:
        return ConvergenceVerdict(
            VerdictClass.OUT_OF_DOMAIN,
            Evidence(
                "bounded-partial-sums",
                bound=2.0,
                note="coefficients 1, -1, 1, ... give convergence only for Re(s) > 0",
            ),
        )
    return classify(alternating_reciprocal_power(s))


def zeta_eta(s: complex) -> EvalResult:
    """Zeta as (1 - 2^(1-s))^-1 times the alternating series.

    Raises:
        PoleError: s = 1.
        RemovableSingularityError: 1 - 2^(1-s) = 0 at s = 1 + 2 pi i k / ln 2.
    """
    s = complex(s)
    _check_pole(s)
    verdict = _eta_verdict(s)
    if verdict.classification == VerdictClass.OUT_OF_DOMAIN:
        return EvalResult(s, None, math.inf, ZetaMethod.ETA_THIRD_DEFINITION, verdict)
    prefactor = _eta_prefactor(s)
    eta, error, _ = alternating_zeta(s)
    return EvalResult(
        s,
        prefactor * eta,
        abs(prefactor) * error,
        ZetaMethod.ETA_THIRD_DEFINITION,
        verdict,
    )


def log_chi(s: complex, depth: int = DEFAULT_GAMMA_TERMS) -> complex:
    """log of chi(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s), summed factorwise."""
    s = complex(s)
    return (
        s * LN2
        + (s - 1.0) * math.log(math.pi)
        + cmath.log(cmath.sin(0.5 * math.pi * s))
        - weierstrass_log_inv_gamma(1.0 - s, depth)
    )


def chi(s: complex, depth: int = DEFAULT_GAMMA_TERMS) -> complex:
    s = complex(s)
    gamma_part = cmath.exp(-weierstrass_log_inv_gamma(1.0 - s, depth))
    return (
        cmath.exp(s * LN2 + (s - 1.0) * math.log(math.pi))
        * cmath.sin(0.5 * math.pi * s)
        * gamma_part
    )


def zeta_functional(s: complex, depth: int = DEFAULT_GAMMA_TERMS) -> EvalResult:
    """Zeta continued to the whole plane through the functional equation.

    Re(s) > 1 is delegated to the Dirichlet engine and 1/2 <= Re(s) < 1 to
    the eta engine. On Re(s) = 1 the Euler-Maclaurin sum is used directly,
    which keeps the eta prefactor zeros out of this engine. Re(s) < 1/2 is
    reflected: chi(s) zeta(1-s), with Gamma(1-s) from the Weierstrass
    product truncated at `depth`.

    Raises:
        PoleError: s = 1.
    """
    s = complex(s)
    _check_pole(s)
    method = ZetaMethod.FUNCTIONAL_EQUATION
    if s.real > 1:
        inner = zeta_dirichlet(s)
        return EvalResult(s, inner.value, inner.error_estimate, method, inner.verdict)
    if s.real == 1:
        value, error = _euler_maclaurin(s, DEFAULT_DIRICHLET_TERMS)
        return EvalResult(s, value, error, method, _eta_verdict(s))
    if s.real >= 0.5:
        inner = zeta_eta(s)
        return EvalResult(s, inner.value, inner.error_estimate, method, inner.verdict)
    if s == 0:
        # sin(pi s/2) zeta(1-s) -> -pi/2 and 2^0 pi^-1 Gamma(1) = 1/pi
        limit = _eta_verdict(1.0 - s)
        verdict = ConvergenceVerdict(
            limit.classification,
            Evidence(
                "functional-equation:limit",
                bound=limit.evidence.bound,
                note="residue of zeta at 1 against the zero of sin(pi s/2)",
            ),
        )
        return EvalResult(s, -0.5 + 0j, EPSILON, method, verdict)
    reflected = zeta_functional(1.0 - s, depth)
    verdict = ConvergenceVerdict(
        reflected.verdict.classification,
        Evidence(
            "functional-equation:" + reflected.verdict.evidence.test,
            bound=reflected.verdict.evidence.bound,
            note="series evaluated at 1-s",
        ),
    )
    factor = chi(s, depth)
    value = factor * reflected.value  # type: ignore[operator]
    error = abs(factor) * reflected.error_estimate + 1e-12 * abs(value)
    return EvalResult(s, value, error, method, verdict)


def rotated_zeta(t: float, depth: int = THETA_GAMMA_TERMS) -> float:
    """Z(t) = e^(i theta(t)) zeta(1/2 + it), real-valued on the critical line.

    theta(t) = -Im log chi(1/2 + it) / 2. Every factor of chi has positive
    real part on the critical line, so the factorwise principal logarithms
    give a phase that is continuous in t.
    """
    s = complex(0.5, t)
    theta = -0.5 * log_chi(s, depth).imag
    value = zeta_eta(s).value
    return float((cmath.exp(1j * theta) * value).real)  # type: ignore[operator]


def _sign(x: float) -> int:
    return (x > 0) - (x < 0)


def _half_width(tol: float) -> float:
    # root +- half must round to a width no larger than tol
    return 0.5 * tol * (1.0 - BRACKET_SHRINK)


def _refine_bracket(
    z: Callable[[float], float], a: float, b: float, tol: float
) -> ZeroBracket:
    root = optimize.brentq(z, a, b, xtol=tol / 4)
    half = _half_width(tol)
    while True:
        low, high = max(a, root - half), min(b, root + half)
        z_low, z_high = z(low), z(high)
        if _sign(z_low) != _sign(z_high) or (low == a and high == b):
            return ZeroBracket(low, high, z_low, z_high)
        logger.warning("Widening bracket around %s to %s", root, 2 * half)
        half *= 2


def find_critical_zeros(
    t_max: float, tol: float = MIN_ZERO_TOLERANCE, step: float = ZERO_SCAN_STEP
) -> List[ZeroBracket]:
    """Brackets of the sign changes of Z(t) on 0 <= t <= t_max.

    Z is scanned with spacing `step`; every sign change is refined with
    Brent's method and reported as a bracket of width at most `tol` whose
    end values have opposite signs.
    """
    if t_max > MAX_ZERO_HEIGHT:
        raise ValueError(
            "t_max must not exceed " + str(MAX_ZERO_HEIGHT) + ", got " + str(t_max)
        )
    if tol < MIN_ZERO_TOLERANCE:
        raise ValueError(
            "tol must be at least " + str(MIN_ZERO_TOLERANCE) + ", got " + str(tol)
        )
    ts = np.arange(0.0, t_max + 0.5 * step, step)
    ts = ts[ts <= t_max]
    values = [rotated_zeta(float(t)) for t in ts]
    half = _half_width(tol)
    brackets: List[ZeroBracket] = []
    for (a, za), (b, zb) in more_itertools.pairwise(zip(ts.tolist(), values)):
        if za == 0.0:
            brackets.append(ZeroBracket(a - half, a + half, za, za))
        elif za * zb < 0:
            brackets.append(_refine_bracket(rotated_zeta, a, b, tol))
    logger.debug("Scanned %d ordinates, found %d sign changes", len(ts), len(brackets))
    return brackets


ENGINES: Dict[ZetaMethod, Callable[[complex], EvalResult]] = {
    ZetaMethod.DIRICHLET_SERIES: zeta_dirichlet,
    ZetaMethod.ETA_THIRD_DEFINITION: zeta_eta,
    ZetaMethod.FUNCTIONAL_EQUATION: zeta_functional,
}
GRID_METHODS = tuple(ENGINES)


def evaluate_point(
    s: complex, methods: Sequence[ZetaMethod] = GRID_METHODS
) -> GridPoint:
    results: List[EvalResult] = []
    failures: List[Tuple[ZetaMethod, str]] = []
    for method in methods:
        try:
            results.append(ENGINES[method](s))
        except LabError as e:
            failures.append((method, str(e)))
    return GridPoint(complex(s), tuple(results), tuple(failures))


def _axis(low: float, high: float, step: float) -> List[float]:
    count = int(math.floor((high - low) / step + 1e-9)) + 1
    return [low + k * step for k in range(max(count, 0))]


def grid_points(
    region: Region, step: float, im_step: Optional[float] = None
) -> List[complex]:
    """Row-major lattice over `region`: imaginary part outer, real part inner.

    When the pole s = 1 would be a node, the real axis of the lattice is
    shifted by half a step.
    """
    if step <= 0 or (im_step is not None and im_step <= 0):
        raise ValueError("Grid steps must be positive")
    res = _axis(region.re_low, region.re_high, step)
    ims = _axis(region.im_low, region.im_high, im_step or step)
    hits_pole = any(abs(r - 1.0) < 1e-12 for r in res) and any(
        abs(i) < 1e-12 for i in ims
    )
    if hits_pole:
        res = [r + 0.5 * step for r in res]
    return [complex(r, i) for i in ims for r in res]


def _evaluate_all(
    points: Sequence[complex], methods: Sequence[ZetaMethod], workers: int
) -> Tuple[GridPoint, ...]:
    evaluated: List[GridPoint] = []
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        for batch in more_itertools.chunked(points, GRID_BATCH_SIZE):
            evaluated.extend(pool.map(lambda s: evaluate_point(s, methods), batch))
    return tuple(evaluated)


def agreement_grid(
    region: Region,
    step: float,
    im_step: Optional[float] = None,
    methods: Sequence[ZetaMethod] = GRID_METHODS,
    workers: int = 1,
) -> AgreementGrid:
    """Evaluate every engine on a lattice and record values and verdicts.

    Points are independent; with ``workers > 1`` they are evaluated on a
    thread pool, and the result order stays row-major.
    """
    points = grid_points(region, step, im_step)
    return AgreementGrid(_evaluate_all(points, methods, workers), tuple(methods))


def agreement_sample(
    count: int,
    seed: int,
    region: Region,
    methods: Sequence[ZetaMethod] = GRID_METHODS,
    workers: int = 1,
) -> AgreementGrid:
    """Evaluate every engine at `count` uniform random points of `region`."""
    rng = np.random.default_rng(seed)
    re = rng.uniform(region.re_low, region.re_high, count)
    im = rng.uniform(region.im_low, region.im_high, count)
    points = [complex(r, i) for r, i in zip(re, im)]
    return AgreementGrid(_evaluate_all(points, methods, workers), tuple(methods))
