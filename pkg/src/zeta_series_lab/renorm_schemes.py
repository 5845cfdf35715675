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

"""Renormalization-scale relations of the QED coupling and MS-bar factors."""

from __future__ import annotations

import cmath
import itertools
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .common import InvalidSpecError
from .gamma_euler import (
    DEFAULT_GAMMA_TERMS,
    euler_gamma_corrected,
    weierstrass_log_inv_gamma,
)

logger = logging.getLogger(__name__)

MAX_EPSILON = 0.5
FOUR_PI = 4.0 * math.pi


class SchemeFactor(str, Enum):
    EXP_GAMMA_EPS = "ExpGammaEps"
    GAMMA_ONE_PLUS = "GammaOnePlus"
    INV_GAMMA_ONE_MINUS = "InvGammaOneMinus"

    def evaluate(self, epsilon: float, depth: int = DEFAULT_GAMMA_TERMS) -> float:
        """e^(-gamma eps), Gamma(1 + eps) or 1/Gamma(1 - eps)."""
        if self == SchemeFactor.EXP_GAMMA_EPS:
            return math.exp(-euler_gamma_corrected(depth) * epsilon)
        if self == SchemeFactor.GAMMA_ONE_PLUS:
            log_inv = weierstrass_log_inv_gamma(1.0 + epsilon, depth)
            return float(cmath.exp(-log_inv).real)
        return float(cmath.exp(weierstrass_log_inv_gamma(1.0 - epsilon, depth)).real)


FACTOR_PAIRS: Tuple[Tuple[SchemeFactor, SchemeFactor], ...] = tuple(
    itertools.combinations(SchemeFactor, 2)
)


@dataclass(frozen=True)
class RenormParams:
    """Scale mu, regulator epsilon and bare charge e0 in d = 4 - 2 epsilon."""

    mu: float
    epsilon: float
    e0: float

    def __post_init__(self) -> None:
        if not self.mu > 0:
            raise InvalidSpecError("mu must be positive, got " + str(self.mu))
        if not abs(self.epsilon) < MAX_EPSILON:
            raise InvalidSpecError(
                "epsilon must satisfy |epsilon| < 0.5, got " + str(self.epsilon)
            )

    @property
    def d(self) -> float:
        return 4.0 - 2.0 * self.epsilon

    @property
    def bare_coupling(self) -> float:
        """e0^2 / (4 pi)^(d/2)."""
        return self.e0**2 / FOUR_PI ** (self.d / 2.0)


def alpha_from_bare(
    p: RenormParams, factor: SchemeFactor = SchemeFactor.EXP_GAMMA_EPS
) -> float:
    """alpha(mu) / 4 pi = mu^(-2 eps) e0^2 / (4 pi)^(d/2) f(eps)."""
    return p.mu ** (-2.0 * p.epsilon) * p.bare_coupling * factor.evaluate(p.epsilon)


def bare_from_alpha(
    alpha_over_4pi: float,
    p: RenormParams,
    z_alpha: float = 1.0,
    factor: SchemeFactor = SchemeFactor.EXP_GAMMA_EPS,
) -> float:
    """e0^2 / (4 pi)^(d/2) = mu^(2 eps) alpha(mu)/4 pi Z_alpha / f(eps).

    `z_alpha` is the renormalization constant of the coupling, supplied by
    the caller; 1 is the tree-level value.
    """
    if not z_alpha > 0:
        raise InvalidSpecError("z_alpha must be positive, got " + str(z_alpha))
    return (
        p.mu ** (2.0 * p.epsilon)
        * alpha_over_4pi
        * z_alpha
        / factor.evaluate(p.epsilon)
    )


def alpha_minimal_subtraction(p: RenormParams) -> float:
    """alpha(mu) = mu^(-2 eps) e0^2 / (4 pi), the plain MS convention."""
    return p.mu ** (-2.0 * p.epsilon) * p.e0**2 / FOUR_PI


def ms_to_msbar_ratio(
    p: RenormParams, factor: SchemeFactor = SchemeFactor.EXP_GAMMA_EPS
) -> float:
    """(alpha_MS / 4 pi) / (alpha_MSbar / 4 pi), equal to (4 pi)^-eps / f(eps)."""
    return alpha_minimal_subtraction(p) / FOUR_PI / alpha_from_bare(p, factor)


@dataclass(frozen=True)
class SchemeRow:
    epsilon: float
    values: Dict[SchemeFactor, float]
    differences: Dict[Tuple[SchemeFactor, SchemeFactor], float]


@dataclass(frozen=True)
class SchemeTable:
    rows: Tuple[SchemeRow, ...]

    def slopes(self) -> Dict[Tuple[SchemeFactor, SchemeFactor], float]:
        """Log-log slope of each pairwise difference against |epsilon|.

        Rows at epsilon = 0 and exactly vanishing differences are skipped.
        """
        slopes = {}
        for pair in FACTOR_PAIRS:
            points = [
                (abs(row.epsilon), row.differences[pair])
                for row in self.rows
                if row.epsilon != 0 and row.differences[pair] > 0
            ]
            if len(points) < 2:
                raise ValueError(
                    "At least two nonzero epsilons are needed for a slope"
                )
            x, y = np.log(np.array(points)).T
            slopes[pair] = float(np.polyfit(x, y, 1)[0])
        return slopes


def scheme_divergence(
    epsilons: Sequence[float], depth: int = DEFAULT_GAMMA_TERMS
) -> SchemeTable:
    """|f_i(eps) - f_j(eps)| for every pair of MS-bar factors.

    All three factors agree to first order in epsilon, so each column
    shrinks like epsilon^2.
    """
    rows: List[SchemeRow] = []
    for epsilon in epsilons:
        if not abs(epsilon) < MAX_EPSILON:
            raise InvalidSpecError(
                "epsilon must satisfy |epsilon| < 0.5, got " + str(epsilon)
            )
        values = {f: f.evaluate(epsilon, depth) for f in SchemeFactor}
        differences = {(a, b): abs(values[a] - values[b]) for a, b in FACTOR_PAIRS}
        rows.append(SchemeRow(epsilon, values, differences))
    logger.debug("Scheme table over %d epsilons", len(rows))
    return SchemeTable(tuple(rows))
