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

"""Riemann rearrangements of conditionally convergent real series."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .common import SeriesExhaustedError
from .series_core import PartialSumTrace, TermStream

logger = logging.getLogger(__name__)


class PlanMode(str, Enum):
    TARGET_SEEKING = "TargetSeeking"
    DIVERGENCE_SEEKING = "DivergenceSeeking"


@dataclass(frozen=True, eq=False)
class SignSplitStream:
    """The terms of a real stream over 1..horizon, partitioned by sign.

    Zero terms are kept with the positives. Original indices are retained
    and each part preserves their natural order.
    """

    horizon: int
    positive_indices: np.ndarray
    positive_terms: np.ndarray
    negative_indices: np.ndarray
    negative_terms: np.ndarray
    source: Optional[TermStream] = field(default=None, repr=False)


@dataclass(frozen=True)
class Switch:
    step: int
    partial_sum: float
    last_term: float


@dataclass(frozen=True)
class ThresholdCrossing:
    threshold: float
    step: int
    partial_sum: float


@dataclass(frozen=True, eq=False)
class RearrangementPlan:
    mode: PlanMode
    trace: PartialSumTrace
    target: Optional[float] = None
    thresholds: Tuple[float, ...] = ()
    switches: Tuple[Switch, ...] = ()
    crossings: Tuple[ThresholdCrossing, ...] = ()
    complete: bool = True

    @property
    def schedule(self) -> np.ndarray:
        return self.trace.indices

    @property
    def final_sum(self) -> float:
        return float(self.trace.final.real)  # type: ignore[union-attr]

    @property
    def reached_thresholds(self) -> Tuple[float, ...]:
        return tuple(c.threshold for c in self.crossings)

    def crossing_invariant_holds(self) -> bool:
        """|S - T| <= |last term| at every direction switch."""
        if self.target is None:
            return False
        return all(
            abs(sw.partial_sum - self.target) <= abs(sw.last_term)
            for sw in self.switches
        )

    def final_bound(self) -> float:
        """Bound on the final |S - T|.

        After the last switch the sums approach the target monotonically, so
        the distance is at most the term that caused that switch, or the final
        term when the run stops right after a crossing.
        """
        if not self.switches:
            return float("inf")
        final_term = float(self.trace.terms[-1])
        return max(abs(self.switches[-1].last_term), abs(final_term))


def split_by_sign(stream: TermStream, horizon: int) -> SignSplitStream:
    """Partition the indices 1..horizon of a real stream by term sign.

    Args:
        stream: a real-valued term stream.
        horizon: the last index considered.

    Raises:
        ValueError: the stream has complex terms over the horizon.
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1, got " + str(horizon))
    indices = np.arange(1, horizon + 1, dtype=np.int64)
    values = stream.terms(indices)
    if np.iscomplexobj(values):
        if np.any(values.imag != 0):
            raise ValueError(
                "Rearrangement is implemented for real series only, got "
                + "complex terms from "
                + str(stream.name or stream.kind.value)
            )
        values = values.real
    values = values.astype(np.float64)
    positive = values >= 0
    return SignSplitStream(
        horizon=horizon,
        positive_indices=indices[positive],
        positive_terms=values[positive],
        negative_indices=indices[~positive],
        negative_terms=values[~positive],
        source=stream,
    )


def rearrange_to_target(
    split: SignSplitStream, target: float, steps: int
) -> RearrangementPlan:
    """Greedy rearrangement whose partial sums approach `target`.

    Positive terms are appended while the running sum is <= target, negative
    terms while it is above, each in original order.

    Raises:
        SeriesExhaustedError: one sign stream ran out before `steps` terms,
            so the series is not conditionally convergent over the horizon.
    """
    if steps < 1:
        raise ValueError("steps must be at least 1, got " + str(steps))
    schedule: List[int] = []
    terms: List[float] = []
    switches: List[Switch] = []
    pos = neg = 0
    total = 0.0
    previous: Optional[bool] = None
    for step in range(steps):
        take_positive = total <= target
        if previous is not None and take_positive != previous:
            switches.append(Switch(step, total, terms[-1]))
        if take_positive:
            if pos >= split.positive_indices.size:
                raise SeriesExhaustedError(_exhausted("positive", step, split))
            index, value = split.positive_indices[pos], split.positive_terms[pos]
            pos += 1
        else:
            if neg >= split.negative_indices.size:
                raise SeriesExhaustedError(_exhausted("negative", step, split))
            index, value = split.negative_indices[neg], split.negative_terms[neg]
            neg += 1
        schedule.append(int(index))
        terms.append(float(value))
        total += float(value)
        previous = take_positive
    logger.debug(
        "Target %s reached %s after %d steps (%d switches)",
        target,
        total,
        steps,
        len(switches),
    )
    return RearrangementPlan(
        mode=PlanMode.TARGET_SEEKING,
        trace=PartialSumTrace.from_terms(schedule, terms),
        target=float(target),
        switches=tuple(switches),
    )


def _exhausted(sign: str, step: int, split: SignSplitStream) -> str:
    return (
        "The "
        + sign
        + " terms ran out after "
        + str(step)
        + " steps within horizon "
        + str(split.horizon)
        + ": series not conditionally convergent"
    )


def rearrange_to_diverge(
    split: SignSplitStream, thresholds: Sequence[float], steps: int
) -> RearrangementPlan:
    """Rearrangement whose partial sums exceed every threshold in turn.

    Positive terms are appended until the running sum exceeds the next
    threshold, then exactly one negative term is appended. When `steps` or
    the horizon run out first, a partial plan with ``complete=False`` is
    returned.
    """
    levels = tuple(float(t) for t in thresholds)
    if any(b <= a for a, b in zip(levels, levels[1:])):
        raise ValueError("thresholds must be strictly increasing: " + str(levels))
    schedule: List[int] = []
    terms: List[float] = []
    crossings: List[ThresholdCrossing] = []
    pos = neg = 0
    total = 0.0
    complete = True
    for level in levels:
        while total <= level:
            if len(schedule) >= steps or pos >= split.positive_indices.size:
                complete = False
                break
            schedule.append(int(split.positive_indices[pos]))
            terms.append(float(split.positive_terms[pos]))
            total += terms[-1]
            pos += 1
        if not complete:
            logger.warning(
                "Divergence schedule stopped below threshold %s after %d steps",
                level,
                len(schedule),
            )
            break
        crossings.append(ThresholdCrossing(level, len(schedule), total))
        if len(schedule) < steps and neg < split.negative_indices.size:
            schedule.append(int(split.negative_indices[neg]))
            terms.append(float(split.negative_terms[neg]))
            total += terms[-1]
            neg += 1
    return RearrangementPlan(
        mode=PlanMode.DIVERGENCE_SEEKING,
        trace=PartialSumTrace.from_terms(schedule, terms),
        thresholds=levels,
        crossings=tuple(crossings),
        complete=complete,
    )
