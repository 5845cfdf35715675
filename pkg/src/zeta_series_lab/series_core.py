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

"""Term streams, partial sums and convergence classification."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np

from .common import InvalidSpecError, TermEvaluationError

logger = logging.getLogger(__name__)

DEFAULT_HORIZON = 1000

Number = Union[float, complex]
TermFunction = Callable[[int], Number]
VectorTermFunction = Callable[[np.ndarray], np.ndarray]


class StreamKind(str, Enum):
    RECIPROCAL_POWER = "reciprocal_power"
    ALTERNATING_RECIPROCAL_POWER = "alternating_reciprocal_power"
    GAMMA_LOG_DIFFERENCE = "gamma_log_difference"
    GAMMA_SPLIT = "gamma_split"
    USER_SUPPLIED = "user_supplied"


class VerdictClass(str, Enum):
    ABSOLUTE = "Absolute"
    CONDITIONAL = "Conditional"
    DIVERGENT = "Divergent"
    OUT_OF_DOMAIN = "OutOfDomain"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Evidence:
    test: str
    bound: Optional[float] = None
    witness: Tuple[float, ...] = ()
    note: str = ""


@dataclass(frozen=True)
class ConvergenceVerdict:
    classification: VerdictClass
    evidence: Evidence

    @property
    def converges(self) -> bool:
        return self.classification in (
            VerdictClass.ABSOLUTE,
            VerdictClass.CONDITIONAL,
        )


@dataclass(frozen=True)
class ConvergenceCertificate:
    """Caller-supplied facts that let `classify` decide a user stream.

    Args:
        majorant_exponent: p such that |a_n| <= C n^-p for all n.
        coefficient_bound: K such that |c_1 + ... + c_n| < K, where
            a_n = c_n n^-weight_exponent.
        weight_exponent: the Dirichlet weight exponent paired with
            `coefficient_bound`.
        absolutely_divergent: the caller asserts that sum |a_n| diverges.
    """

    majorant_exponent: Optional[float] = None
    coefficient_bound: Optional[float] = None
    weight_exponent: Optional[float] = None
    absolutely_divergent: bool = False


@dataclass(frozen=True)
class TermStream:
    """Lazily evaluated series terms a_1, a_2, ... indexed from 1."""

    kind: StreamKind
    exponent: Optional[complex] = None
    function: Optional[TermFunction] = field(default=None, compare=False)
    certificate: Optional[ConvergenceCertificate] = None
    name: str = ""

    @property
    def is_real(self) -> bool:
        if self.kind in (StreamKind.GAMMA_LOG_DIFFERENCE, StreamKind.GAMMA_SPLIT):
            return True
        if self.exponent is not None:
            return complex(self.exponent).imag == 0
        return False

    def term(self, n: int) -> Number:
        if n < 1:
            raise ValueError("Term index must be positive, got " + str(n))
        value = self.terms(np.array([n], dtype=np.int64))[0]
        return complex(value) if np.iscomplexobj(value) else float(value)

    def terms(self, indices: np.ndarray) -> np.ndarray:
        """Evaluate the terms at `indices` (positive integers)."""
        indices = np.asarray(indices, dtype=np.int64)
        if self.kind == StreamKind.USER_SUPPLIED:
            return _evaluate_scalar(self.function, indices)  # type: ignore[arg-type]
        with np.errstate(all="ignore"):
            values = _FAMILY_TERMS[self.kind](indices, self.exponent)
        bad = np.flatnonzero(~np.isfinite(values))
        if bad.size:
            index = int(indices[bad[0]])
            raise TermEvaluationError(
                index, OverflowError("non-finite term " + str(values[bad[0]]))
            )
        return values


def _power(indices: np.ndarray, s: Optional[complex]) -> np.ndarray:
    s = complex(s if s is not None else 1.0)
    n = indices.astype(np.float64)
    if s.imag == 0:
        return np.power(n, -s.real)
    return np.exp(-s * np.log(n))


def _alternating(indices: np.ndarray, s: Optional[complex]) -> np.ndarray:
    signs = np.where(indices % 2 == 1, 1.0, -1.0)
    return signs * _power(indices, s)


def _gamma_log_difference(indices: np.ndarray, s: Optional[complex]) -> np.ndarray:
    inv = 1.0 / indices.astype(np.float64)
    return inv - np.log1p(inv)


def _gamma_split(indices: np.ndarray, s: Optional[complex]) -> np.ndarray:
    inv = 1.0 / ((indices + 1) // 2).astype(np.float64)
    return np.where(indices % 2 == 1, inv, -np.log1p(inv))


_FAMILY_TERMS = {
    StreamKind.RECIPROCAL_POWER: _power,
    StreamKind.ALTERNATING_RECIPROCAL_POWER: _alternating,
    StreamKind.GAMMA_LOG_DIFFERENCE: _gamma_log_difference,
    StreamKind.GAMMA_SPLIT: _gamma_split,
}


def _evaluate_scalar(function: TermFunction, indices: np.ndarray) -> np.ndarray:
    values = []
    for n in indices:
        try:
            value = function(int(n))
        except (ArithmeticError, ValueError) as e:
            raise TermEvaluationError(int(n), e) from e
        if not np.isfinite(value):
            raise TermEvaluationError(
                int(n), OverflowError("non-finite term " + str(value))
            )
        values.append(value)
    return np.asarray(values)


def reciprocal_power(s: complex) -> TermStream:
    """The Dirichlet series terms n^-s."""
    return TermStream(StreamKind.RECIPROCAL_POWER, exponent=complex(s), name="power")


def alternating_reciprocal_power(s: complex) -> TermStream:
    """The alternating terms (-1)^(n-1) n^-s."""
    return TermStream(
        StreamKind.ALTERNATING_RECIPROCAL_POWER, exponent=complex(s), name="altpower"
    )


def gamma_log_difference() -> TermStream:
    """The Euler-Mascheroni terms 1/n - log(1 + 1/n)."""
    return TermStream(StreamKind.GAMMA_LOG_DIFFERENCE, name="gammaterms")


def gamma_split() -> TermStream:
    """The Euler-Mascheroni series with each term split in two.

    Term 2k-1 is 1/k and term 2k is -log(1 + 1/k), so consecutive pairs
    reproduce `gamma_log_difference` while the absolute series is harmonic.
    """
    return TermStream(StreamKind.GAMMA_SPLIT, name="gammasplit")


def user_supplied(
    function: TermFunction,
    certificate: Optional[ConvergenceCertificate] = None,
    name: str = "user",
) -> TermStream:
    return TermStream(
        StreamKind.USER_SUPPLIED, function=function, certificate=certificate, name=name
    )


@dataclass(frozen=True, eq=False)
class PartialSumTrace:
    """Running sums of a stream consumed along an injective index schedule."""

    indices: np.ndarray
    terms: np.ndarray
    sums: np.ndarray

    @classmethod
    def from_terms(
        cls, indices: Sequence[int], terms: Sequence[Number]
    ) -> PartialSumTrace:
        index_array = np.asarray(indices, dtype=np.int64)
        term_array = np.asarray(terms)
        if index_array.shape != term_array.shape:
            raise ValueError("indices and terms must have the same length")
        if np.unique(index_array).size != index_array.size:
            raise ValueError("Index schedule repeats an index")
        sums = np.cumsum(term_array)
        for array in (index_array, term_array, sums):
            array.flags.writeable = False
        return cls(indices=index_array, terms=term_array, sums=sums)

    @property
    def consumed_count(self) -> int:
        return int(self.indices.size)

    @property
    def final(self) -> Number:
        if not self.consumed_count:
            return 0.0
        value = self.sums[-1]
        return complex(value) if np.iscomplexobj(value) else float(value)


def partial_sum(stream: TermStream, count: int) -> PartialSumTrace:
    """Sum the first `count` terms of `stream` in natural order.

    Args:
        stream: the series to sum.
        count: number of terms, at least 1.

    Returns:
        PartialSumTrace: the consumed indices 1..count with running sums.

    Raises:
        TermEvaluationError: a term could not be evaluated; carries the index.
    """
    if count < 1:
        raise ValueError("count must be at least 1, got " + str(count))
    indices = np.arange(1, count + 1, dtype=np.int64)
    return PartialSumTrace.from_terms(indices, stream.terms(indices))


def partial_sum_along(stream: TermStream, schedule: Sequence[int]) -> PartialSumTrace:
    """Sum `stream` in the order given by an injective `schedule`."""
    indices = np.asarray(schedule, dtype=np.int64)
    if indices.size and indices.min() < 1:
        raise ValueError("Schedule indices must be positive")
    return PartialSumTrace.from_terms(indices, stream.terms(indices))


def _verdict(
    classification: VerdictClass,
    test: str,
    bound: Optional[float] = None,
    witness: Tuple[float, ...] = (),
    note: str = "",
) -> ConvergenceVerdict:
    return ConvergenceVerdict(classification, Evidence(test, bound, witness, note))


def _oscillation_witness(s: complex, horizon: int) -> Tuple[float, ...]:
    sums = np.cumsum(_power(np.arange(1, horizon + 1, dtype=np.int64), s))
    moduli = np.abs(sums[horizon // 2 :])
    return (float(moduli.min()), float(moduli.max()))


def dirichlet_domain_verdict(s: complex) -> ConvergenceVerdict:
    """Convergence verdict of the Dirichlet series sum n^-s.

    Re(s) > 1 is absolutely convergent. Everything else, including the
    whole line Re(s) = 1 (often called the line of convergence), diverges:
    s = 1 is the harmonic series and the other points of the line have
    bounded oscillating partial sums.
    """
    s = complex(s)
    sigma = s.real
    if sigma > 1:
        return _verdict(
            VerdictClass.ABSOLUTE,
            "integral-test",
            bound=1.0 + 1.0 / (sigma - 1.0),
        )
    if sigma == 1:
        if s.imag == 0:
            return _verdict(
                VerdictClass.DIVERGENT,
                "integral-test",
                note="harmonic series: partial sums grow like log N",
            )
        return _verdict(
            VerdictClass.DIVERGENT,
            "family-rule",
            witness=_oscillation_witness(s, DEFAULT_HORIZON),
            note="bounded oscillation on Re(s)=1",
        )
    if s.imag == 0:
        return _verdict(VerdictClass.DIVERGENT, "integral-test")
    return _verdict(
        VerdictClass.DIVERGENT,
        "term-test" if sigma <= 0 else "half-plane-rule",
    )


def classify(
    stream: TermStream,
    horizon: int = DEFAULT_HORIZON,
    certificate: Optional[ConvergenceCertificate] = None,
) -> ConvergenceVerdict:
    """Classify a stream as absolutely/conditionally convergent or divergent.

    Known families are decided by their analytic criteria, with numerical
    witness data computed over `horizon` terms. User streams are decided only
    from a certificate; without one the verdict is Inconclusive.

    Args:
        stream: the series to classify.
        horizon: number of terms used for witness data.
        certificate: overrides `stream.certificate` for user streams.

    Returns:
        ConvergenceVerdict: the classification and its evidence.
    """
    if horizon < 2:
        raise InvalidSpecError("horizon must be at least 2, got " + str(horizon))
    kind = stream.kind
    if kind == StreamKind.RECIPROCAL_POWER:
        exponent = complex(stream.exponent)  # type: ignore[arg-type]
        return dirichlet_domain_verdict(exponent)
    if kind == StreamKind.ALTERNATING_RECIPROCAL_POWER:
        exponent = complex(stream.exponent)  # type: ignore[arg-type]
        return _classify_alternating(exponent, horizon)
    if kind == StreamKind.GAMMA_LOG_DIFFERENCE:
        n = np.arange(1, horizon + 1, dtype=np.int64)
        scaled = stream.terms(n) * n.astype(np.float64) ** 2
        return _verdict(
            VerdictClass.ABSOLUTE,
            "comparison-test",
            bound=0.5,
            witness=(float(scaled.max()),),
            note="0 < 1/n - log(1+1/n) <= 1/(2n^2)",
        )
    if kind == StreamKind.GAMMA_SPLIT:
        trace = partial_sum(stream, 2 * (horizon // 2))
        return _verdict(
            VerdictClass.CONDITIONAL,
            "paired-partial-sums",
            witness=(float(trace.sums[-1]), float(np.abs(trace.terms).sum())),
            note="pairs sum to the convergent gamma terms; "
            + "absolute values dominate the harmonic series",
        )
    return _classify_certified(stream, horizon, certificate or stream.certificate)


def _classify_alternating(s: complex, horizon: int) -> ConvergenceVerdict:
    sigma = s.real
    if sigma > 1:
        return _verdict(
            VerdictClass.ABSOLUTE,
            "integral-test",
            bound=1.0 + 1.0 / (sigma - 1.0),
        )
    if sigma > 0:
        coefficients = np.where(np.arange(1, horizon + 1) % 2 == 1, 1.0, -1.0)
        observed = float(np.abs(np.cumsum(coefficients)).max())
        return _verdict(
            VerdictClass.CONDITIONAL,
            "bounded-partial-sums",
            bound=2.0,
            witness=(observed,),
            note="coefficients 1, -1, 1, ... have partial sums below K; "
            + "absolute series diverges by the integral test",
        )
    return _verdict(
        VerdictClass.DIVERGENT,
        "term-test",
        note="|a_n| = n^-Re(s) does not tend to zero",
    )


def _classify_certified(
    stream: TermStream,
    horizon: int,
    certificate: Optional[ConvergenceCertificate],
) -> ConvergenceVerdict:
    if certificate is None:
        return _verdict(VerdictClass.INCONCLUSIVE, "no-certificate")
    n = np.arange(1, horizon + 1, dtype=np.int64)
    values = stream.terms(n)
    weights = n.astype(np.float64)
    p = certificate.majorant_exponent
    if p is not None and p > 1:
        observed = float(np.abs(values * weights**p).max())
        return _verdict(
            VerdictClass.ABSOLUTE,
            "comparison-test",
            witness=(observed,),
            note="|a_n| n^p bounded with p > 1",
        )
    k = certificate.coefficient_bound
    sigma = certificate.weight_exponent
    if k is None or sigma is None or sigma <= 0:
        return _verdict(VerdictClass.INCONCLUSIVE, "insufficient-certificate")
    observed = float(np.abs(np.cumsum(values * weights**sigma)).max())
    if observed >= k:
        logger.warning(
            "Certificate bound K=%s contradicted by observed partial sum %s",
            k,
            observed,
        )
        return _verdict(
            VerdictClass.INCONCLUSIVE,
            "bounded-partial-sums",
            bound=k,
            witness=(observed,),
            note="certificate contradicted over the horizon",
        )
    if sigma > 1:
        return _verdict(
            VerdictClass.ABSOLUTE,
            "bounded-partial-sums",
            bound=k,
            witness=(observed,),
        )
    if certificate.absolutely_divergent:
        return _verdict(
            VerdictClass.CONDITIONAL,
            "bounded-partial-sums",
            bound=k,
            witness=(observed,),
        )
    return _verdict(
        VerdictClass.INCONCLUSIVE,
        "bounded-partial-sums",
        bound=k,
        witness=(observed,),
        note="convergent, absolute behaviour not certified",
    )
