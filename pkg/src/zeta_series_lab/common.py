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

from __future__ import annotations

import math
import sys

from .version import __version__

TOOL_NAME = "zeta-series-lab"
EPSILON = sys.float_info.epsilon
LN2 = math.log(2.0)


class LabError(ValueError):
    """Base class for every domain error raised by this package."""


class PoleError(LabError):
    pass


class RemovableSingularityError(LabError):
    pass


class IndeterminateFormError(LabError):
    pass


class SingularityError(LabError):
    pass


class SeriesExhaustedError(LabError):
    pass


class InvalidSpecError(LabError):
    pass


class TermEvaluationError(LabError):
    def __init__(self, index: int, cause: BaseException) -> None:
        super().__init__(
            "Unable to evaluate term " + str(index) + ": " + repr(cause)
        )
        self.index = index
        self.cause = cause


def tool_version(component: str) -> str:
    """Version tag embedded in every report, e.g. ``zeta-series-lab:zeta/0.1.0``."""
    return TOOL_NAME + ":" + component + "/" + __version__


def is_nonpositive_integer(z: complex) -> bool:
    z = complex(z)
    return z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real)
