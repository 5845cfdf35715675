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

from unittest import TestCase

import numpy as np
import pytest


def pytest_configure() -> None:
    pytest.euler_gamma: float = float(np.euler_gamma)  # type: ignore


@pytest.fixture
def test_case() -> TestCase:
    return TestCase()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240229)
