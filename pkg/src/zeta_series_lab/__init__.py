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

from .common import (
    IndeterminateFormError,
    InvalidSpecError,
    LabError,
    PoleError,
    RemovableSingularityError,
    SeriesExhaustedError,
    SingularityError,
    TermEvaluationError,
)
from .gamma_euler import (
    EulerGammaMethod,
    GammaEvalResult,
    GammaMethod,
    euler_gamma,
    gauss_gamma,
    weierstrass_gamma,
)
from .hankel_quadrature import (
    Branch,
    ContourResult,
    ContourSpec,
    contour_and_zeta,
    integrand,
    integrate_contour,
    middle_term_decay,
    reconstruct_zeta,
)
from .rearrangement import (
    RearrangementPlan,
    rearrange_to_diverge,
    rearrange_to_target,
    split_by_sign,
)
from .renorm_schemes import (
    RenormParams,
    SchemeFactor,
    alpha_from_bare,
    bare_from_alpha,
    scheme_divergence,
)
from .report import Report, RunConfig
from .series_core import (
    ConvergenceVerdict,
    PartialSumTrace,
    TermStream,
    VerdictClass,
    alternating_reciprocal_power,
    classify,
    partial_sum,
    reciprocal_power,
)
from .version import __version__
from .zeta_engines import (
    EvalResult,
    ZetaMethod,
    agreement_grid,
    find_critical_zeros,
    zeta_dirichlet,
    zeta_eta,
    zeta_functional,
)

__all__ = [
    "Branch",
    "ContourResult",
    "ContourSpec",
    "ConvergenceVerdict",
    "EulerGammaMethod",
    "EvalResult",
    "GammaEvalResult",
    "GammaMethod",
    "IndeterminateFormError",
    "InvalidSpecError",
    "LabError",
    "PartialSumTrace",
    "PoleError",
    "RearrangementPlan",
    "RemovableSingularityError",
    "RenormParams",
    "Report",
    "RunConfig",
    "SchemeFactor",
    "SeriesExhaustedError",
    "SingularityError",
    "TermEvaluationError",
    "TermStream",
    "VerdictClass",
    "ZetaMethod",
    "agreement_grid",
    "alpha_from_bare",
    "alternating_reciprocal_power",
    "bare_from_alpha",
    "classify",
    "contour_and_zeta",
    "euler_gamma",
    "find_critical_zeros",
    "gauss_gamma",
    "integrand",
    "integrate_contour",
    "middle_term_decay",
    "partial_sum",
    "rearrange_to_diverge",
    "rearrange_to_target",
    "reciprocal_power",
    "reconstruct_zeta",
    "scheme_divergence",
    "split_by_sign",
    "weierstrass_gamma",
    "zeta_dirichlet",
    "zeta_eta",
    "zeta_functional",
    "__version__",
]
