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

"""Command-line front end: one subcommand per engine, one report per run.

Exit status is 0 on success, 1 when an invariant suite of the report
fails and 2 on usage or domain errors.
"""

from __future__ import annotations

import argparse
import logging
import shlex
import sys
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .common import TOOL_NAME, InvalidSpecError, RemovableSingularityError, tool_version
from .gamma_euler import (
    EulerGammaMethod,
    GammaMethod,
    digamma_near_origin,
    euler_gamma,
    euler_gamma_corrected,
    euler_gamma_tail,
    gauss_gamma,
    log_gamma_derivative,
    weierstrass_gamma,
)
from .hankel_quadrature import (
    ContourSpec,
    contour_and_zeta,
    decay_exponent,
    middle_term_decay,
    reconstruct_zeta,
)
from .rearrangement import rearrange_to_diverge, rearrange_to_target, split_by_sign
from .renorm_schemes import (
    FACTOR_PAIRS,
    RenormParams,
    SchemeFactor,
    alpha_from_bare,
    alpha_minimal_subtraction,
    bare_from_alpha,
    scheme_divergence,
)
from .report import Report, RunConfig, write_report
from .series_core import (
    TermStream,
    VerdictClass,
    alternating_reciprocal_power,
    gamma_split,
    reciprocal_power,
)
from .zeta_engines import (
    GRID_METHODS,
    AgreementGrid,
    EvalResult,
    Region,
    ZetaMethod,
    agreement_grid,
    agreement_sample,
    find_critical_zeros,
    zeta_dirichlet,
    zeta_eta,
    zeta_functional,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_SUITE_FAILED = 1
EXIT_USAGE = 2

SAMPLE_REGION = Region(1.1, 5.0, -5.0, 5.0)
DIVERGENCE_REGION = Region(-2.0, 1.0, -5.0, 5.0)
DEFAULT_DELTAS = (0.2, 0.1, 0.05)
DEFAULT_ZERO_HEIGHT = 26.0
# relative tolerance on the measured circle-term decay exponent
DECAY_TOLERANCE = 0.25

# only altzeta reads the exponent
SERIES: Dict[str, Callable[[float], TermStream]] = {
    "altharmonic": lambda _: alternating_reciprocal_power(1.0),
    "altzeta": alternating_reciprocal_power,
    "harmonic": lambda _: reciprocal_power(1.0),
    "gammasplit": lambda _: gamma_split(),
}
DEFAULT_SERIES_EXPONENT = 0.5
METHOD_NAMES: Dict[str, ZetaMethod] = {
    "dirichlet": ZetaMethod.DIRICHLET_SERIES,
    "eta": ZetaMethod.ETA_THIRD_DEFINITION,
    "functional": ZetaMethod.FUNCTIONAL_EQUATION,
    "hankel": ZetaMethod.HANKEL_CONTOUR,
}
ZETA_COLUMNS = ("re", "im", "method", "verdict", "value_re", "value_im", "err")

Axis = Tuple[float, float, float]
Handler = Callable[[argparse.Namespace, RunConfig, str], Report]


def parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError("not a complex number: " + text)


def parse_axis(text: str) -> Axis:
    parts = text.split(":")
    try:
        low, high, step = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError("expected lo:hi:step, got " + text)
    if step <= 0 or high < low:
        raise argparse.ArgumentTypeError("need lo <= hi and step > 0, got " + text)
    return low, high, step


def parse_floats(text: str) -> List[float]:
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated numbers: " + text)


def parse_methods(text: str) -> List[ZetaMethod]:
    names = [p.strip() for p in text.split(",") if p.strip()]
    unknown = [n for n in names if n not in METHOD_NAMES]
    if unknown or not names:
        raise argparse.ArgumentTypeError(
            "methods must be among " + ",".join(METHOD_NAMES) + ", got " + text
        )
    return [METHOD_NAMES[n] for n in names]


def _expand_grid(argv: Sequence[str]) -> List[str]:
    # "--grid -0.5:2.5:0.25 0:2:0.25" would read the negative axis as an option
    expanded: List[str] = []
    i = 0
    while i < len(argv):
        if argv[i] == "--grid" and i + 2 < len(argv):
            expanded += ["--grid-re=" + argv[i + 1], "--grid-im=" + argv[i + 2]]
            i += 3
        else:
            expanded.append(argv[i])
            i += 1
    return expanded


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), help="report format")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, help="seed of sampled suites")
    common.add_argument("--config", help="key=value file overriding defaults")
    common.add_argument("--workers", type=int, help="threads for grid evaluation")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logs")

    parser = argparse.ArgumentParser(
        prog=TOOL_NAME,
        description="Series convergence, Gamma, zeta continuation and "
        + "renormalization-scheme experiments with deterministic reports.",
    )
    parser.add_argument("--version", action="version", version=tool_version("cli"))
    commands = parser.add_subparsers(dest="command", required=True)

    gamma = commands.add_parser(
        "gamma", parents=[common], help="Euler-Mascheroni constant and Gamma"
    )
    gamma.add_argument("--euler", action="store_true", help="all three gamma forms")
    gamma.add_argument("--at", type=float, action="append", help="Gamma at a point")
    gamma.add_argument("--digamma", action="store_true", help="-psi(1) and psi(z~0)")
    gamma.add_argument("--n", type=int, help="number of terms or factors")
    gamma.set_defaults(handler=cmd_gamma)

    zeta = commands.add_parser("zeta", parents=[common], help="zeta engines")
    mode = zeta.add_mutually_exclusive_group(required=True)
    mode.add_argument("--eval", type=parse_complex, metavar="S")
    mode.add_argument(
        "--grid",
        nargs=2,
        type=parse_axis,
        metavar=("RE", "IM"),
        help="lattice given as lo:hi:step per axis",
    )
    mode.add_argument("--grid-re", type=parse_axis, help=argparse.SUPPRESS)
    mode.add_argument("--zeros", action="store_true", help="sign changes of Z(t)")
    mode.add_argument("--sample", type=int, metavar="N", help="random point suite")
    zeta.add_argument("--grid-im", type=parse_axis, help=argparse.SUPPRESS)
    zeta.add_argument("--method", type=parse_methods, help="e.g. dirichlet,eta")
    zeta.add_argument("--tmax", type=float, default=DEFAULT_ZERO_HEIGHT)
    zeta.add_argument("--tol", type=float, help="zero bracket width")
    zeta.add_argument("--terms", type=int, help="Dirichlet terms before the tail")
    zeta.set_defaults(handler=cmd_zeta)

    rearrange = commands.add_parser(
        "rearrange", parents=[common], help="Riemann rearrangements"
    )
    rearrange.add_argument("--series", choices=tuple(SERIES), required=True)
    rearrange.add_argument(
        "--s",
        dest="exponent",
        type=float,
        default=DEFAULT_SERIES_EXPONENT,
        help="exponent of the altzeta series, 0 < s <= 1",
    )
    goal = rearrange.add_mutually_exclusive_group(required=True)
    goal.add_argument("--target", type=float)
    goal.add_argument("--diverge", type=parse_floats, metavar="T1,T2,...")
    rearrange.add_argument("--steps", type=int)
    rearrange.set_defaults(handler=cmd_rearrange)

    defaults = ContourSpec()
    contour = commands.add_parser(
        "contour", parents=[common], help="Hankel contour integrals"
    )
    contour.add_argument("--s", type=parse_complex, default=complex(1.5))
    contour.add_argument("--decay", action="store_true", help="circle term vs delta")
    contour.add_argument("--deltas", type=parse_floats, default=list(DEFAULT_DELTAS))
    contour.add_argument("--delta", type=float, default=defaults.delta)
    contour.add_argument("--offset", type=float, default=defaults.offset)
    contour.add_argument("--xmax", type=float, default=defaults.x_max)
    contour.add_argument("--nodes-ray", type=int, default=defaults.nodes_ray)
    contour.add_argument("--nodes-circle", type=int, default=defaults.nodes_circle)
    contour.set_defaults(handler=cmd_contour)

    renorm = commands.add_parser(
        "renorm", parents=[common], help="coupling and MS-bar factors"
    )
    renorm.add_argument("--eps", type=parse_floats, default=[0.0])
    renorm.add_argument("--mu", type=float, default=1.0)
    renorm.add_argument("--e0", type=float, default=1.0)
    renorm.add_argument(
        "--factor",
        choices=[f.value for f in SchemeFactor],
        default=SchemeFactor.EXP_GAMMA_EPS.value,
    )
    renorm.add_argument("--z-alpha", type=float, default=1.0)
    table = renorm.add_mutually_exclusive_group()
    table.add_argument("--scheme-table", action="store_true")
    table.add_argument("--roundtrip", action="store_true")
    renorm.set_defaults(handler=cmd_renorm)
    return parser


def cmd_gamma(args: argparse.Namespace, config: RunConfig, command: str) -> Report:
    report = Report(
        tool_version("gamma"), command, ("method", "point", "n", "value", "err")
    )
    if not (args.euler or args.at or args.digamma):
        args.euler = True
    if args.euler:
        n = args.n or config.euler_terms
        values = []
        for method in EulerGammaMethod:
            value = euler_gamma(method, n)
            values.append(value)
            tail = abs(euler_gamma_tail(method, n))
            report.add_row(method.value, None, n, value, tail)
        spread = max(values) - min(values)
        report.summary["euler_spread"] = spread
        report.suites["euler_spread"] = spread <= config.euler_spread_tolerance
    n = args.n or config.gamma_terms
    for x in args.at or ():
        gauss = gauss_gamma(x, n)
        report.add_row(
            GammaMethod.GAUSS_LIMIT.value, x, n, gauss.value, gauss.error_estimate
        )
        product = weierstrass_gamma(x, n)
        report.add_row(
            GammaMethod.WEIERSTRASS_PRODUCT.value,
            x,
            n,
            float(product.value.real),
            product.error_estimate,
        )
    if args.digamma:
        reference = euler_gamma_corrected(n)
        minus_psi = -log_gamma_derivative(1.0, n).real
        report.add_row("NegDigammaAtOne", 1.0, n, minus_psi, abs(minus_psi - reference))
        z = 0.01
        near = digamma_near_origin(z).real
        exact = log_gamma_derivative(z, n).real
        report.add_row("DigammaNearOrigin", z, n, near, abs(near - exact))
        report.suites["gamma_is_minus_digamma_at_one"] = (
            abs(minus_psi - reference) <= config.digamma_tolerance
        )
    return report


def _zeta_row(report: Report, result: EvalResult) -> None:
    value = result.value
    report.add_row(
        result.s.real,
        result.s.imag,
        result.method.value,
        result.verdict.classification.value,
        None if value is None else value.real,
        None if value is None else value.imag,
        None if value is None else result.error_estimate,
    )


def _grid_rows(report: Report, grid: AgreementGrid) -> None:
    for point in grid.points:
        failed = dict(point.failures)
        for method in grid.methods:
            result = point.result(method)
            if result is not None:
                _zeta_row(report, result)
            elif method in failed:
                logger.info(
                    "%s failed at %s: %s", method.value, point.s, failed[method]
                )
                report.add_row(
                    point.s.real,
                    point.s.imag,
                    method.value,
                    VerdictClass.INCONCLUSIVE.value,
                    None,
                    None,
                    None,
                )


def _half_plane_holds(grid: AgreementGrid) -> bool:
    dirichlet = [
        r
        for p in grid.points
        for r in p.results
        if r.method == ZetaMethod.DIRICHLET_SERIES and r.s.real <= 1
    ]
    return all(
        r.verdict.classification == VerdictClass.DIVERGENT and r.value is None
        for r in dirichlet
    )


def _evaluate(method: ZetaMethod, s: complex, config: RunConfig) -> EvalResult:
    if method == ZetaMethod.DIRICHLET_SERIES:
        return zeta_dirichlet(s, config.dirichlet_terms)
    if method == ZetaMethod.ETA_THIRD_DEFINITION:
        return zeta_eta(s)
    if method == ZetaMethod.FUNCTIONAL_EQUATION:
        return zeta_functional(s, config.gamma_terms)
    return reconstruct_zeta(s, depth=config.gamma_terms)


def _grid_methods(methods: Optional[Sequence[ZetaMethod]]) -> Tuple[ZetaMethod, ...]:
    chosen = tuple(methods or GRID_METHODS)
    if ZetaMethod.HANKEL_CONTOUR in chosen:
        raise InvalidSpecError("The hankel method is available with --eval only")
    return chosen


def cmd_zeta(args: argparse.Namespace, config: RunConfig, command: str) -> Report:
    version = tool_version("zeta")
    if args.terms:
        config = config.with_overrides(dirichlet_terms=args.terms)
    if args.zeros:
        tol = args.tol or config.zero_tolerance
        report = Report(
            version, command, ("index", "t_low", "t_high", "z_low", "z_high")
        )
        brackets = find_critical_zeros(args.tmax, tol)
        for i, b in enumerate(brackets, start=1):
            report.add_row(i, b.t_low, b.t_high, b.z_low, b.z_high)
        report.summary["zero_count"] = len(brackets)
        report.suites["brackets_change_sign"] = all(
            b.z_low * b.z_high <= 0 and b.t_high - b.t_low <= tol for b in brackets
        )
        return report

    report = Report(version, command, ZETA_COLUMNS)
    if args.eval is not None:
        methods = args.method or list(GRID_METHODS)
        results = [_evaluate(m, args.eval, config) for m in methods]
        for result in results:
            _zeta_row(report, result)
        values = [r.value for r in results if r.value is not None]
        deltas = [abs(a - b) for i, a in enumerate(values) for b in values[i + 1 :]]
        report.summary["max_delta"] = max(deltas) if deltas else None
        report.suites["method_agreement"] = all(
            d <= config.agreement_tolerance for d in deltas
        )
        return report

    methods = _grid_methods(args.method)
    if args.sample is not None:
        if args.sample < 1:
            raise InvalidSpecError("--sample needs at least one point")
        grid = agreement_sample(
            args.sample, config.seed, SAMPLE_REGION, methods, config.workers
        )
        divergent = agreement_sample(
            args.sample,
            config.seed + 1,
            DIVERGENCE_REGION,
            (ZetaMethod.DIRICHLET_SERIES,),
            config.workers,
        )
        _grid_rows(report, grid)
        _grid_rows(report, divergent)
        report.summary["max_delta"] = grid.max_delta()
        report.suites["tri_method_agreement"] = (
            grid.max_delta() <= config.agreement_tolerance
        )
        report.suites["dirichlet_half_plane"] = _half_plane_holds(divergent)
        return report

    re_axis = args.grid_re or args.grid[0]
    im_axis = args.grid_im or (args.grid[1] if args.grid else None)
    if im_axis is None:
        raise InvalidSpecError("--grid needs an axis for each of re and im")
    region = Region(re_axis[0], re_axis[1], im_axis[0], im_axis[1])
    grid = agreement_grid(region, re_axis[2], im_axis[2], methods, config.workers)
    _grid_rows(report, grid)
    report.summary["points"] = len(grid.points)
    report.summary["max_delta"] = grid.max_delta()
    report.suites["method_agreement"] = grid.max_delta() <= config.agreement_tolerance
    if ZetaMethod.DIRICHLET_SERIES in methods:
        report.suites["dirichlet_half_plane"] = _half_plane_holds(grid)
    return report


def cmd_rearrange(args: argparse.Namespace, config: RunConfig, command: str) -> Report:
    steps = args.steps or config.rearrange_steps
    if args.series == "altzeta" and not 0 < args.exponent <= 1:
        raise ValueError(
            "altzeta is conditionally convergent only for 0 < s <= 1, got "
            + format(args.exponent, "g")
        )
    split = split_by_sign(SERIES[args.series](args.exponent), 2 * steps)
    if args.target is not None:
        plan = rearrange_to_target(split, args.target, steps)
    else:
        plan = rearrange_to_diverge(split, args.diverge, steps)
    report = Report(
        tool_version("rearrange"),
        command,
        ("step", "original_index", "term", "partial_sum"),
    )
    trace = plan.trace
    for step, (index, term, total) in enumerate(
        zip(trace.indices.tolist(), trace.terms.tolist(), trace.sums.tolist()),
        start=1,
    ):
        report.add_row(step, index, term, total)
    report.summary["final_sum"] = plan.final_sum
    if plan.target is not None:
        distance = abs(plan.final_sum - plan.target)
        report.summary["target"] = plan.target
        report.summary["final_distance"] = distance
        report.summary["final_bound"] = plan.final_bound()
        report.summary["switches"] = len(plan.switches)
        report.suites["switch_invariant"] = plan.crossing_invariant_holds()
        report.suites["final_bound"] = distance <= plan.final_bound()
    else:
        reached = set(plan.reached_thresholds)
        for threshold in plan.thresholds:
            report.summary["reached " + format(threshold, "g")] = threshold in reached
        report.suites["thresholds_reached"] = plan.complete and reached == set(
            plan.thresholds
        )
    return report


def cmd_contour(args: argparse.Namespace, config: RunConfig, command: str) -> Report:
    spec = ContourSpec(
        delta=args.delta,
        offset=args.offset,
        x_max=args.xmax,
        nodes_ray=args.nodes_ray,
        nodes_circle=args.nodes_circle,
    )
    s = args.s
    version = tool_version("contour")
    if args.decay:
        if s.imag != 0:
            raise InvalidSpecError("--decay needs a real s, got " + str(s))
        magnitudes = middle_term_decay(s.real, args.deltas, spec)
        report = Report(version, command, ("delta", "circle_magnitude"))
        for delta, magnitude in zip(args.deltas, magnitudes):
            report.add_row(delta, magnitude)
        expected = s.real - 1.0
        report.summary["expected_exponent"] = expected
        report.suites["strictly_decreasing"] = all(
            b < a for a, b in zip(magnitudes, magnitudes[1:])
        )
        if len(magnitudes) >= 2:
            exponent = decay_exponent(args.deltas, magnitudes)
            report.summary["decay_exponent"] = exponent
            report.suites["decay_exponent"] = (
                abs(exponent - expected) <= DECAY_TOLERANCE * expected
            )
        return report

    contour, zeta = contour_and_zeta(s, spec, config.gamma_terms)
    report = Report(version, command, ("quantity", "value_re", "value_im", "err"))
    estimate = contour.truncation_estimate
    for name, value in (
        ("upper_ray", contour.upper_ray),
        ("circle", contour.circle),
        ("lower_ray", contour.lower_ray),
        ("total", contour.total),
    ):
        report.add_row(name, value.real, value.imag, estimate)
    assert zeta.value is not None
    report.add_row(
        "zeta_contour", zeta.value.real, zeta.value.imag, zeta.error_estimate
    )
    if s.real > 0:
        try:
            eta = zeta_eta(s)
        except RemovableSingularityError as e:
            logger.warning("No eta comparison at s=%s: %s", s, e)
        else:
            assert eta.value is not None
            report.add_row(
                "zeta_eta", eta.value.real, eta.value.imag, eta.error_estimate
            )
            delta = abs(zeta.value - eta.value)
            report.summary["eta_delta"] = delta
            report.suites["eta_agreement"] = delta <= config.contour_tolerance
    return report


def _pair_label(pair: Tuple[SchemeFactor, SchemeFactor]) -> str:
    return pair[0].value + "-" + pair[1].value


def cmd_renorm(args: argparse.Namespace, config: RunConfig, command: str) -> Report:
    version = tool_version("renorm")
    factor = SchemeFactor(args.factor)
    if args.scheme_table:
        table = scheme_divergence(args.eps, config.gamma_terms)
        report = Report(version, command, ("epsilon", "pair", "difference"))
        for row in table.rows:
            for pair in FACTOR_PAIRS:
                report.add_row(row.epsilon, _pair_label(pair), row.differences[pair])
        slopes = table.slopes()
        for pair, slope in slopes.items():
            report.summary["slope " + _pair_label(pair)] = slope
        report.suites["quadratic_equivalence"] = all(
            abs(slope - 2.0) <= config.slope_tolerance for slope in slopes.values()
        )
        return report

    if args.roundtrip:
        report = Report(
            version,
            command,
            ("epsilon", "forward", "inverse", "expected", "recovered", "defect"),
        )
        matched = []
        for epsilon in args.eps:
            p = RenormParams(args.mu, epsilon, args.e0)
            alpha = alpha_from_bare(p, factor)
            expected = p.bare_coupling * args.z_alpha
            for inverse in SchemeFactor:
                recovered = bare_from_alpha(alpha, p, args.z_alpha, inverse)
                defect = abs(recovered - expected) / (abs(expected) or 1.0)
                report.add_row(
                    epsilon, factor.value, inverse.value, expected, recovered, defect
                )
                if inverse == factor:
                    matched.append(defect)
        report.summary["max_matched_defect"] = max(matched)
        report.suites["matched_roundtrip"] = all(
            d < config.roundtrip_tolerance for d in matched
        )
        return report

    report = Report(
        version,
        command,
        ("epsilon", "mu", "e0", "factor", "d", "alpha_over_4pi", "alpha_ms"),
    )
    for epsilon in args.eps:
        p = RenormParams(args.mu, epsilon, args.e0)
        report.add_row(
            epsilon,
            args.mu,
            args.e0,
            factor.value,
            p.d,
            alpha_from_bare(p, factor),
            alpha_minimal_subtraction(p),
        )
    return report


def load_config(args: argparse.Namespace) -> RunConfig:
    config = RunConfig.from_file(args.config) if args.config else RunConfig()
    return config.with_overrides(
        format=args.format, out=args.out, seed=args.seed, workers=args.workers
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_expand_grid(argv))
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    if args.verbose:
        logging.basicConfig(
            level=logging.DEBUG,
            stream=sys.stderr,
            format="%(levelname)s %(name)s: %(message)s",
        )
    command = TOOL_NAME + " " + shlex.join(argv)
    handler: Handler = args.handler
    try:
        config = load_config(args)
        report = handler(args, config, command)
    except (ValueError, OSError) as e:
        logger.debug("%s failed", args.command, exc_info=True)
        print(TOOL_NAME + ": error: " + str(e), file=sys.stderr)
        return EXIT_USAGE
    write_report(report, config)
    failed = [name for name, ok in report.suites.items() if not ok]
    if failed:
        logger.warning("Failed suites: %s", ", ".join(failed))
        return EXIT_SUITE_FAILED
    return EXIT_OK
