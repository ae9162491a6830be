# Licensed under the MIT License.
"""Command-line interface.

Exit status is 0 on success, 2 on invalid input and 3 when a computational cap is exceeded.
"""

import argparse
import logging
import sys
from typing import List, Optional, Sequence

from noisybayes import env, set_log_level
from noisybayes.allocation import AllocationProblem
from noisybayes.allocation.strategies import (
    exhaustive_allocate,
    greedy_allocate,
    no_protection,
    uniform_allocate,
)
from noisybayes.channel import NoiseSpec
from noisybayes.common import MultStrategy, ScpMethod, Weighting
from noisybayes.common.errors import CapExceededError, ValidationError
from noisybayes.data import load_bundled_sample, load_dataset, save_dataset, synth_dataset
from noisybayes.data.synth import SYNTH_PROFILES
from noisybayes.experiments import (
    ResultTable,
    budgets_from_bits,
    budgets_per_feature,
    emit_results,
    pretty,
    run_allocation_sweep,
    run_approx_error,
    sample_points,
)
from noisybayes.experiments.sweep import STRATEGIES
from noisybayes.model import (
    Dataset,
    NaiveBayesModel,
    TestPoint,
    all_points,
    classify,
    dumps_model,
    load_model,
    log_terms,
    save_model,
    train,
)
from noisybayes.scp import (
    DEFAULT_HYBRID_ORDER,
    DEFAULT_K,
    DEFAULT_TRIALS,
    EvalConfig,
    check_subset_count,
    compute_scp,
    scp_averaged,
)
from noisybayes.version import __version__

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CAP = 3


def _parse_int_list(text: str, what: str) -> List[int]:
    """``"1,2,5"`` or an inclusive range ``"2:100"`` / ``"2:100:7"``."""
    try:
        if ":" in text:
            parts = [int(p) for p in text.split(":")]
            if len(parts) not in (2, 3) or (len(parts) == 3 and parts[2] < 1):
                raise ValueError(text)
            step = parts[2] if len(parts) == 3 else 1
            return list(range(parts[0], parts[1] + 1, step))
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError as err:
        raise ValidationError(f"Cannot parse {what} {text!r}: expected a comma list or "
                              f"an inclusive range start:stop[:step]") from err


def _parse_eps(text: str) -> List[float]:
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError as err:
        raise ValidationError(f"Cannot parse --eps {text!r}") from err


def _noise(args, n: int) -> NoiseSpec:
    eps = _parse_eps(args.eps)
    if len(eps) == 1:
        return NoiseSpec.uniform(eps[0], n)
    if len(eps) != n:
        raise ValidationError(f"--eps has {len(eps)} values for a model with {n} features")
    return NoiseSpec(tuple(eps))


def _scalar_eps(args) -> float:
    eps = _parse_eps(args.eps)
    if len(eps) != 1:
        raise ValidationError("This command takes a single base --eps value")
    return eps[0]


def _dataset(args) -> Dataset:
    return load_dataset(args.data) if args.data else load_bundled_sample()


def _model(args) -> NaiveBayesModel:
    if args.model:
        return load_model(args.model)
    return train(_dataset(args), args.smoothing)


def _test_points(args, model: NaiveBayesModel) -> List[TestPoint]:
    if args.all_points:
        return [TestPoint(tuple(row)) for row in all_points(model.n)]
    points = list(_dataset(args).points)
    if args.samples:
        points = sample_points(points, args.samples, args.seed)
    return points


def _eval_config(args, method: Optional[ScpMethod] = None) -> EvalConfig:
    return EvalConfig(
        method=method if method is not None else ScpMethod.from_tag(args.eval_method),
        k=args.k,
        shift=args.shift,
        order=args.hybrid_order,
        mult=MultStrategy.from_tag(args.mult),
        trials=args.trials,
        seed=args.seed)


def _check_hybrid_order(args, n: int) -> None:
    EvalConfig(order=args.hybrid_order).hybrid_order(n)


def _finish(args, table: ResultTable) -> None:
    if args.out:
        emit_results(table, args.format, args.out)
        if not args.quiet:
            print(pretty(table))
    else:
        emit_results(table, args.format)


def cmd_train(args) -> None:
    model = train(_dataset(args), args.smoothing)
    if args.out:
        save_model(model, args.out)
    else:
        sys.stdout.write(dumps_model(model))


def cmd_classify(args) -> None:
    model = _model(args)
    if args.point:
        points = [TestPoint.from_string(args.point)]
    else:
        points = list(_dataset(args).points)
    table = ResultTable(("point", "class"))
    for x in points:
        table.append(str(x), classify(model, x))
    _finish(args, table)


def cmd_scp(args) -> None:
    model = _model(args)
    _check_hybrid_order(args, model.n)
    noise = _noise(args, model.n)
    table = ResultTable(("point", "method", "scp", "change_prob"))
    if args.point is None:
        weighting = Weighting.from_tag(args.weighting)
        dataset = _dataset(args) if weighting == Weighting.Dataset else None
        result = scp_averaged(model, noise, weighting, dataset)
        table.append(f"avg:{weighting.tag}", "exact", result.value, result.change_prob)
    else:
        x = TestPoint.from_string(args.point)
        terms = log_terms(model, x)
        if args.method == "all":
            methods = [ScpMethod.Exact, ScpMethod.Approx, ScpMethod.Hybrid, ScpMethod.MonteCarlo]
            if terms.n > env.EXACT_MAX_FEATURES:
                methods.remove(ScpMethod.Exact)
        else:
            methods = [ScpMethod.from_tag(args.method)]
        if ScpMethod.Hybrid in methods:
            check_subset_count(terms.n, EvalConfig(order=args.hybrid_order).hybrid_order(terms.n))
        for method in methods:
            result = compute_scp(terms, noise, _eval_config(args, method))
            table.append(str(x), _eval_config(args, method).describe(), result.value,
                         result.change_prob)
    _finish(args, table)


def _pairs(args, n: int) -> List[int]:
    if args.budget_bits is not None:
        return budgets_from_bits(_parse_int_list(args.budget_bits, "--budget-bits"))
    if args.budget_per_feature is not None:
        return budgets_per_feature(n, _parse_int_list(args.budget_per_feature,
                                                      "--budget-per-feature"))
    if args.budget_pairs is not None:
        return _parse_int_list(args.budget_pairs, "--budget-pairs")
    raise ValidationError("Give a budget with --budget-pairs, --budget-bits or "
                          "--budget-per-feature")


def cmd_allocate(args) -> None:
    model = _model(args)
    _check_hybrid_order(args, model.n)
    budgets = _pairs(args, model.n)
    if len(budgets) != 1:
        raise ValidationError(f"allocate takes exactly one budget, got {budgets}")
    problem = AllocationProblem(model, tuple(_test_points(args, model)), _scalar_eps(args),
                                budgets[0], _eval_config(args))
    strategies = list(STRATEGIES) if args.strategy == "all" else [args.strategy]
    progress = not args.quiet

    results = {}
    for s in strategies:
        if s == "none":
            results[s] = no_protection(problem)
        elif s == "uniform":
            results[s] = uniform_allocate(problem)
        elif s == "greedy":
            results[s] = greedy_allocate(problem, progress)
        else:
            results[s] = exhaustive_allocate(problem, progress=progress)

    table = ResultTable(("strategy", "allocation", "bits", "avg_scp", "change_prob"))
    for s, result in results.items():
        table.append(s, " ".join(str(v) for v in result.alloc.r), result.alloc.total_bits,
                     result.avg_scp, result.change_prob)
    table.details = {"budget_pairs": problem.budget, "eval": problem.eval.describe()}
    if "greedy" in results:
        table.details["greedy_trajectory"] = [{
            "feature": step.feature,
            "avg_scp": step.avg_scp
        } for step in results["greedy"].trajectory]
    if "greedy" in results and "exhaustive" in results:
        gap = results["exhaustive"].avg_scp - results["greedy"].avg_scp
        table.details["exhaustive_minus_greedy"] = gap
        logger.info(f"Exhaustive minus greedy average SCP: {gap:.3e}")
    _finish(args, table)


def cmd_approx_error(args) -> None:
    model = _model(args)
    _check_hybrid_order(args, model.n)
    points = _test_points(args, model)
    k_list = _parse_int_list(args.k_list, "--k-list")
    methods = ["approx", "hybrid"] if args.methods == "both" else [args.methods]
    table = run_approx_error(model, points, _scalar_eps(args), k_list, methods, args.shift,
                             args.hybrid_order, MultStrategy.from_tag(args.mult),
                             progress=not args.quiet)
    _finish(args, table)


def cmd_sweep(args) -> None:
    model = _model(args)
    _check_hybrid_order(args, model.n)
    budgets = _pairs(args, model.n)
    strategies = [s.strip() for s in args.strategies.split(",") if s.strip()]
    table = run_allocation_sweep(model, _test_points(args, model), _scalar_eps(args), budgets,
                                 strategies, _eval_config(args), progress=not args.quiet)
    _finish(args, table)


def cmd_synth(args) -> None:
    data = synth_dataset(args.n, args.t, args.profile, args.seed)
    if args.out:
        save_dataset(data, args.out)
    else:
        table = ResultTable(tuple(data.feature_names) + ("class",))
        for point, label in zip(data.points, data.labels):
            table.append(*point.bits, label)
        emit_results(table, "csv")


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", help="model document (YAML); trained from --data if absent")
    common.add_argument("--data", help="dataset CSV; the bundled 16-feature sample if absent")
    common.add_argument("--smoothing", type=float, default=1.0, help="Laplace smoothing")
    common.add_argument("--eps", default="0.1", help="flip probability, or one per feature")
    common.add_argument("--k", type=int, default=DEFAULT_K, help="number of buckets")
    common.add_argument(
        "--shift",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="shift buckets so the target sits on a boundary")
    common.add_argument(
        "--hybrid-order",
        type=int,
        default=None,
        help=f"hybrid order, at most n (default: {DEFAULT_HYBRID_ORDER} capped at n)")
    common.add_argument("--mult", choices=["direct", "transform"], default="transform")
    common.add_argument("--trials", type=int, default=DEFAULT_TRIALS, help="Monte-Carlo trials")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="output file; standard output if absent")
    common.add_argument("--format", choices=["csv", "yaml"], default="csv")
    common.add_argument("--quiet", action="store_true", help="no progress bars or summaries")
    common.add_argument("--log-level", default=None, help="package log level, e.g. INFO")
    return common


def _add_points(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--all-points", action="store_true", help="use every binary point as the test set")
    parser.add_argument(
        "--samples", type=int, default=None, help="sample this many dataset points (by --seed)")


def _add_budgets(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--budget-pairs", help="budgets in repetition pairs, e.g. 1,2,4 or 1:6")
    group.add_argument("--budget-bits", help="budgets in bits; must be even")
    group.add_argument("--budget-per-feature", help="pairs per feature R; total budget n*R")
    parser.add_argument(
        "--eval-method", choices=["exact", "approx", "hybrid"], default="hybrid",
        help="SCP evaluation used to score allocations")


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="noisybayes",
        description="Same-classification probability of naive Bayes under feature noise")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", parents=[common], help="train a model from a dataset")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("classify", parents=[common], help="classify points")
    p.add_argument("--point", help="bit string such as 0110; dataset points if absent")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("scp", parents=[common], help="SCP of a point or averaged over points")
    p.add_argument("--point", help="bit string; averaged exact SCP if absent")
    p.add_argument(
        "--method",
        choices=["exact", "approx", "hybrid", "monte-carlo", "all"],
        default="exact")
    p.add_argument("--weighting", choices=["uniform", "marginal", "dataset"], default="uniform")
    p.set_defaults(func=cmd_scp)

    p = sub.add_parser("approx-error", parents=[common], help="approximation error against k")
    _add_points(p)
    p.add_argument("--k-list", default="2:100", help="bucket counts, e.g. 2:100 or 2,5,50")
    p.add_argument("--methods", choices=["approx", "hybrid", "both"], default="both")
    p.set_defaults(func=cmd_approx_error, samples=50)

    p = sub.add_parser("allocate", parents=[common], help="allocate a repetition budget")
    _add_points(p)
    _add_budgets(p)
    p.add_argument("--strategy", choices=list(STRATEGIES) + ["all"], default="greedy")
    p.set_defaults(func=cmd_allocate)

    p = sub.add_parser("sweep", parents=[common], help="allocation strategies across budgets")
    _add_points(p)
    _add_budgets(p)
    p.add_argument("--strategies", default=",".join(STRATEGIES))
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("synth", parents=[common], help="generate a synthetic dataset")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--profile", choices=sorted(SYNTH_PROFILES), default="mixed")
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.log_level:
            set_log_level(args.log_level)
    except ValueError as err:
        print(f"noisybayes: error: {err}", file=sys.stderr)
        return EXIT_INVALID
    try:
        args.func(args)
    except CapExceededError as err:
        print(f"noisybayes: {err}", file=sys.stderr)
        return EXIT_CAP
    except ValidationError as err:
        print(f"noisybayes: error: {err}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK
