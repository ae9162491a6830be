# Licensed under the MIT License.
"""Classification change probability of each allocation strategy across budgets."""

import logging
import time
from typing import Dict, List, Optional, Sequence

from noisybayes.allocation import AllocationProblem, AllocationResult
from noisybayes.allocation.strategies import (
    exhaustive_allocate,
    greedy_allocate,
    no_protection,
    uniform_allocate,
)
from noisybayes.common.errors import CapExceededError, ValidationError
from noisybayes.model import NaiveBayesModel, TestPoint
from noisybayes.scp import EvalConfig
from .emit import ResultTable

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ("budget", "strategy", "change_prob", "ratio_vs_uniform")
STRATEGIES = ("none", "uniform", "greedy", "exhaustive")


def budgets_from_bits(bits: Sequence[int]) -> List[int]:
    """Bit budgets converted to pairs; repetition adds copies two at a time, so odd budgets are
    rejected."""
    pairs = []
    for b in bits:
        if int(b) != b or b < 0:
            raise ValidationError(f"bit budget must be a non-negative integer, got {b!r}")
        if b % 2:
            raise ValidationError(
                f"bit budget {b} is odd; repetition coding adds copies in pairs (2 bits), "
                f"so only even bit budgets can be spent")
        pairs.append(int(b) // 2)
    return pairs


def budgets_per_feature(n: int, per_feature: Sequence[int]) -> List[int]:
    """``R`` pairs per feature on average, i.e. a total of ``n R`` pairs."""
    for r in per_feature:
        if int(r) != r or r < 0:
            raise ValidationError(f"per-feature budget must be a non-negative integer, got {r!r}")
    return [n * int(r) for r in per_feature]


def change_ratio(uniform_change: float, change: float) -> float:
    """``uniform_change / change``; two zeros compare as equal."""
    if change == 0.0:
        return 1.0 if uniform_change == 0.0 else float("inf")
    return uniform_change / change


def run_allocation_sweep(model: NaiveBayesModel,
                         test_points: Sequence[TestPoint],
                         eps: float,
                         budgets: Sequence[int],
                         strategies: Sequence[str] = STRATEGIES,
                         config: EvalConfig = EvalConfig(),
                         max_candidates: Optional[int] = None,
                         progress: bool = False,
                         num_workers: Optional[int] = None) -> ResultTable:
    """One row per ``(budget, strategy)`` with ``1 - avg SCP`` and the uniform/strategy ratio.

    Greedy runs once at the largest budget and reads smaller budgets off its trajectory. An
    exhaustive search over the candidate cap is skipped for that budget with a warning.
    """
    for s in strategies:
        if s not in STRATEGIES:
            raise ValidationError(f"Unknown strategy {s!r}; expected a subset of {STRATEGIES}")
    budgets = [int(b) for b in budgets]
    if any(b < 0 for b in budgets):
        raise ValidationError(f"budgets must be non-negative, got {budgets}")
    start = time.perf_counter()

    problems = {b: AllocationProblem(model, tuple(test_points), eps, b, config) for b in budgets}
    greedy = None
    if "greedy" in strategies and budgets:
        greedy = greedy_allocate(problems[max(budgets)], progress, num_workers)

    table = ResultTable(SWEEP_COLUMNS)
    allocations: Dict[str, Dict[str, List[int]]] = {}
    skipped = []
    for budget in budgets:
        problem = problems[budget]
        uniform = uniform_allocate(problem)
        results: Dict[str, AllocationResult] = {}
        for s in strategies:
            if s == "none":
                results[s] = no_protection(problem)
            elif s == "uniform":
                results[s] = uniform
            elif s == "greedy":
                results[s] = greedy.prefix(budget)
            else:
                try:
                    results[s] = exhaustive_allocate(problem, max_candidates, progress,
                                                     num_workers)
                except CapExceededError as err:
                    logger.warning(f"Skipping exhaustive search at budget {budget}: {err}")
                    skipped.append(budget)
        for s, result in results.items():
            table.append(budget, s, result.change_prob,
                         change_ratio(uniform.change_prob, result.change_prob))
        allocations[str(budget)] = {s: list(r.alloc.r) for s, r in results.items()}

    logger.info(f"Allocation sweep over budgets {budgets} in {time.perf_counter() - start:.3f}s")
    table.details = {"eps": float(eps), "n": model.n, "points": len(test_points),
                     "eval": config.describe(), "allocations": allocations}
    if skipped:
        table.details["exhaustive_skipped"] = skipped
    return table
