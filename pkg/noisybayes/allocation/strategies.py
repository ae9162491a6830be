# Licensed under the MIT License.
"""Budget allocation strategies: uniform baseline, greedy and exhaustive search."""

import logging
import time
from typing import Iterator, Optional, Tuple

from scipy.special import comb
from tqdm import tqdm

from noisybayes import env
from noisybayes.channel import RedundancyAllocation
from noisybayes.common.errors import CapExceededError, ValidationError
from .problem import (
    AllocationProblem,
    AllocationResult,
    GreedyStep,
    evaluate_allocation,
    evaluate_many,
)

logger = logging.getLogger(__name__)

_EXHAUSTIVE_CHUNK = 1024


def uniform_allocation(n: int, budget: int) -> RedundancyAllocation:
    """``budget // n`` pairs each; the remaining ``budget % n`` go to the lowest-indexed features."""
    if n < 1:
        raise ValidationError(f"n must be positive, got {n}")
    if budget < 0:
        raise ValidationError(f"budget must be non-negative, got {budget}")
    share, remainder = divmod(budget, n)
    if remainder:
        logger.debug(f"Budget {budget} is not divisible by n={n}; "
                     f"features 0..{remainder - 1} get one extra pair")
    return RedundancyAllocation(tuple(share + (1 if i < remainder else 0) for i in range(n)))


def uniform_allocate(problem: AllocationProblem) -> AllocationResult:
    alloc = uniform_allocation(problem.n, problem.budget)
    return AllocationResult(alloc, evaluate_allocation(problem, alloc), "uniform", evaluations=1)


def no_protection(problem: AllocationProblem) -> AllocationResult:
    alloc = RedundancyAllocation.zeros(problem.n)
    return AllocationResult(alloc, evaluate_allocation(problem, alloc), "none", evaluations=1)


def greedy_allocate(problem: AllocationProblem,
                    progress: bool = False,
                    num_workers: Optional[int] = None) -> AllocationResult:
    """Spend the budget one pair at a time, each time on the feature whose extra pair gives the
    highest average SCP. Ties go to the lowest feature index.

    Every step is recorded, so ``result.prefix(b)`` is the greedy result for any budget ``b``
    up to ``problem.budget``.
    """
    start = time.perf_counter()
    alloc = RedundancyAllocation.zeros(problem.n)
    initial = evaluate_allocation(problem, alloc, num_workers)
    evaluations = 1
    best_scp = initial
    trajectory = []
    steps = tqdm(range(problem.budget), desc="Greedy allocation", disable=not progress)
    for _ in steps:
        candidates = [alloc.incremented(i) for i in range(problem.n)]
        scores = evaluate_many(problem, candidates, num_workers)
        evaluations += len(candidates)
        best = 0
        for i in range(1, problem.n):
            if scores[i] > scores[best]:
                best = i
        alloc, best_scp = candidates[best], scores[best]
        trajectory.append(GreedyStep(best, best_scp, alloc))
        steps.set_postfix({"avg_scp": f"{best_scp:.6f}"})
    logger.info(f"Greedy allocation of {problem.budget} pairs over n={problem.n}: "
                f"{evaluations} evaluations in {time.perf_counter() - start:.3f}s")
    return AllocationResult(alloc, best_scp, "greedy", tuple(trajectory), initial, evaluations)


def count_compositions(n: int, budget: int) -> int:
    """Number of ways to split ``budget`` pairs over ``n`` features: ``C(n + budget - 1, budget)``."""
    return int(comb(n + budget - 1, budget, exact=True))


def compositions(n: int, budget: int) -> Iterator[Tuple[int, ...]]:
    """All ``n``-part compositions of ``budget`` in lexicographically ascending order."""
    if n == 1:
        yield (budget,)
        return
    for first in range(budget + 1):
        for rest in compositions(n - 1, budget - first):
            yield (first,) + rest


def exhaustive_allocate(problem: AllocationProblem,
                        max_candidates: Optional[int] = None,
                        progress: bool = False,
                        num_workers: Optional[int] = None) -> AllocationResult:
    """Best allocation over every composition of the budget.

    Among equally good allocations the lexicographically smallest wins.

    Raises
    ------
    CapExceededError
        If there are more than ``max_candidates`` compositions.
    """
    cap = env.EXHAUSTIVE_MAX_CANDIDATES if max_candidates is None else max_candidates
    total = count_compositions(problem.n, problem.budget)
    if total > cap:
        raise CapExceededError("candidate allocations", total, cap,
                               "use greedy allocation or a smaller budget")
    start = time.perf_counter()
    best_alloc, best_scp = None, -1.0
    bar = tqdm(total=total, desc="Exhaustive allocation", disable=not progress)
    chunk = []

    def flush():
        nonlocal best_alloc, best_scp
        scores = evaluate_many(problem, chunk, num_workers)
        for alloc, score in zip(chunk, scores):
            if score > best_scp:
                best_alloc, best_scp = alloc, score
        bar.update(len(chunk))
        chunk.clear()

    for r in compositions(problem.n, problem.budget):
        chunk.append(RedundancyAllocation(r))
        if len(chunk) == _EXHAUSTIVE_CHUNK:
            flush()
    if chunk:
        flush()
    bar.close()
    logger.info(f"Exhaustive allocation of {problem.budget} pairs over n={problem.n}: "
                f"{total} evaluations in {time.perf_counter() - start:.3f}s")
    return AllocationResult(best_alloc, best_scp, "exhaustive", evaluations=total)
