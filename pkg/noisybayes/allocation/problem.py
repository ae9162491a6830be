# Licensed under the MIT License.

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from noisybayes.channel import NoiseSpec, RedundancyAllocation, apply_allocation
from noisybayes.common import ordered_map
from noisybayes.common.errors import ValidationError
from noisybayes.model import LogTerms, NaiveBayesModel, TestPoint, log_terms
from noisybayes.scp import EvalConfig, check_subset_count, compute_scp

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class AllocationProblem:
    """Spend ``budget`` repetition pairs over the features of ``model``, scored by the average
    SCP over ``test_points`` when every feature starts with flip probability ``base_eps``."""
    model: NaiveBayesModel
    test_points: Tuple[TestPoint, ...]
    base_eps: float
    budget: int
    eval: EvalConfig = field(default_factory=EvalConfig)
    terms: Tuple[LogTerms, ...] = field(init=False, repr=False)

    def __post_init__(self):
        points = tuple(
            p if isinstance(p, TestPoint) else TestPoint(tuple(p)) for p in self.test_points)
        if not points:
            raise ValidationError("An allocation problem needs at least one test point")
        base_eps = float(self.base_eps)
        if not 0.0 < base_eps < 0.5:
            raise ValidationError(f"base_eps must lie in (0, 1/2), got {base_eps!r}")
        if isinstance(self.budget, bool) or int(self.budget) != self.budget or self.budget < 0:
            raise ValidationError(f"budget must be a non-negative integer, got {self.budget!r}")
        if self.eval.method.is_hybrid():
            check_subset_count(self.model.n, self.eval.hybrid_order(self.model.n))
        object.__setattr__(self, "test_points", points)
        object.__setattr__(self, "base_eps", base_eps)
        object.__setattr__(self, "budget", int(self.budget))
        object.__setattr__(self, "terms", tuple(log_terms(self.model, x) for x in points))

    @property
    def n(self) -> int:
        return self.model.n

    @property
    def t(self) -> int:
        return len(self.test_points)

    def base_noise(self) -> NoiseSpec:
        return NoiseSpec.uniform(self.base_eps, self.n)

    def with_budget(self, budget: int) -> "AllocationProblem":
        return AllocationProblem(self.model, self.test_points, self.base_eps, budget, self.eval)


@dataclass(frozen=True)
class GreedyStep:
    feature: int
    avg_scp: float
    alloc: RedundancyAllocation


@dataclass(frozen=True)
class AllocationResult:
    alloc: RedundancyAllocation
    avg_scp: float
    strategy: str
    trajectory: Tuple[GreedyStep, ...] = ()
    initial_scp: Optional[float] = None
    evaluations: int = 0

    def __post_init__(self):
        assert 0.0 <= self.avg_scp <= 1.0, f"average SCP {self.avg_scp} is not a probability"

    @property
    def change_prob(self) -> float:
        return 1.0 - self.avg_scp

    def prefix(self, budget: int) -> "AllocationResult":
        """The greedy result for a smaller budget, read off the trajectory."""
        if not 0 <= budget <= len(self.trajectory):
            raise ValidationError(
                f"budget {budget} is outside the recorded trajectory (0..{len(self.trajectory)})")
        if budget == 0:
            assert self.initial_scp is not None, "trajectory has no starting point"
            return AllocationResult(
                RedundancyAllocation.zeros(self.alloc.n), self.initial_scp, self.strategy, (),
                self.initial_scp)
        step = self.trajectory[budget - 1]
        return AllocationResult(step.alloc, step.avg_scp, self.strategy,
                                self.trajectory[:budget], self.initial_scp)


def _check_alloc(problem: AllocationProblem, alloc: RedundancyAllocation) -> None:
    if alloc.n != problem.n:
        raise ValidationError(f"Allocation has {alloc.n} entries but the model has {problem.n}")


def evaluate_allocation(problem: AllocationProblem,
                        alloc: RedundancyAllocation,
                        num_workers: Optional[int] = None) -> float:
    """Average SCP over the test points after protecting the features with ``alloc``.

    The allocation is not required to spend exactly ``problem.budget``.
    """
    _check_alloc(problem, alloc)
    noise = apply_allocation(problem.base_noise(), alloc)
    values = ordered_map(lambda terms: compute_scp(terms, noise, problem.eval).value,
                         problem.terms, num_workers)
    return min(max(math.fsum(values) / len(values), 0.0), 1.0)


def evaluate_many(problem: AllocationProblem,
                  allocs: Sequence[RedundancyAllocation],
                  num_workers: Optional[int] = None) -> List[float]:
    """Evaluate several allocations, parallel across allocations."""
    return ordered_map(lambda alloc: evaluate_allocation(problem, alloc, num_workers=1), allocs,
                       num_workers)
