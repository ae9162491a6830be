# Licensed under the MIT License.
"""Repetition-pair budget allocation."""

from .problem import (
    AllocationProblem,  # noqa: F401
    AllocationResult,  # noqa: F401
    GreedyStep,  # noqa: F401
    evaluate_allocation,  # noqa: F401
    evaluate_many,  # noqa: F401
)
from .strategies import (
    uniform_allocation,  # noqa: F401
    uniform_allocate,  # noqa: F401
    no_protection,  # noqa: F401
    greedy_allocate,  # noqa: F401
    exhaustive_allocate,  # noqa: F401
    count_compositions,  # noqa: F401
    compositions,  # noqa: F401
)
