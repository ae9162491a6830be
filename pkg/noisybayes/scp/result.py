# Licensed under the MIT License.

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from noisybayes.common import MultStrategy, ScpMethod
from noisybayes.common.errors import ValidationError

DEFAULT_K = 50
DEFAULT_HYBRID_ORDER = 2
DEFAULT_TRIALS = 100_000

# Summation round-off may push a probability a hair outside [0, 1].
_RANGE_SLACK = 1e-9


@dataclass(frozen=True)
class ScpResult:
    value: float
    method: ScpMethod
    meta: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        value = float(self.value)
        assert -_RANGE_SLACK <= value <= 1.0 + _RANGE_SLACK, f"SCP {value} is not a probability"
        object.__setattr__(self, "value", min(max(value, 0.0), 1.0))

    @property
    def change_prob(self) -> float:
        """Classification change probability, ``1 - SCP``."""
        return 1.0 - self.value


@dataclass(frozen=True)
class EvalConfig:
    """How an SCP is evaluated: exact enumeration, the plain approximation, the hybrid
    approximation or Monte-Carlo sampling."""
    method: ScpMethod = ScpMethod.Hybrid
    k: int = DEFAULT_K
    shift: bool = True
    order: Optional[int] = None
    mult: MultStrategy = MultStrategy.Transform
    trials: int = DEFAULT_TRIALS
    seed: Optional[int] = 0

    def __post_init__(self):
        if isinstance(self.k, bool) or int(self.k) != self.k or self.k < 2:
            raise ValidationError(f"k must be an integer >= 2, got {self.k!r}")
        if self.order is not None and (isinstance(self.order, bool) or
                                       int(self.order) != self.order or self.order < 0):
            raise ValidationError(f"hybrid order must be a non-negative integer, got {self.order!r}")
        if self.trials < 1:
            raise ValidationError(f"trials must be at least 1, got {self.trials}")
        object.__setattr__(self, "method", ScpMethod(self.method))
        object.__setattr__(self, "mult", MultStrategy(self.mult))

    def hybrid_order(self, n: int) -> int:
        """Hybrid order for an ``n``-feature point.

        Without an explicit order the default is capped at ``n``; an explicit order above ``n``
        is rejected.
        """
        if self.order is None:
            return min(DEFAULT_HYBRID_ORDER, n)
        if self.order > n:
            raise ValidationError(f"hybrid order {self.order} exceeds n = {n}")
        return int(self.order)

    def describe(self) -> str:
        if self.method.is_exact():
            return "exact"
        if self.method.is_approx():
            return f"approx(k={self.k}, shift={'on' if self.shift else 'off'})"
        if self.method.is_hybrid():
            order = DEFAULT_HYBRID_ORDER if self.order is None else self.order
            return f"hybrid(k={self.k}, shift={'on' if self.shift else 'off'}, order={order})"
        return f"monte_carlo(trials={self.trials}, seed={self.seed})"
