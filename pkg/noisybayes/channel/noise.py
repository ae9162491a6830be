# Licensed under the MIT License.
"""Per-feature binary symmetric channels and repetition coding.

A feature protected by ``r`` repetition pairs is stored as ``2r + 1`` copies and decoded by
majority vote, so it is read incorrectly with probability

    eps^(r) = sum_{i=r+1}^{2r+1} C(2r+1, i) eps^i (1 - eps)^(2r+1-i).
"""

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.special import comb

from noisybayes.common.errors import ValidationError


def _check_eps(value: float, name: str = "eps") -> float:
    value = float(value)
    if not np.isfinite(value) or not 0.0 <= value < 0.5:
        raise ValidationError(f"{name} must lie in [0, 1/2), got {value!r}")
    return value


@dataclass(frozen=True)
class NoiseSpec:
    """Flip probabilities ``eps[i]`` for each feature, each in ``[0, 1/2)``."""
    eps: Tuple[float, ...]

    def __post_init__(self):
        eps = tuple(_check_eps(v, f"eps[{i}]") for i, v in enumerate(self.eps))
        if not eps:
            raise ValidationError("A noise spec needs at least one feature")
        object.__setattr__(self, "eps", eps)

    @classmethod
    def uniform(cls, eps: float, n: int) -> "NoiseSpec":
        if n < 1:
            raise ValidationError(f"n must be positive, got {n}")
        return cls(tuple([float(eps)] * n))

    @property
    def n(self) -> int:
        return len(self.eps)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.eps, dtype=np.float64)


@dataclass(frozen=True)
class ErrorPattern:
    """``e[i] = 1`` means feature ``i`` was flipped."""
    e: Tuple[int, ...]

    def __post_init__(self):
        e = tuple(int(v) for v in self.e)
        for i, v in enumerate(e):
            if v not in (0, 1):
                raise ValidationError(f"error pattern entry {i} must be 0 or 1, got {v}")
        object.__setattr__(self, "e", e)

    @property
    def n(self) -> int:
        return len(self.e)

    @property
    def weight(self) -> int:
        return sum(self.e)


@dataclass(frozen=True)
class RedundancyAllocation:
    """``r[i]`` repetition pairs for feature ``i``; the feature is stored as ``1 + 2 r[i]`` copies."""
    r: Tuple[int, ...]

    def __post_init__(self):
        r = []
        for i, v in enumerate(self.r):
            if isinstance(v, bool) or int(v) != v or v < 0:
                raise ValidationError(f"r[{i}] must be a non-negative integer, got {v!r}")
            r.append(int(v))
        object.__setattr__(self, "r", tuple(r))

    @classmethod
    def zeros(cls, n: int) -> "RedundancyAllocation":
        return cls(tuple([0] * n))

    @property
    def n(self) -> int:
        return len(self.r)

    @property
    def total_pairs(self) -> int:
        return sum(self.r)

    @property
    def total_bits(self) -> int:
        return 2 * sum(self.r)

    def copies(self) -> Tuple[int, ...]:
        return tuple(1 + 2 * v for v in self.r)

    def incremented(self, i: int) -> "RedundancyAllocation":
        r = list(self.r)
        r[i] += 1
        return RedundancyAllocation(tuple(r))


def repetition_error_prob(eps: float, r: int) -> float:
    """Probability that a majority vote over ``2r + 1`` copies decodes the wrong bit."""
    eps = _check_eps(eps)
    if isinstance(r, bool) or int(r) != r or r < 0:
        raise ValidationError(f"r must be a non-negative integer, got {r!r}")
    r = int(r)
    if r == 0:
        return eps
    copies = 2 * r + 1
    return math.fsum(
        comb(copies, i, exact=True) * eps**i * (1.0 - eps)**(copies - i)
        for i in range(r + 1, copies + 1))


def _check_lengths(what: str, got: int, expected: int) -> None:
    if got != expected:
        raise ValidationError(f"{what} has length {got}, expected {expected}")


def apply_allocation(base: NoiseSpec, alloc: RedundancyAllocation) -> NoiseSpec:
    """Effective per-feature flip probabilities after repetition coding."""
    _check_lengths("allocation", alloc.n, base.n)
    return NoiseSpec(tuple(repetition_error_prob(e, r) for e, r in zip(base.eps, alloc.r)))


def error_pattern_prob(noise: NoiseSpec, e: ErrorPattern) -> float:
    _check_lengths("error pattern", e.n, noise.n)
    return math.prod(eps if flip else 1.0 - eps for eps, flip in zip(noise.eps, e.e))


def sample_errors(noise: NoiseSpec, seed: Optional[int], count: int) -> np.ndarray:
    """Draw ``count`` independent error patterns.

    Returns
    -------
    np.ndarray
        ``(count, n)`` uint8 array; row ``t`` is one error pattern.
    """
    if count < 1:
        raise ValidationError(f"count must be at least 1, got {count}")
    rng = np.random.default_rng(seed)
    return (rng.random((count, noise.n)) < noise.as_array()).astype(np.uint8)


def encode_repetition(bits: Sequence[int], alloc: RedundancyAllocation) -> np.ndarray:
    """Write-time encoding: feature ``i`` repeated ``1 + 2 r[i]`` times, features concatenated."""
    _check_lengths("bits", len(bits), alloc.n)
    return np.repeat(np.asarray(bits, dtype=np.uint8), alloc.copies())


def decode_majority(stored: np.ndarray, alloc: RedundancyAllocation) -> np.ndarray:
    """Read-time decoding by majority vote over each feature's copies.

    ``stored`` may be a single encoded word or a 2-D batch with one word per row.
    """
    stored = np.asarray(stored, dtype=np.int64)
    copies = np.asarray(alloc.copies())
    _check_lengths("stored word", stored.shape[-1], int(copies.sum()))
    starts = np.concatenate([[0], np.cumsum(copies)[:-1]])
    votes = np.add.reduceat(stored, starts, axis=-1)
    return (2 * votes > copies).astype(np.uint8)


def simulate_repetition_channel(eps: float, r: int, trials: int,
                                seed: Optional[int] = None) -> float:
    """Empirical decoded flip rate of one feature sent through BSC(eps) with ``r`` pairs."""
    eps = _check_eps(eps)
    alloc = RedundancyAllocation((r,))
    words = np.tile(encode_repetition([0], alloc), (trials, 1))
    flips = sample_errors(NoiseSpec(tuple([eps] * words.shape[1])), seed, trials)
    decoded = decode_majority(words ^ flips, alloc)
    return float(decoded.mean())
