# Licensed under the MIT License.
"""Ground-truth SCP by enumerating error patterns.

For a base class 0 point an error pattern keeps the classification iff the sum of ``D_j`` over
the flipped features is at least ``T``; for base class 1 iff it is strictly below ``T``.
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np

from noisybayes import env
from noisybayes.channel import NoiseSpec
from noisybayes.common import ScpMethod, Weighting, ordered_map
from noisybayes.common.errors import CapExceededError, ValidationError
from noisybayes.model import (
    Dataset,
    LogTerms,
    NaiveBayesModel,
    TestPoint,
    all_points,
    log_terms,
    point_probability,
)
from .result import DEFAULT_TRIALS, ScpResult

logger = logging.getLogger(__name__)

# Patterns over the lowest LOW_BITS features form one vectorized block; the remaining features
# index the blocks.
LOW_BITS = 16
_MC_CHUNK_ROWS = 1 << 16


def same_classification(sums: np.ndarray, target: float, base_class: int) -> np.ndarray:
    """Mask of subset sums that leave the classification unchanged."""
    if base_class == 0:
        return sums >= target
    return sums < target


def subset_tables(d: np.ndarray, eps: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Sums and probabilities of all ``2^len(d)`` subsets.

    Entry ``idx`` describes the subset whose members are the set bits of ``idx``; its
    probability includes ``1 - eps`` for every feature left out.
    """
    sums = np.zeros(1, dtype=np.float64)
    probs = np.ones(1, dtype=np.float64)
    for dj, ej in zip(d, eps):
        sums = np.concatenate((sums, sums + dj))
        probs = np.concatenate((probs * (1.0 - ej), probs * ej))
    return sums, probs


def _check_lengths(terms: LogTerms, noise: NoiseSpec) -> None:
    if terms.n != noise.n:
        raise ValidationError(f"Noise spec has {noise.n} entries but the point has {terms.n}")


def same_class_mass(d: np.ndarray,
                    eps: np.ndarray,
                    target: float,
                    base_class: int,
                    num_workers: Optional[int] = None) -> float:
    """Total probability of the error patterns that keep the classification."""
    d = np.asarray(d, dtype=np.float64)
    eps = np.asarray(eps, dtype=np.float64)
    # features that never flip only scale every pattern by 1
    active = eps > 0.0
    d, eps = d[active], eps[active]

    low = min(d.size, LOW_BITS)
    low_sums, low_probs = subset_tables(d[:low], eps[:low])
    high_sums, high_probs = subset_tables(d[low:], eps[low:])

    def block_mass(h: int) -> float:
        if high_probs[h] == 0.0:
            return 0.0
        mask = same_classification(low_sums + high_sums[h], target, base_class)
        return float(high_probs[h] * np.sum(low_probs[mask]))

    return math.fsum(ordered_map(block_mass, range(high_sums.size), num_workers))


def scp_exact(terms: LogTerms,
              noise: NoiseSpec,
              max_features: Optional[int] = None,
              num_workers: Optional[int] = None) -> ScpResult:
    _check_lengths(terms, noise)
    cap = env.EXACT_MAX_FEATURES if max_features is None else max_features
    if terms.n > cap:
        raise CapExceededError("n", terms.n, cap, "use the approximate or hybrid SCP")
    value = same_class_mass(terms.d, noise.as_array(), terms.target, terms.base_class,
                            num_workers)
    return ScpResult(value, ScpMethod.Exact, {"n": terms.n})


def scp_averaged(model: NaiveBayesModel,
                 noise: NoiseSpec,
                 weighting: Weighting = Weighting.UniformOverPoints,
                 dataset: Optional[Dataset] = None,
                 max_features: Optional[int] = None,
                 num_workers: Optional[int] = None) -> ScpResult:
    """Average of the exact SCP over points.

    ``UniformOverPoints`` weights all ``2^n`` points equally, ``ModelMarginal`` weights point
    ``x`` by ``p(x) = sum_c p(c) p(x | c)`` and ``Dataset`` averages over the dataset's points.
    """
    weighting = Weighting(weighting)
    if noise.n != model.n:
        raise ValidationError(f"Noise spec has {noise.n} entries but the model has {model.n}")

    if weighting == Weighting.Dataset:
        if dataset is None or len(dataset) == 0:
            raise ValidationError("Dataset weighting requires a non-empty dataset")
        if dataset.n != model.n:
            raise ValidationError(f"Dataset has {dataset.n} features, the model {model.n}")
        points = list(dataset.points)
        weights = [1.0 / len(points)] * len(points)
    else:
        cap = env.AVERAGE_MAX_FEATURES if max_features is None else max_features
        if model.n > cap:
            raise CapExceededError("n", model.n, cap, "averaging enumerates all 2^n points")
        points = [TestPoint(tuple(row)) for row in all_points(model.n)]
        if weighting == Weighting.UniformOverPoints:
            weights = [1.0 / len(points)] * len(points)
        else:
            weights = [point_probability(model, x) for x in points]

    def point_scp(x: TestPoint) -> float:
        return scp_exact(log_terms(model, x), noise, num_workers=1).value

    values = ordered_map(point_scp, points, num_workers)
    value = math.fsum(w * v for w, v in zip(weights, values))
    return ScpResult(value, ScpMethod.Exact, {"weighting": weighting.tag, "points": len(points)})


def monte_carlo_mass(terms: LogTerms, noise: NoiseSpec, trials: int,
                     seed: Optional[int]) -> int:
    """Number of sampled patterns (out of ``trials``) that keep the classification.

    Rows are drawn from ``numpy.random.default_rng(seed)`` in the same order as
    ``sample_errors(noise, seed, trials)``.
    """
    rng = np.random.default_rng(seed)
    eps = noise.as_array()
    kept = 0
    remaining = trials
    while remaining > 0:
        rows = min(remaining, _MC_CHUNK_ROWS)
        flips = rng.random((rows, noise.n)) < eps
        sums = flips.astype(np.float64) @ terms.d
        kept += int(np.count_nonzero(same_classification(sums, terms.target, terms.base_class)))
        remaining -= rows
    return kept


def scp_monte_carlo(model: NaiveBayesModel,
                    x: TestPoint,
                    noise: NoiseSpec,
                    trials: int = DEFAULT_TRIALS,
                    seed: Optional[int] = 0) -> ScpResult:
    if trials < 1:
        raise ValidationError(f"trials must be at least 1, got {trials}")
    terms = log_terms(model, x)
    _check_lengths(terms, noise)
    return scp_monte_carlo_terms(terms, noise, trials, seed)


def scp_monte_carlo_terms(terms: LogTerms,
                          noise: NoiseSpec,
                          trials: int = DEFAULT_TRIALS,
                          seed: Optional[int] = 0) -> ScpResult:
    _check_lengths(terms, noise)
    if trials < 1:
        raise ValidationError(f"trials must be at least 1, got {trials}")
    value = monte_carlo_mass(terms, noise, trials, seed) / trials
    stderr = math.sqrt(value * (1.0 - value) / trials)
    return ScpResult(value, ScpMethod.MonteCarlo, {"trials": trials, "seed": seed,
                                                   "stderr": stderr})
