# Licensed under the MIT License.
import sys
import inspect
from typing import Optional, Tuple

import pytest
import numpy as np

from noisybayes.channel import NoiseSpec
from noisybayes.model import LogTerms, NaiveBayesModel, TestPoint, log_terms


# pytest.main() wrapper to allow running single test file
def main():
    test_file = inspect.getsourcefile(sys._getframe(1))
    sys.exit(pytest.main([test_file] + sys.argv[1:]))


def assert_allclose_ratio(actual,
                          desired,
                          rtol=1e-7,
                          atol=1e-12,
                          max_mismatched_ratio=0.0,
                          verbose=False):
    """
    Assert that two arrays are "close enough," allowing a specified ratio of mismatched elements.

    Parameters:
    ----------
    actual, desired : array_like
        Arrays of equal shape.
    rtol : float, optional
        Relative tolerance. Default is 1e-7.
    atol : float, optional
        Absolute tolerance. Default is 1e-12.
    max_mismatched_ratio : float, optional
        Maximum ratio of mismatched elements allowed. Default is 0 (every element must match).

    Raises:
    -------
    AssertionError:
        If the ratio of mismatched elements exceeds `max_mismatched_ratio`.
    """
    actual = np.asarray(actual, dtype=np.float64)
    desired = np.asarray(desired, dtype=np.float64)
    assert actual.shape == desired.shape, f"shape mismatch: {actual.shape} vs {desired.shape}"

    diff = np.abs(actual - desired)
    mismatched = diff > atol + rtol * np.abs(desired)
    num_mismatched = int(mismatched.sum())
    total_elements = max(actual.size, 1)
    max_allowed_mismatched = int(total_elements * max_mismatched_ratio)

    if verbose:
        print(f"Number of mismatched elements: {num_mismatched} / {total_elements} "
              f"(allowed: {max_allowed_mismatched})")

    if num_mismatched > max_allowed_mismatched:
        raise AssertionError(
            f"Too many mismatched elements: {num_mismatched} > {max_allowed_mismatched}. "
            f"Greatest absolute difference: {diff.max()}, "
            f"Greatest relative difference: {(diff / (np.abs(desired) + 1e-300)).max()}.")
    return True


def random_model(n: int, rng: np.random.Generator, low: float = 0.05,
                 high: float = 0.95) -> NaiveBayesModel:
    """Random model with conditionals in ``[low, high]`` and prior in ``[0.2, 0.8]``."""
    return NaiveBayesModel(
        prior0=float(rng.uniform(0.2, 0.8)),
        theta0=tuple(rng.uniform(low, high, size=n)),
        theta1=tuple(rng.uniform(low, high, size=n)))


def random_point(n: int, rng: np.random.Generator) -> TestPoint:
    return TestPoint(tuple(int(b) for b in rng.integers(0, 2, size=n)))


def random_noise(n: int, rng: np.random.Generator, low: float = 0.0,
                 high: float = 0.3) -> NoiseSpec:
    return NoiseSpec(tuple(rng.uniform(low, high, size=n)))


def random_instance(n: int,
                    seed: int,
                    eps: Optional[float] = None) -> Tuple[NaiveBayesModel, TestPoint, LogTerms,
                                                          NoiseSpec]:
    """A model, a point, its log terms and a noise spec; uniform noise when ``eps`` is given."""
    rng = np.random.default_rng(seed)
    model = random_model(n, rng)
    x = random_point(n, rng)
    noise = NoiseSpec.uniform(eps, n) if eps is not None else random_noise(n, rng)
    return model, x, log_terms(model, x), noise


def two_feature_models() -> Tuple[NaiveBayesModel, NaiveBayesModel]:
    """The two-feature models with equal priors used throughout the allocation tests."""
    row1 = NaiveBayesModel(0.5, (0.1, 0.11), (0.9, 0.89))
    row2 = NaiveBayesModel(0.5, (0.2, 0.19), (0.7, 0.7))
    return row1, row2
