# Licensed under the MIT License.
"""Expansion of the bivariate generating function

    G(y, z) = prod_i prod_{j in bucket i} ((1 - eps_j) + eps_j y z^i)

into a dense coefficient grid whose entry ``(l, m)`` is the coefficient of ``y^l z^m``: the
probability that exactly ``l`` features flip and the flipped features' bucket indices sum to
``m``.
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

import numpy as np
from scipy import signal
from scipy.stats import binom

from noisybayes import env
from noisybayes.common import MultStrategy, ordered_map
from noisybayes.common.errors import CapExceededError
from .quantize import QuantizationScheme, grid_entries, grid_shape

logger = logging.getLogger(__name__)

# Transform round-off below this magnitude is clamped to zero when negative.
ROUNDOFF_CLAMP = 1e-12


@dataclass(frozen=True, eq=False)
class BivariatePolynomial:
    coeffs: np.ndarray

    @property
    def max_y_degree(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def max_z_degree(self) -> int:
        return self.coeffs.shape[1] - 1

    def coefficient(self, y_degree: int, z_degree: int) -> float:
        if not (0 <= y_degree <= self.max_y_degree and 0 <= z_degree <= self.max_z_degree):
            return 0.0
        return float(self.coeffs[y_degree, z_degree])

    def total(self) -> float:
        return float(np.sum(self.coeffs))

    def row_sums(self) -> np.ndarray:
        """Probability of exactly ``l`` flips, for ``l = 0..max_y_degree``."""
        return self.coeffs.sum(axis=1)


def _next_power_of_2(n: int) -> int:
    """Return the smallest power of 2 >= n."""
    if n <= 0:
        return 1
    return 1 << (n - 1).bit_length()


def multiply_direct(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Product of two coefficient arrays by direct (schoolbook) convolution."""
    return signal.convolve(p, q, mode="full", method="direct")


def multiply_transform(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Product of two coefficient arrays by FFT convolution.

    Each axis is zero-padded to the next power of two at least as long as the product.
    """
    out_shape = tuple(a + b - 1 for a, b in zip(p.shape, q.shape))
    fft_shape = tuple(_next_power_of_2(s) for s in out_shape)
    axes = tuple(range(p.ndim))
    spectrum = np.fft.rfftn(p, fft_shape, axes=axes) * np.fft.rfftn(q, fft_shape, axes=axes)
    product = np.fft.irfftn(spectrum, fft_shape, axes=axes)
    product = product[tuple(slice(0, s) for s in out_shape)]
    product[(product < 0.0) & (product > -ROUNDOFF_CLAMP)] = 0.0
    return np.ascontiguousarray(product)


def get_multiplier(strategy: MultStrategy) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    strategy = MultStrategy(strategy)
    if strategy.is_direct():
        return multiply_direct
    elif strategy.is_transform():
        return multiply_transform
    else:
        raise NotImplementedError(strategy)


def pairwise_product(factors: List[np.ndarray],
                     multiply: Callable[[np.ndarray, np.ndarray], np.ndarray]) -> np.ndarray:
    """Multiply factors as a balanced tree: neighbours first, then neighbouring products.

    The pairing depends only on the number of factors, so the result is reproducible.
    """
    assert factors, "nothing to multiply"
    while len(factors) > 1:
        paired = [multiply(factors[i], factors[i + 1]) for i in range(0, len(factors) - 1, 2)]
        if len(factors) % 2 == 1:
            paired.append(factors[-1])
        factors = paired
    return factors[0]


def bucket_polynomial(eps: Sequence[float], strategy: MultStrategy) -> np.ndarray:
    """Coefficients of ``prod_j ((1 - eps_j) + eps_j v)`` in ``v``."""
    eps = np.asarray(eps, dtype=np.float64)
    if eps.size == 0:
        return np.ones(1)
    if eps.size > 1 and np.all(eps == eps[0]):
        # ((1 - eps) + eps v)^S by the binomial theorem
        return binom.pmf(np.arange(eps.size + 1), eps.size, eps[0])
    factors = [np.array([1.0 - e, e]) for e in eps]
    return pairwise_product(factors, get_multiplier(strategy))


def embed_bucket(poly: np.ndarray, bucket: int) -> np.ndarray:
    """Place the coefficient of ``v^s`` at ``y^s z^(bucket * s)``."""
    size = poly.size - 1
    grid = np.zeros((size + 1, bucket * size + 1))
    grid[np.arange(size + 1), bucket * np.arange(size + 1)] = poly
    return grid


def poisson_binomial_pmf(eps: Sequence[float]) -> np.ndarray:
    """Probability of exactly ``m`` flips, ``m = 0..n``, for independent flip probabilities."""
    pmf = np.ones(1)
    for p in eps:
        next_pmf = np.zeros(pmf.size + 1)
        next_pmf[:-1] = pmf * (1.0 - p)
        next_pmf[1:] += pmf * p
        pmf = next_pmf
    return pmf


def expand_generating_function(scheme: QuantizationScheme,
                               mult: MultStrategy = MultStrategy.Transform,
                               num_workers: Optional[int] = None,
                               max_grid_entries: Optional[int] = None) -> BivariatePolynomial:
    """Expand ``G(y, z)`` for ``scheme`` into a grid of shape ``(n + 1, k_eff n + 1)``.

    Each bucket's factor is expanded on its own (in parallel when workers are configured) and
    the per-bucket grids are then multiplied in a fixed pairwise order.

    Raises
    ------
    CapExceededError
        If the grid would hold more than ``max_grid_entries`` coefficients.
    """
    cap = env.MAX_GRID_ENTRIES if max_grid_entries is None else max_grid_entries
    entries = grid_entries(scheme)
    if entries > cap:
        raise CapExceededError("generating-function grid entries", entries, cap,
                               "reduce k or the number of features")
    multiply = get_multiplier(mult)
    occupied = [i for i in range(1, scheme.k_eff + 1) if scheme.counts[i - 1] > 0]

    def expand_bucket(i: int) -> np.ndarray:
        return embed_bucket(bucket_polynomial(scheme.grouped_eps[i - 1], mult), i)

    factors = ordered_map(expand_bucket, occupied, num_workers)
    product = pairwise_product(factors, multiply)

    coeffs = np.zeros(grid_shape(scheme))
    coeffs[:product.shape[0], :product.shape[1]] = product
    coeffs.setflags(write=False)
    return BivariatePolynomial(coeffs)
