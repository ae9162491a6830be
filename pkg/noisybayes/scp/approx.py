# Licensed under the MIT License.
"""Approximate SCP from the quantized generating function.

For a size-``l`` subset the quantized sum reaches the target iff the subset's z-degree ``m``
satisfies ``m >= T'(l) = (T - l (base - w)) / w``. A base class 0 point keeps its class on the
coefficients at or above that threshold in row ``l``; a base class 1 point on the coefficients
strictly below it.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import comb

from noisybayes import env
from noisybayes.channel import NoiseSpec
from noisybayes.common import MultStrategy, ScpMethod
from noisybayes.common.errors import CapExceededError, ValidationError
from noisybayes.model import LogTerms
from .exact import same_classification, scp_exact
from .polynomial import BivariatePolynomial, expand_generating_function, poisson_binomial_pmf
from .quantize import QuantizationScheme, build_quantization, is_degenerate
from .result import DEFAULT_HYBRID_ORDER, DEFAULT_K, ScpResult

logger = logging.getLogger(__name__)

# Relative tolerance on T'(l) so float noise cannot move a quantized tie across the threshold.
THRESHOLD_RTOL = 1e-9


def degree_threshold(t_prime: float) -> int:
    """Smallest integer z-degree counted as reaching ``t_prime``."""
    return math.ceil(t_prime - THRESHOLD_RTOL * max(1.0, abs(t_prime)))


@dataclass(frozen=True, eq=False)
class GeneratingFunction:
    """A quantization scheme together with its expanded ``G(y, z)``.

    Both approximations read their tails from the same expansion, so an experiment comparing
    them expands once per point.
    """
    scheme: QuantizationScheme
    poly: BivariatePolynomial

    def tail(self, base_class: int, first_row: int = 0) -> float:
        """Mass of the same-classification coefficients in rows ``first_row..n``."""
        coeffs = self.poly.coeffs
        parts = []
        for ell in range(first_row, coeffs.shape[0]):
            cut = min(max(degree_threshold(self.scheme.threshold(ell)), 0), coeffs.shape[1])
            row = coeffs[ell]
            parts.append(float(np.sum(row[cut:] if base_class == 0 else row[:cut])))
        return math.fsum(parts)


def _check_lengths(terms: LogTerms, noise: NoiseSpec) -> None:
    if terms.n != noise.n:
        raise ValidationError(f"Noise spec has {noise.n} entries but the point has {terms.n}")


def approx_components(terms: LogTerms,
                      noise: NoiseSpec,
                      k: int = DEFAULT_K,
                      shift: bool = True,
                      mult: MultStrategy = MultStrategy.Transform,
                      num_workers: Optional[int] = None) -> Optional[GeneratingFunction]:
    """Quantize and expand; ``None`` when every difference term is equal."""
    _check_lengths(terms, noise)
    if is_degenerate(terms.d):
        return None
    scheme = build_quantization(terms.d, noise, k, terms.target, shift)
    poly = expand_generating_function(scheme, mult, num_workers=num_workers)
    return GeneratingFunction(scheme, poly)


def uniform_difference_scp(terms: LogTerms, noise: NoiseSpec, first_row: int = 0) -> float:
    """SCP when all difference terms share one value ``D``: ``m`` flips move the sum by ``m D``."""
    pmf = poisson_binomial_pmf(noise.eps)
    flips = np.arange(pmf.size)
    sums = flips * float(terms.d[0])
    mask = same_classification(sums, terms.target, terms.base_class) & (flips >= first_row)
    return math.fsum(pmf[mask])


def check_subset_count(n: int, order: int) -> None:
    """Enumerating all subsets of size ``<= order`` is held to the exact-enumeration budget of
    ``2 ** EXACT_MAX_FEATURES`` patterns."""
    count = sum(int(comb(n, ell, exact=True)) for ell in range(order + 1))
    cap = 2**env.EXACT_MAX_FEATURES
    if count > cap:
        raise CapExceededError("hybrid subsets", count, cap, "lower the hybrid order")


def _small_subset_mass(terms: LogTerms, noise: NoiseSpec, order: int) -> float:
    """Exact same-classification mass of all subsets with at most ``order`` members."""
    eps = noise.as_array()
    none_flipped = math.prod(1.0 - e for e in eps)
    odds = eps / (1.0 - eps)
    parts = [none_flipped if same_classification(np.zeros(1), terms.target,
                                                 terms.base_class)[0] else 0.0]
    for ell in range(1, order + 1):
        members = np.array(list(itertools.combinations(range(terms.n), ell)), dtype=np.int64)
        sums = terms.d[members].sum(axis=1)
        probs = none_flipped * odds[members].prod(axis=1)
        mask = same_classification(sums, terms.target, terms.base_class)
        parts.append(float(np.sum(probs[mask])))
    return math.fsum(parts)


def approx_from_components(components: Optional[GeneratingFunction], terms: LogTerms,
                           noise: NoiseSpec) -> float:
    if components is None:
        return uniform_difference_scp(terms, noise)
    return components.tail(terms.base_class)


def hybrid_from_components(components: Optional[GeneratingFunction], terms: LogTerms,
                           noise: NoiseSpec, order: int) -> float:
    if order > terms.n:
        raise ValidationError(f"hybrid order {order} exceeds n = {terms.n}")
    if order < 0:
        raise ValidationError(f"hybrid order must be non-negative, got {order}")
    if order == terms.n:
        return scp_exact(terms, noise).value
    if components is None:
        return uniform_difference_scp(terms, noise)
    check_subset_count(terms.n, order)
    exact_part = _small_subset_mass(terms, noise, order)
    return math.fsum((exact_part, components.tail(terms.base_class, first_row=order + 1)))


def _meta(components: Optional[GeneratingFunction], k: int, shift: bool,
          mult: MultStrategy) -> dict:
    meta = {"k": k, "shift": shift, "mult": MultStrategy(mult).tag}
    if components is None:
        meta["degenerate"] = True
    else:
        meta["k_eff"] = components.scheme.k_eff
        meta["shift_value"] = components.scheme.shift
    return meta


def scp_approx(terms: LogTerms,
               noise: NoiseSpec,
               k: int = DEFAULT_K,
               shift: bool = True,
               mult: MultStrategy = MultStrategy.Transform,
               num_workers: Optional[int] = None) -> ScpResult:
    """SCP of the quantized instance, read from the generating function's tail."""
    components = approx_components(terms, noise, k, shift, mult, num_workers)
    value = approx_from_components(components, terms, noise)
    return ScpResult(value, ScpMethod.Approx, _meta(components, k, shift, mult))


def scp_hybrid(terms: LogTerms,
               noise: NoiseSpec,
               k: int = DEFAULT_K,
               shift: bool = True,
               order: Optional[int] = None,
               mult: MultStrategy = MultStrategy.Transform,
               num_workers: Optional[int] = None) -> ScpResult:
    """Exact mass for subsets of size ``<= order`` plus the generating-function tail beyond.

    ``order = n`` is the exact SCP and is subject to its feature cap. Without an order the
    default is capped at ``n``.
    """
    _check_lengths(terms, noise)
    if order is None:
        order = min(DEFAULT_HYBRID_ORDER, terms.n)
    if isinstance(order, bool) or int(order) != order or not 0 <= order <= terms.n:
        raise ValidationError(f"hybrid order must be an integer in [0, {terms.n}], got {order!r}")
    components = None
    if order < terms.n:
        check_subset_count(terms.n, int(order))
        components = approx_components(terms, noise, k, shift, mult, num_workers)
    value = hybrid_from_components(components, terms, noise, int(order))
    meta = _meta(components, k, shift, mult)
    if order == terms.n:
        meta.pop("degenerate", None)
    meta["order"] = int(order)
    return ScpResult(value, ScpMethod.Hybrid, meta)
