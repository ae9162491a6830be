# Licensed under the MIT License.
"""Bucket quantization of the difference terms.

With ``w = (D_max - D_min) / (k - 1)`` and ``base = D_min + shift``, bucket ``i`` (1-based)
covers ``[base + (i - 3/2) w, base + (i - 1/2) w)`` and every member is replaced by the bucket
midpoint ``base + (i - 1) w``. A subset of size ``l`` drawing ``a_i`` members from bucket ``i``
then has quantized sum ``l (base - w) + w * sum_i i a_i``, which is what lets the generating
function index subsets by the integer ``sum_i i a_i``.
"""

import logging
import math
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np

from noisybayes.channel import NoiseSpec
from noisybayes.common.errors import ValidationError

logger = logging.getLogger(__name__)


class DegenerateSpanError(ValidationError):
    """All difference terms are equal, so there is no bucket width."""


def is_degenerate(d: Sequence[float]) -> bool:
    d = np.asarray(d, dtype=np.float64)
    return bool(d.max() - d.min() <= 0.0)


@dataclass(frozen=True, eq=False)
class QuantizationScheme:
    k: int
    d_min: float
    d_max: float
    shift: float
    target: float
    bucket_of: np.ndarray
    counts: Tuple[int, ...]
    grouped_eps: Tuple[Tuple[float, ...], ...]

    @property
    def n(self) -> int:
        return int(self.bucket_of.size)

    @property
    def k_eff(self) -> int:
        return len(self.counts)

    @property
    def d_span(self) -> float:
        return self.d_max - self.d_min

    @property
    def width(self) -> float:
        return self.d_span / (self.k - 1)

    @property
    def base(self) -> float:
        return self.d_min + self.shift

    def midpoint(self, i: int) -> float:
        return self.base + (i - 1) * self.width

    def midpoints(self) -> np.ndarray:
        return self.base + np.arange(self.k_eff, dtype=np.float64) * self.width

    def interval(self, i: int) -> Tuple[float, float]:
        return (self.base + (i - 1.5) * self.width, self.base + (i - 0.5) * self.width)

    def quantized_values(self) -> np.ndarray:
        """Each feature's difference term replaced by its bucket midpoint."""
        return self.midpoints()[self.bucket_of - 1]

    def threshold(self, ell: int) -> float:
        """``T'(l)``: a size-``l`` subset reaches the target iff its z-degree is >= this value."""
        return (self.target - ell * (self.base - self.width)) / self.width


def _boundary_shift(d_min: float, width: float, target: float) -> float:
    """Smallest translation that puts ``target`` exactly on a bucket boundary."""
    offset = (target - d_min) / width - 0.5
    shift = (offset - round(offset)) * width
    half = width / 2
    return min(max(shift, -half), half)


def build_quantization(d: Sequence[float],
                       eps: Union[NoiseSpec, Sequence[float]],
                       k: int,
                       target: float,
                       shift_enabled: bool = True) -> QuantizationScheme:
    """Assign every difference term to one of ``k`` (or ``k + 1``) equal-width buckets.

    With ``shift_enabled`` and ``target`` inside ``[D_min - w/2, D_max + w/2]``, all buckets are
    translated so ``target`` sits on a boundary; if that pushes ``D_max`` past the last bucket an
    extra edge bucket is appended.

    Raises
    ------
    ValidationError
        If ``k < 2`` or the lengths disagree.
    DegenerateSpanError
        If every difference term is equal.
    """
    if isinstance(k, bool) or int(k) != k or k < 2:
        raise ValidationError(f"k must be an integer >= 2, got {k!r}")
    k = int(k)
    d = np.asarray(d, dtype=np.float64)
    eps = eps.as_array() if isinstance(eps, NoiseSpec) else np.asarray(eps, dtype=np.float64)
    if d.ndim != 1 or d.size == 0:
        raise ValidationError("At least one difference term is required")
    if eps.shape != d.shape:
        raise ValidationError(f"{eps.size} noise parameters given for {d.size} features")

    d_min, d_max = float(d.min()), float(d.max())
    if d_max - d_min <= 0.0:
        raise DegenerateSpanError("All difference terms are equal; quantization is undefined")
    width = (d_max - d_min) / (k - 1)

    shift = 0.0
    if shift_enabled and d_min - width / 2 <= target <= d_max + width / 2:
        shift = _boundary_shift(d_min, width, target)

    base = d_min + shift
    bucket_of = np.floor((d - base) / width + 1.5).astype(np.int64)
    bucket_of = np.maximum(bucket_of, 1)
    assert bucket_of.max() <= k + 1, "shift larger than half a bucket"
    k_eff = max(k, int(bucket_of.max()))
    if k_eff > k:
        logger.debug(f"Shift {shift:.6g} moved D_max past bucket {k}; using {k_eff} buckets")

    counts = np.bincount(bucket_of, minlength=k_eff + 1)[1:]
    grouped = tuple(
        tuple(float(e) for e in eps[bucket_of == i]) for i in range(1, k_eff + 1))
    bucket_of.setflags(write=False)
    return QuantizationScheme(
        k=k,
        d_min=d_min,
        d_max=d_max,
        shift=float(shift),
        target=float(target),
        bucket_of=bucket_of,
        counts=tuple(int(c) for c in counts),
        grouped_eps=grouped,
    )


def grid_shape(scheme: QuantizationScheme) -> Tuple[int, int]:
    """Shape of the full coefficient grid: y-degrees ``0..n``, z-degrees ``0..k_eff n``."""
    return scheme.n + 1, scheme.k_eff * scheme.n + 1


def grid_entries(scheme: QuantizationScheme) -> int:
    rows, cols = grid_shape(scheme)
    return math.prod((rows, cols))
