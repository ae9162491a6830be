import numpy as np
import pytest

import noisybayes.testing
from noisybayes.channel import NoiseSpec
from noisybayes.common.errors import ValidationError
from noisybayes.model import TestPoint, log_terms
from noisybayes.scp import DegenerateSpanError, build_quantization


def run_quantization(d, eps, k, target, shift_enabled):
    scheme = build_quantization(d, eps, k, target, shift_enabled)
    d = np.asarray(d)
    w = scheme.width
    assert sum(scheme.counts) == d.size
    assert abs(scheme.shift) <= w / 2 + 1e-15
    assert scheme.k_eff in (k, k + 1)
    for j, dj in enumerate(d):
        low, high = scheme.interval(int(scheme.bucket_of[j]))
        assert low - 1e-12 <= dj < high + 1e-12
    for i in range(1, scheme.k_eff + 1):
        members = np.flatnonzero(scheme.bucket_of == i)
        assert scheme.grouped_eps[i - 1] == tuple(float(eps[j]) for j in members)
    return scheme


def test_two_buckets_two_values():
    terms = log_terms(noisybayes.testing.two_feature_models()[0], TestPoint((0, 0)))
    scheme = run_quantization(terms.d, [0.1, 0.1], 2, terms.target, False)
    assert scheme.counts == (1, 1)
    np.testing.assert_allclose(scheme.quantized_values(), terms.d, rtol=1e-12)
    assert scheme.midpoint(1) == pytest.approx(terms.d.min())
    assert scheme.midpoint(2) == pytest.approx(terms.d.max())


@pytest.mark.parametrize("seed", range(20))
@pytest.mark.parametrize("k", [2, 5, 50])
def test_random_quantizations(seed, k):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 15))
    d = rng.normal(size=n)
    eps = rng.uniform(0, 0.4, size=n)
    target = float(rng.uniform(d.min() - 0.5, d.max() + 0.5))
    run_quantization(d, eps, k, target, shift_enabled=bool(seed % 2))


@pytest.mark.parametrize("seed", range(20))
def test_shift_puts_target_on_boundary(seed):
    rng = np.random.default_rng(seed)
    d = rng.normal(size=8)
    k = 7
    w = (d.max() - d.min()) / (k - 1)
    target = float(rng.uniform(d.min() - w / 2, d.max() + w / 2))
    scheme = run_quantization(d, np.full(8, 0.1), k, target, True)
    offset = (target - scheme.base) / w + 0.5
    assert offset == pytest.approx(round(offset), abs=1e-9)


def test_shift_zero_on_existing_boundary():
    d = np.array([0.0, 1.0, 2.0])
    # boundaries sit at -0.5, 0.5, 1.5, 2.5 for k = 3
    scheme = build_quantization(d, [0.1] * 3, 3, 0.5, True)
    assert scheme.shift == pytest.approx(0.0, abs=1e-15)


def test_shift_edge_bucket():
    d = np.array([0.0, 1.0, 2.0])
    # boundaries at 0.5 and 1.5; the closest one to 0.9 is 0.4 below it
    scheme = build_quantization(d, [0.1] * 3, 3, 0.9, True)
    assert scheme.shift == pytest.approx(0.4)
    assert scheme.k_eff == 3
    # a target half a bucket from both neighbours moves the buckets down by w / 2, which
    # leaves D_max on the upper edge of bucket k and needs one more bucket
    scheme = build_quantization(d, [0.1] * 3, 3, 2.0, True)
    assert scheme.shift == pytest.approx(-0.5)
    assert scheme.k_eff == 4
    assert scheme.bucket_of.tolist() == [2, 3, 4]
    assert scheme.counts == (0, 1, 1, 1)


def test_shift_ignored_outside_range():
    d = np.array([0.0, 1.0, 2.0])
    scheme = build_quantization(d, [0.1] * 3, 3, 10.0, True)
    assert scheme.shift == 0.0


def test_quantization_errors():
    with pytest.raises(ValidationError):
        build_quantization([0.0, 1.0], [0.1, 0.1], 1, 0.0)
    with pytest.raises(DegenerateSpanError):
        build_quantization([0.5, 0.5], [0.1, 0.1], 4, 0.0)
    with pytest.raises(ValidationError):
        build_quantization([0.0, 1.0], NoiseSpec.uniform(0.1, 3), 4, 0.0)


if __name__ == "__main__":
    noisybayes.testing.main()
