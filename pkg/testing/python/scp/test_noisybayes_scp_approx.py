import numpy as np
import pytest

import noisybayes.testing
from noisybayes.channel import NoiseSpec
from noisybayes.common import MultStrategy, ScpMethod
from noisybayes import env
from noisybayes.common.errors import CapExceededError, ValidationError
from noisybayes.model import LogTerms, TestPoint, log_terms
from noisybayes.scp import (
    EvalConfig,
    build_quantization,
    compute_scp,
    scp_approx,
    scp_exact,
    scp_hybrid,
)


def mixed_noise(n, rng):
    return NoiseSpec(tuple(rng.choice([0.0, 1e-3, 1e-2, 0.1, 0.3], size=n)))


def quantized_oracle(terms: LogTerms, noise: NoiseSpec, k: int, shift: bool) -> float:
    """Exact SCP of the instance whose difference terms are replaced by bucket midpoints."""
    scheme = build_quantization(terms.d, noise, k, terms.target, shift)
    quantized = LogTerms.from_differences(scheme.quantized_values(), terms.target)
    return scp_exact(quantized, noise).value


def test_two_feature_approximation():
    terms = log_terms(noisybayes.testing.two_feature_models()[0], TestPoint((0, 0)))
    noise = NoiseSpec.uniform(0.1, 2)
    for mult in MultStrategy:
        result = scp_approx(terms, noise, k=2, shift=False, mult=mult)
        assert result.value == pytest.approx(0.9, abs=1e-12)
        assert result.method == ScpMethod.Approx
        assert result.meta["k"] == 2


@pytest.mark.parametrize("k", [2, 7, 50])
def test_zero_noise_is_certain(k):
    _, _, terms, _ = noisybayes.testing.random_instance(10, k)
    noise = NoiseSpec.uniform(0.0, 10)
    assert scp_approx(terms, noise, k).value == pytest.approx(1.0, abs=1e-12)
    assert scp_hybrid(terms, noise, k).value == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("seed", range(100))
def test_matches_quantized_enumeration(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 15))
    k = [2, 5, 50][seed % 3]
    shift = seed % 2 == 0
    model = noisybayes.testing.random_model(n, rng)
    terms = log_terms(model, noisybayes.testing.random_point(n, rng))
    noise = mixed_noise(n, rng)
    value = scp_approx(terms, noise, k, shift).value
    assert value == pytest.approx(quantized_oracle(terms, noise, k, shift), abs=1e-12)


@pytest.mark.parametrize("seed", range(100))
def test_full_order_hybrid_is_exact(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 13))
    _, _, terms, noise = noisybayes.testing.random_instance(n, seed)
    hybrid = scp_hybrid(terms, noise, k=50, shift=True, order=n).value
    assert hybrid == pytest.approx(scp_exact(terms, noise).value, abs=1e-12)


@pytest.mark.parametrize("seed", range(20))
def test_order_zero_hybrid_is_plain(seed):
    _, _, terms, noise = noisybayes.testing.random_instance(9, seed)
    plain = scp_approx(terms, noise, k=8, shift=False).value
    hybrid = scp_hybrid(terms, noise, k=8, shift=False, order=0).value
    assert hybrid == pytest.approx(plain, abs=1e-12)


def test_hybrid_order_validation():
    _, _, terms, noise = noisybayes.testing.random_instance(4, 0)
    with pytest.raises(ValidationError):
        scp_hybrid(terms, noise, order=5)
    with pytest.raises(ValidationError):
        scp_hybrid(terms, noise, order=-1)


def test_hybrid_respects_feature_cap(monkeypatch):
    monkeypatch.setattr(env, "EXACT_MAX_FEATURES", 5)
    _, _, terms, noise = noisybayes.testing.random_instance(10, 3)
    for order in (10, 4):
        with pytest.raises(CapExceededError):
            scp_hybrid(terms, noise, order=order)
    with pytest.raises(CapExceededError):
        compute_scp(terms, noise, EvalConfig(order=10))
    assert 0.0 <= scp_hybrid(terms, noise, order=1).value <= 1.0


def test_explicit_order_is_not_clamped():
    _, _, terms, noise = noisybayes.testing.random_instance(10, 3)
    with pytest.raises(ValidationError):
        compute_scp(terms, noise, EvalConfig(order=99))
    with pytest.raises(ValidationError):
        EvalConfig(order=3).hybrid_order(2)
    assert EvalConfig().hybrid_order(1) == 1
    assert EvalConfig(order=2).hybrid_order(2) == 2


def test_default_order_is_capped_at_feature_count():
    terms = log_terms(noisybayes.testing.random_model(1, np.random.default_rng(0)), TestPoint((1,)))
    result = compute_scp(terms, NoiseSpec.uniform(0.1, 1))
    assert result.meta["order"] == 1
    assert result.value == pytest.approx(scp_exact(terms, NoiseSpec.uniform(0.1, 1)).value)


def test_hybrid_beats_plain_approximation():
    wins = 0
    trials = 30
    for seed in range(trials):
        _, _, terms, noise = noisybayes.testing.random_instance(16, seed, eps=1e-2)
        exact = scp_exact(terms, noise).value
        plain = abs(scp_approx(terms, noise, k=10).value - exact)
        hybrid = abs(scp_hybrid(terms, noise, k=10, order=2).value - exact)
        wins += hybrid <= plain + 1e-12
    assert wins >= 0.9 * trials


def test_fine_buckets_far_from_target_are_exact():
    # all subset sums are integers and the target is 0.37 away from the nearest one
    terms = LogTerms.from_differences([-3.0, -1.0, 2.0, 5.0], 0.37)
    noise = NoiseSpec((0.1, 0.2, 0.05, 0.3))
    exact = scp_exact(terms, noise).value
    for shift in (False, True):
        assert scp_approx(terms, noise, k=100, shift=shift).value == pytest.approx(exact, abs=1e-12)


def test_equal_difference_terms():
    terms = LogTerms.from_differences([0.5] * 5, 1.2)
    noise = NoiseSpec((0.1, 0.2, 0.3, 0.05, 0.15))
    exact = scp_exact(terms, noise).value
    result = scp_approx(terms, noise)
    assert result.meta["degenerate"]
    assert result.value == pytest.approx(exact, abs=1e-13)
    assert scp_hybrid(terms, noise, order=2).value == pytest.approx(exact, abs=1e-13)


@pytest.mark.parametrize("seed", range(20))
def test_shift_quantizes_single_flips_correctly(seed):
    rng = np.random.default_rng(seed)
    d = rng.normal(size=10)
    target = float(rng.uniform(d.min(), d.max()))
    scheme = build_quantization(d, [0.05] * 10, 6, target, shift_enabled=True)
    np.testing.assert_array_equal(scheme.quantized_values() >= target, d >= target)


@pytest.mark.parametrize("seed", range(10))
def test_multiplication_strategies_agree_on_tails(seed):
    _, _, terms, noise = noisybayes.testing.random_instance(14, seed)
    for order in (0, 2):
        direct = scp_hybrid(terms, noise, 30, True, order, MultStrategy.Direct).value
        transform = scp_hybrid(terms, noise, 30, True, order, MultStrategy.Transform).value
        assert direct == pytest.approx(transform, abs=1e-9)


def _error_slope(errors, eps_grid):
    nonzero = [(e, v) for e, v in zip(eps_grid, errors) if v > 0.0]
    assert len(nonzero) >= 2, f"too few nonzero errors: {errors}"
    x = np.log10([e for e, _ in nonzero])
    y = np.log10([v for _, v in nonzero])
    return np.polyfit(x, y, 1)[0]


def test_error_order():
    eps_grid = [1e-1, 1e-2, 1e-3]
    plain_errors, hybrid_errors = [], []
    for eps in eps_grid:
        plain, hybrid = [], []
        for seed in range(12):
            _, _, terms, noise = noisybayes.testing.random_instance(12, seed, eps=eps)
            exact = scp_exact(terms, noise).value
            plain.append(abs(scp_approx(terms, noise, k=20, shift=True).value - exact))
            hybrid.append(abs(scp_hybrid(terms, noise, k=20, shift=True, order=2).value - exact))
        plain_errors.append(float(np.mean(plain)))
        hybrid_errors.append(float(np.mean(hybrid)))
    assert _error_slope(plain_errors, eps_grid) >= 1.5
    assert _error_slope(hybrid_errors, eps_grid) >= 2.5


@pytest.mark.parametrize("method", list(ScpMethod))
def test_compute_scp_dispatch(method):
    terms = log_terms(noisybayes.testing.two_feature_models()[1], TestPoint((0, 1)))
    noise = NoiseSpec.uniform(0.1, 2)
    config = EvalConfig(method=method, k=50, order=2, trials=200_000, seed=1)
    result = compute_scp(terms, noise, config)
    assert result.method == (ScpMethod.Hybrid if method.is_hybrid() else method)
    tolerance = 5e-3 if method.is_monte_carlo() else 1e-12
    assert result.value == pytest.approx(0.91, abs=tolerance)


def test_eval_config_validation():
    with pytest.raises(ValidationError):
        EvalConfig(k=1)
    with pytest.raises(ValidationError):
        EvalConfig(order=-1)
    assert EvalConfig().describe() == "hybrid(k=50, shift=on, order=2)"


if __name__ == "__main__":
    noisybayes.testing.main()
