import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import noisybayes.testing
from noisybayes.channel import ErrorPattern, NoiseSpec, error_pattern_prob
from noisybayes.common import Weighting
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
from noisybayes.scp import scp_averaged, scp_exact, scp_monte_carlo, scp_monte_carlo_terms
from noisybayes.scp.exact import same_classification


def brute_force_scp(terms: LogTerms, noise: NoiseSpec) -> float:
    total = []
    for e in itertools.product((0, 1), repeat=terms.n):
        s = float(np.dot(e, terms.d))
        if same_classification(np.array([s]), terms.target, terms.base_class)[0]:
            total.append(error_pattern_prob(noise, ErrorPattern(e)))
    return math.fsum(total)


def row_models():
    return noisybayes.testing.two_feature_models()


def test_scp_exact_single_point():
    terms = log_terms(row_models()[0], TestPoint((0, 0)))
    assert scp_exact(terms, NoiseSpec.uniform(0.1, 2)).value == pytest.approx(0.9, abs=1e-12)
    value = scp_exact(terms, NoiseSpec((0.00856, 0.1))).value
    assert value == pytest.approx(0.99144, abs=1e-12)


def test_scp_exact_zero_noise():
    _, _, terms, _ = noisybayes.testing.random_instance(9, 0)
    assert scp_exact(terms, NoiseSpec.uniform(0.0, 9)).value == 1.0


@pytest.mark.parametrize("seed", range(15))
def test_scp_exact_matches_brute_force(seed):
    n = 3 + seed % 8
    _, _, terms, noise = noisybayes.testing.random_instance(n, seed)
    assert scp_exact(terms, noise).value == pytest.approx(brute_force_scp(terms, noise), abs=1e-13)


def test_scp_exact_wide_instance_uses_blocks():
    # more features than one vectorized block
    n = 19
    _, _, terms, noise = noisybayes.testing.random_instance(n, 4)
    single = scp_exact(terms, noise, num_workers=1).value
    threaded = scp_exact(terms, noise, num_workers=4).value
    assert single == threaded
    assert 0.0 <= single <= 1.0


def test_scp_exact_cap_and_lengths():
    terms = LogTerms.from_differences(np.linspace(-1, 1, 6), -0.3)
    with pytest.raises(CapExceededError):
        scp_exact(terms, NoiseSpec.uniform(0.1, 6), max_features=5)
    with pytest.raises(ValidationError):
        scp_exact(terms, NoiseSpec.uniform(0.1, 5))


@pytest.mark.parametrize("seed", range(10))
def test_class_symmetry(seed):
    _, _, terms, noise = noisybayes.testing.random_instance(8, seed)
    mirrored = LogTerms.from_differences(-terms.d, -terms.target)
    if terms.target == 0.0:
        pytest.skip("tie at zero target")
    assert mirrored.base_class != terms.base_class
    assert scp_exact(mirrored, noise).value == pytest.approx(scp_exact(terms, noise).value,
                                                              abs=1e-12)


def test_scp_averaged_uniform_over_points():
    row1, row2 = row_models()
    noise = NoiseSpec.uniform(0.1, 2)
    assert scp_averaged(row1, noise).value == pytest.approx(0.900, abs=1e-3)
    assert scp_averaged(row2, noise).value == pytest.approx(0.905, abs=1e-12)
    assert scp_averaged(row1, NoiseSpec((0.00856, 0.1))).value == pytest.approx(0.991, abs=1e-3)
    for eps in ((0.00856, 0.1), (0.1, 0.00856)):
        assert scp_averaged(row2, NoiseSpec(eps)).value == pytest.approx(0.946, abs=1e-3)


def test_scp_averaged_per_point_values():
    row2 = row_models()[1]
    noise = NoiseSpec.uniform(0.1, 2)
    values = [scp_exact(log_terms(row2, TestPoint(bits)), noise).value
              for bits in ((0, 0), (1, 1), (0, 1), (1, 0))]
    np.testing.assert_allclose(values, [0.81, 0.99, 0.91, 0.91], atol=1e-12)


@pytest.mark.parametrize("weighting", list(Weighting))
def test_scp_averaged_zero_noise(weighting):
    model = noisybayes.testing.random_model(5, np.random.default_rng(2))
    data = Dataset([(0, 1, 0, 1, 1), (1, 1, 0, 0, 0)], [0, 1])
    result = scp_averaged(model, NoiseSpec.uniform(0.0, 5), weighting, data)
    assert result.value == pytest.approx(1.0, abs=1e-12)


def test_scp_averaged_marginal_weighting():
    model = noisybayes.testing.random_model(4, np.random.default_rng(8))
    noise = NoiseSpec.uniform(0.15, 4)
    expected = math.fsum(
        point_probability(model, TestPoint(tuple(r))) *
        scp_exact(log_terms(model, TestPoint(tuple(r))), noise).value for r in all_points(4))
    value = scp_averaged(model, noise, Weighting.ModelMarginal).value
    assert value == pytest.approx(expected, abs=1e-12)


def test_scp_averaged_requires_dataset():
    model = row_models()[0]
    with pytest.raises(ValidationError):
        scp_averaged(model, NoiseSpec.uniform(0.1, 2), Weighting.Dataset)
    with pytest.raises(CapExceededError):
        scp_averaged(model, NoiseSpec.uniform(0.1, 2), max_features=1)


def test_monte_carlo_single_point():
    model = row_models()[0]
    x = TestPoint((0, 0))
    noise = NoiseSpec.uniform(0.1, 2)
    trials = 1_000_000
    result = scp_monte_carlo(model, x, noise, trials, seed=3)
    assert abs(result.value - 0.9) <= 3 * math.sqrt(0.9 * 0.1 / trials)
    assert scp_monte_carlo(model, x, noise, 1000, seed=3).value == \
        scp_monte_carlo(model, x, noise, 1000, seed=3).value
    assert scp_monte_carlo(model, x, NoiseSpec.uniform(0.0, 2), 100, seed=1).value == 1.0
    with pytest.raises(ValidationError):
        scp_monte_carlo(model, x, noise, 0)


@pytest.mark.parametrize("seed", range(8))
def test_monte_carlo_agrees_with_exact(seed):
    _, _, terms, noise = noisybayes.testing.random_instance(10, seed)
    trials = 100_000
    exact = scp_exact(terms, noise).value
    sigma = math.sqrt(max(exact * (1 - exact), 1e-12) / trials)
    estimate = scp_monte_carlo_terms(terms, noise, trials, seed).value
    assert abs(estimate - exact) <= 4 * sigma + 1e-12


def _toward_other_class(terms: LogTerms, i: int) -> bool:
    """Whether flipping feature ``i`` moves the log-odds toward the other class."""
    if terms.base_class == 0:
        return terms.d[i] <= 0.0
    return terms.d[i] >= 0.0


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**31 - 1))
def test_less_noise_on_harmful_features_helps(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 11))
    model = noisybayes.testing.random_model(n, rng)
    terms = log_terms(model, noisybayes.testing.random_point(n, rng))
    noise = noisybayes.testing.random_noise(n, rng, 0.0, 0.49)
    i = int(rng.integers(0, n))
    eps = list(noise.eps)
    eps[i] = float(rng.uniform(0.0, eps[i]))
    before = scp_exact(terms, noise).value
    after = scp_exact(terms, NoiseSpec(tuple(eps))).value
    if _toward_other_class(terms, i):
        assert after >= before - 1e-12
    else:
        assert after <= before + 1e-12


def test_monotonicity_on_uninformative_model():
    model = NaiveBayesModel(0.6, (0.3, 0.3), (0.3, 0.3))
    terms = log_terms(model, TestPoint((1, 0)))
    assert scp_exact(terms, NoiseSpec((0.4, 0.1))).value == pytest.approx(1.0, abs=1e-15)


if __name__ == "__main__":
    noisybayes.testing.main()
