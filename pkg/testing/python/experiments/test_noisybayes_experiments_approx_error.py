import pytest

import noisybayes.testing
from noisybayes.common.errors import CapExceededError, ValidationError
from noisybayes.data import load_bundled_sample
from noisybayes.experiments import run_approx_error, sample_points
from noisybayes.model import NaiveBayesModel, train


def bundled_model_and_points(count=50, seed=0):
    data = load_bundled_sample()
    return train(data), sample_points(data.points, count, seed)


def test_sample_points_without_replacement():
    data = load_bundled_sample()
    chosen = sample_points(list(range(10)), 10, 4)
    assert sorted(chosen) == list(range(10))
    assert sample_points(data.points, 5, 1) == sample_points(data.points, 5, 1)
    assert len(sample_points(data.points, 1000, 1)) == len(data)
    with pytest.raises(ValidationError):
        sample_points(data.points, 0, 1)


def test_hybrid_below_plain_across_k():
    model, points = bundled_model_and_points()
    k_list = list(range(2, 101, 7))
    table = run_approx_error(model, points, 1e-2, k_list)
    plain = table.where(method="approx_shift")
    hybrid = table.where(method="hybrid2")
    assert [row[0] for row in plain] == k_list
    wins = sum(h[2] <= p[2] + 1e-12 for h, p in zip(hybrid, plain))
    assert wins >= 0.9 * len(k_list)
    for row in table.rows:
        assert 0.0 <= row[2] <= row[3]


def test_zero_noise_has_no_error():
    model, points = bundled_model_and_points(10)
    table = run_approx_error(model, points, 0.0, [2, 10])
    for row in table.rows:
        assert row[2] == pytest.approx(0.0, abs=1e-12)
        assert row[3] == pytest.approx(0.0, abs=1e-12)


def test_fine_buckets_beat_two_buckets():
    model, points = bundled_model_and_points(20, seed=3)
    table = run_approx_error(model, points, 1e-2, [2, 1000], methods=["approx"])
    coarse, fine = table.column("mean_abs_err")
    assert fine <= coarse


def test_experiment_validation():
    model, points = bundled_model_and_points(5)
    with pytest.raises(ValidationError):
        run_approx_error(model, points, 1e-2, [1])
    with pytest.raises(ValidationError):
        run_approx_error(model, points, 1e-2, [5], methods=["sampled"])
    wide = NaiveBayesModel(0.5, (0.3,) * 30, (0.6,) * 30)
    with pytest.raises(CapExceededError):
        run_approx_error(wide, [], 1e-2, [5])


if __name__ == "__main__":
    noisybayes.testing.main()
