# Licensed under the MIT License.
"""Synthetic binary datasets with controlled feature informativeness.

Each feature gets a centre ``c`` and a gap ``delta = |theta0 - theta1|``; the class-conditional
probabilities are ``c +/- delta / 2`` with a random orientation. The ``similar`` profile draws
every gap from a narrow band, so features depend on the class in much the same way; ``mixed``
draws gaps from a wide band, mixing barely informative and strongly informative features.
"""

from typing import Dict, Optional, Tuple

import numpy as np

from noisybayes.common.errors import ValidationError
from noisybayes.model import Dataset, NaiveBayesModel

SYNTH_PROFILES: Dict[str, Tuple[float, float]] = {
    "similar": (0.25, 0.30),
    "mixed": (0.02, 0.60),
}
CENTRE_RANGE = (0.35, 0.65)


def _check_profile(profile: str) -> Tuple[float, float]:
    if profile not in SYNTH_PROFILES:
        raise ValidationError(
            f"Unknown profile {profile!r}; expected one of {sorted(SYNTH_PROFILES)}")
    return SYNTH_PROFILES[profile]


def synth_model(n: int, profile: str = "mixed", seed: Optional[int] = 0,
                rng: Optional[np.random.Generator] = None) -> NaiveBayesModel:
    """The generating model behind ``synth_dataset`` (balanced prior)."""
    if n < 1:
        raise ValidationError(f"n must be positive, got {n}")
    low, high = _check_profile(profile)
    rng = np.random.default_rng(seed) if rng is None else rng
    centre = rng.uniform(*CENTRE_RANGE, size=n)
    gap = rng.uniform(low, high, size=n)
    sign = np.where(rng.random(n) < 0.5, -1.0, 1.0)
    theta0 = centre + sign * gap / 2
    theta1 = centre - sign * gap / 2
    return NaiveBayesModel(0.5, tuple(theta0), tuple(theta1))


def synth_dataset(n: int, t: int, profile: str = "mixed", seed: Optional[int] = 0) -> Dataset:
    """``t`` labelled rows drawn from ``synth_model``; identical for identical arguments."""
    if t < 1:
        raise ValidationError(f"t must be positive, got {t}")
    rng = np.random.default_rng(seed)
    model = synth_model(n, profile, rng=rng)
    labels = (rng.random(t) < 0.5).astype(np.uint8)
    theta0, theta1 = model.theta_arrays()
    probs = np.where(labels[:, None] == 0, theta0[None, :], theta1[None, :])
    features = (rng.random((t, n)) < probs).astype(np.uint8)
    return Dataset.from_arrays(features, labels, tuple(f"x{i}" for i in range(n)))
