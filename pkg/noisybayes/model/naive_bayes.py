# Licensed under the MIT License.
"""Binary naive Bayes classifier over binary features.

Probabilities are stored as ``p(X_i = 1 | C = c)``. The per-point quantities consumed by the SCP
machinery are the log ratios

    A_j = log(alpha_j / beta_j),   B_j = log((1 - alpha_j) / (1 - beta_j)),   D_j = B_j - A_j

where ``alpha_j = p(x_j | C = 0)`` and ``beta_j = p(x_j | C = 1)`` are evaluated at the observed
bit, and the target ``T = -(log(p0 / p1) + sum_j A_j)``. A zero log-odds classifies as class 0.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from noisybayes.common.errors import ValidationError

logger = logging.getLogger(__name__)


def _check_open_unit(name: str, value: float) -> None:
    if not np.isfinite(value) or not 0.0 < value < 1.0:
        raise ValidationError(f"{name} must lie strictly inside (0, 1), got {value!r}")


@dataclass(frozen=True)
class NaiveBayesModel:
    """A trained binary naive Bayes classifier.

    Attributes
    ----------
    prior0 : float
        p(C = 0), strictly inside (0, 1).
    theta0 : tuple of float
        theta0[i] = p(X_i = 1 | C = 0).
    theta1 : tuple of float
        theta1[i] = p(X_i = 1 | C = 1).
    """
    prior0: float
    theta0: Tuple[float, ...]
    theta1: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "prior0", float(self.prior0))
        object.__setattr__(self, "theta0", tuple(float(v) for v in self.theta0))
        object.__setattr__(self, "theta1", tuple(float(v) for v in self.theta1))
        _check_open_unit("prior0", self.prior0)
        if len(self.theta0) == 0:
            raise ValidationError("A model needs at least one feature")
        if len(self.theta0) != len(self.theta1):
            raise ValidationError(
                f"theta0 and theta1 lengths differ: {len(self.theta0)} != {len(self.theta1)}")
        for c, theta in ((0, self.theta0), (1, self.theta1)):
            for i, value in enumerate(theta):
                _check_open_unit(f"theta{c}[{i}]", value)

    @property
    def n(self) -> int:
        return len(self.theta0)

    @property
    def log_prior_odds(self) -> float:
        return float(np.log(self.prior0) - np.log(1.0 - self.prior0))

    def theta_arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.asarray(self.theta0, dtype=np.float64), np.asarray(self.theta1, dtype=np.float64)


@dataclass(frozen=True)
class TestPoint:
    """A binary feature vector."""
    __test__ = False  # not a pytest test class

    bits: Tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise ValidationError(f"bit {i} must be 0 or 1, got {b}")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_string(cls, text: str) -> "TestPoint":
        """Parse a point written as a bit string such as ``"0110"`` (commas allowed)."""
        cleaned = text.replace(",", "").replace(" ", "")
        if not cleaned or any(ch not in "01" for ch in cleaned):
            raise ValidationError(f"Point must be a string of 0/1 characters, got {text!r}")
        return cls(tuple(int(ch) for ch in cleaned))

    @property
    def n(self) -> int:
        return len(self.bits)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.bits, dtype=np.uint8)

    def flipped(self, j: int) -> "TestPoint":
        bits = list(self.bits)
        bits[j] = 1 - bits[j]
        return TestPoint(tuple(bits))

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


def _readonly(values) -> np.ndarray:
    array = np.array(values, dtype=np.float64)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class LogTerms:
    """Per-point log-domain quantities.

    ``d`` always equals ``b - a`` elementwise, and ``base_class`` is 0 exactly when
    ``target <= 0``.
    """
    a: np.ndarray
    b: np.ndarray
    target: float
    base_class: int
    d: np.ndarray = field(init=False)

    def __post_init__(self):
        a = _readonly(self.a)
        b = _readonly(self.b)
        if a.ndim != 1 or a.shape != b.shape or a.size == 0:
            raise ValidationError(f"a and b must be equal-length non-empty vectors, got "
                                  f"shapes {a.shape} and {b.shape}")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ValidationError("log terms must be finite")
        target = float(self.target)
        if not np.isfinite(target):
            raise ValidationError(f"target must be finite, got {target}")
        if self.base_class not in (0, 1):
            raise ValidationError(f"base_class must be 0 or 1, got {self.base_class}")
        expected = 0 if target <= 0.0 else 1
        if self.base_class != expected:
            raise ValidationError(
                f"base_class {self.base_class} is inconsistent with target {target}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "d", _readonly(b - a))

    @classmethod
    def from_differences(cls, d: Sequence[float], target: float) -> "LogTerms":
        """Build terms directly from difference values and a target (``a = 0``, ``b = d``)."""
        d = np.asarray(d, dtype=np.float64)
        target = float(target)
        return cls(a=np.zeros_like(d), b=d, target=target, base_class=0 if target <= 0.0 else 1)

    @property
    def n(self) -> int:
        return int(self.a.size)

    @property
    def log_odds(self) -> float:
        return -self.target

    def mirrored(self) -> "LogTerms":
        """The class-symmetric instance: every log term and the target negated."""
        return LogTerms(a=-self.a, b=-self.b, target=-self.target,
                        base_class=0 if -self.target <= 0.0 else 1)


@dataclass(frozen=True)
class Dataset:
    """Labelled binary points sharing a single feature count."""
    points: Tuple[TestPoint, ...]
    labels: Tuple[int, ...]
    feature_names: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        points = tuple(p if isinstance(p, TestPoint) else TestPoint(tuple(p)) for p in self.points)
        labels = tuple(int(v) for v in self.labels)
        if len(points) != len(labels):
            raise ValidationError(
                f"points and labels lengths differ: {len(points)} != {len(labels)}")
        for row, label in enumerate(labels):
            if label not in (0, 1):
                raise ValidationError(f"label in row {row} must be 0 or 1, got {label}")
        if points:
            n = points[0].n
            for row, p in enumerate(points):
                if p.n != n:
                    raise ValidationError(
                        f"point in row {row} has {p.n} features, expected {n}")
        names = None if self.feature_names is None else tuple(self.feature_names)
        if names is not None and points and len(names) != points[0].n:
            raise ValidationError(
                f"{len(names)} feature names given for {points[0].n} features")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "feature_names", names)

    @classmethod
    def from_arrays(cls, features: np.ndarray, labels: Iterable[int],
                    feature_names: Optional[Sequence[str]] = None) -> "Dataset":
        features = np.asarray(features)
        return cls(
            points=tuple(TestPoint(tuple(int(v) for v in row)) for row in features),
            labels=tuple(int(v) for v in labels),
            feature_names=None if feature_names is None else tuple(feature_names))

    @property
    def n(self) -> int:
        if self.points:
            return self.points[0].n
        return 0 if self.feature_names is None else len(self.feature_names)

    def __len__(self) -> int:
        return len(self.points)

    def as_arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        features = np.array([p.bits for p in self.points], dtype=np.uint8).reshape(len(self), self.n)
        return features, np.asarray(self.labels, dtype=np.uint8)


def _check_point(model: NaiveBayesModel, x: TestPoint) -> None:
    if x.n != model.n:
        raise ValidationError(f"Point has {x.n} features but the model expects {model.n}")


def train(data: Dataset, smoothing: float = 1.0) -> NaiveBayesModel:
    """Fit a model by add-``smoothing`` (Laplace) estimation.

    Raises
    ------
    ValidationError
        On an empty dataset, negative smoothing, or when zero smoothing meets a zero count and
        would produce a probability of exactly 0 or 1.
    """
    smoothing = float(smoothing)
    if not np.isfinite(smoothing) or smoothing < 0:
        raise ValidationError(f"smoothing must be a non-negative real, got {smoothing}")
    if len(data) == 0:
        raise ValidationError("Cannot train on an empty dataset")

    features, labels = data.as_arrays()
    total = len(labels)
    counts = [int(np.sum(labels == 0)), int(np.sum(labels == 1))]

    prior0 = (counts[0] + smoothing) / (total + 2 * smoothing)
    if not 0.0 < prior0 < 1.0:
        raise ValidationError(
            f"Only label {0 if counts[1] == 0 else 1} is present; use smoothing > 0")

    thetas = []
    for c in (0, 1):
        denominator = counts[c] + 2 * smoothing
        if denominator == 0:
            raise ValidationError(f"No training rows with label {c}; use smoothing > 0")
        ones = features[labels == c].sum(axis=0, dtype=np.int64)
        theta = (ones + smoothing) / denominator
        bad = np.flatnonzero((theta <= 0.0) | (theta >= 1.0))
        if bad.size:
            raise ValidationError(
                f"Feature {int(bad[0])} has a zero count for label {c}; "
                f"zero smoothing would give p(X={int(round(theta[bad[0]]))}|C={c}) = 1")
        thetas.append(theta)

    logger.debug(f"Trained on {total} rows ({counts[0]} class 0, {counts[1]} class 1), "
                 f"n={data.n}, smoothing={smoothing}")
    return NaiveBayesModel(prior0=prior0, theta0=tuple(thetas[0]), theta1=tuple(thetas[1]))


def _conditionals(model: NaiveBayesModel, x: TestPoint):
    theta0, theta1 = model.theta_arrays()
    bits = x.as_array().astype(bool)
    alpha = np.where(bits, theta0, 1.0 - theta0)
    beta = np.where(bits, theta1, 1.0 - theta1)
    alpha_flipped = np.where(bits, 1.0 - theta0, theta0)
    beta_flipped = np.where(bits, 1.0 - theta1, theta1)
    return alpha, beta, alpha_flipped, beta_flipped


def log_terms(model: NaiveBayesModel, x: TestPoint) -> LogTerms:
    _check_point(model, x)
    alpha, beta, alpha_flipped, beta_flipped = _conditionals(model, x)
    a = np.log(alpha) - np.log(beta)
    b = np.log(alpha_flipped) - np.log(beta_flipped)
    log_odds = model.log_prior_odds + float(np.sum(a))
    target = -log_odds
    return LogTerms(a=a, b=b, target=target, base_class=0 if target <= 0.0 else 1)


def classify(model: NaiveBayesModel, x: TestPoint) -> int:
    """Class 0 iff the log-odds ``log(p0/p1) + sum_j A_j`` is non-negative."""
    return log_terms(model, x).base_class


def all_points(n: int) -> np.ndarray:
    """Every binary vector of length ``n`` as rows, bit ``j`` of the row index at column ``j``."""
    index = np.arange(1 << n, dtype=np.int64)
    return ((index[:, None] >> np.arange(n, dtype=np.int64)) & 1).astype(np.uint8)


def point_probability(model: NaiveBayesModel, x: TestPoint) -> float:
    """Model marginal ``p(x) = sum_c p(c) p(x | c)``."""
    _check_point(model, x)
    theta0, theta1 = model.theta_arrays()
    bits = x.as_array().astype(bool)
    like0 = np.prod(np.where(bits, theta0, 1.0 - theta0))
    like1 = np.prod(np.where(bits, theta1, 1.0 - theta1))
    return float(model.prior0 * like0 + (1.0 - model.prior0) * like1)
