# Licensed under the MIT License.
"""Approximation error of the plain (shifted) and hybrid SCP against exact enumeration, swept
over the bucket count ``k``."""

import logging
import math
import time
from typing import List, Optional, Sequence

import numpy as np
from tqdm import tqdm

from noisybayes import env
from noisybayes.channel import NoiseSpec
from noisybayes.common import MultStrategy, ordered_map
from noisybayes.common.errors import CapExceededError, ValidationError
from noisybayes.model import NaiveBayesModel, TestPoint, log_terms
from noisybayes.scp import (
    EvalConfig,
    approx_components,
    approx_from_components,
    hybrid_from_components,
    same_class_mass,
)
from .emit import ResultTable

logger = logging.getLogger(__name__)

APPROX_ERROR_COLUMNS = ("k", "method", "mean_abs_err", "max_abs_err")
APPROX_METHODS = ("approx", "hybrid")


def sample_points(points: Sequence[TestPoint], count: int, seed: Optional[int]) -> List[TestPoint]:
    """Up to ``count`` points drawn without replacement, in draw order."""
    if count < 1:
        raise ValidationError(f"sample count must be positive, got {count}")
    points = list(points)
    if not points:
        raise ValidationError("No points to sample from")
    rng = np.random.default_rng(seed)
    chosen = rng.choice(len(points), size=min(count, len(points)), replace=False)
    return [points[int(i)] for i in chosen]


def method_label(method: str, shift: bool, order: int) -> str:
    if method == "approx":
        return "approx_shift" if shift else "approx"
    return f"hybrid{order}"


def run_approx_error(model: NaiveBayesModel,
                     points: Sequence[TestPoint],
                     eps: float,
                     k_list: Sequence[int],
                     methods: Sequence[str] = APPROX_METHODS,
                     shift: bool = True,
                     order: Optional[int] = None,
                     mult: MultStrategy = MultStrategy.Transform,
                     progress: bool = False,
                     num_workers: Optional[int] = None) -> ResultTable:
    """Mean and max absolute SCP error per ``(k, method)`` over ``points``.

    The exact SCP of each point is computed once; for every ``k`` the generating function of a
    point is expanded once and read by both methods.
    """
    if model.n > env.EXACT_MAX_FEATURES:
        raise CapExceededError("n", model.n, env.EXACT_MAX_FEATURES,
                               "the error experiment needs the exact SCP as reference")
    for method in methods:
        if method not in APPROX_METHODS:
            raise ValidationError(f"Unknown method {method!r}; expected one of {APPROX_METHODS}")
    for k in k_list:
        if int(k) != k or k < 2:
            raise ValidationError(f"k must be an integer >= 2, got {k!r}")
    if not points:
        raise ValidationError("No points given")
    order = EvalConfig(order=order).hybrid_order(model.n)
    noise = NoiseSpec.uniform(eps, model.n)
    start = time.perf_counter()

    terms = [log_terms(model, x) for x in points]
    exact = ordered_map(
        lambda t: same_class_mass(t.d, noise.as_array(), t.target, t.base_class, num_workers=1),
        terms, num_workers)

    table = ResultTable(APPROX_ERROR_COLUMNS)
    for k in tqdm(k_list, desc="Approximation error", disable=not progress):

        def point_errors(i: int):
            components = approx_components(terms[i], noise, int(k), shift, mult, num_workers=1)
            errors = {}
            if "approx" in methods:
                errors["approx"] = abs(
                    approx_from_components(components, terms[i], noise) - exact[i])
            if "hybrid" in methods:
                errors["hybrid"] = abs(
                    hybrid_from_components(components, terms[i], noise, order) - exact[i])
            return errors

        per_point = ordered_map(point_errors, range(len(terms)), num_workers)
        for method in methods:
            errors = [e[method] for e in per_point]
            table.append(int(k), method_label(method, shift, order),
                         math.fsum(errors) / len(errors), max(errors))

    logger.info(f"Approximation error over {len(terms)} points and {len(k_list)} values of k "
                f"in {time.perf_counter() - start:.3f}s")
    table.details = {"eps": float(eps), "n": model.n, "points": len(terms), "shift": shift,
                     "order": order, "mult": MultStrategy(mult).tag}
    return table
