# Licensed under the MIT License.
"""The naive Bayes model, its per-point log terms and model documents."""

from .naive_bayes import (
    NaiveBayesModel,  # noqa: F401
    TestPoint,  # noqa: F401
    LogTerms,  # noqa: F401
    Dataset,  # noqa: F401
    train,  # noqa: F401
    classify,  # noqa: F401
    log_terms,  # noqa: F401
    all_points,  # noqa: F401
    point_probability,  # noqa: F401
)
from .io import (
    dumps_model,  # noqa: F401
    loads_model,  # noqa: F401
    save_model,  # noqa: F401
    load_model,  # noqa: F401
)
