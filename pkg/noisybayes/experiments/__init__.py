# Licensed under the MIT License.
"""Experiment harnesses and result emission."""

from .emit import (
    ResultTable,  # noqa: F401
    emit_results,  # noqa: F401
    render,  # noqa: F401
    pretty,  # noqa: F401
    parse_csv,  # noqa: F401
)
from .approx_error import (
    APPROX_ERROR_COLUMNS,  # noqa: F401
    run_approx_error,  # noqa: F401
    sample_points,  # noqa: F401
)
from .sweep import (
    SWEEP_COLUMNS,  # noqa: F401
    STRATEGIES,  # noqa: F401
    budgets_from_bits,  # noqa: F401
    budgets_per_feature,  # noqa: F401
    change_ratio,  # noqa: F401
    run_allocation_sweep,  # noqa: F401
)
