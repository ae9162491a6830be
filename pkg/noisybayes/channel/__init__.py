# Licensed under the MIT License.
"""Noise channels, error patterns and repetition coding."""

from .noise import (
    NoiseSpec,  # noqa: F401
    ErrorPattern,  # noqa: F401
    RedundancyAllocation,  # noqa: F401
    repetition_error_prob,  # noqa: F401
    apply_allocation,  # noqa: F401
    error_pattern_prob,  # noqa: F401
    sample_errors,  # noqa: F401
    encode_repetition,  # noqa: F401
    decode_majority,  # noqa: F401
    simulate_repetition_channel,  # noqa: F401
)
