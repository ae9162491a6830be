# Licensed under the MIT License.
"""Environment-driven defaults.

Values are read once at import time. Keyword arguments on the public functions always take
precedence over these defaults.
"""
import os
import logging

logger = logging.getLogger(__name__)


def _int_from_env(name: str, default: int, minimum: int = 0) -> int:
    raw = os.environ.get(name, None)
    if raw is None:
        return default
    try:
        value = int(float(raw))
    except ValueError:
        logger.warning(f"Ignoring {name}={raw!r}: not a number, using default {default}")
        return default
    if value < minimum:
        logger.warning(f"Ignoring {name}={raw!r}: must be >= {minimum}, using default {default}")
        return default
    return value


# Largest n for which SCP is computed by enumerating all 2^n error patterns.
EXACT_MAX_FEATURES: int = _int_from_env("NOISYBAYES_EXACT_MAX_FEATURES", 25, minimum=1)
# Largest n for averaging over the full point space (4^n work in total).
AVERAGE_MAX_FEATURES: int = _int_from_env("NOISYBAYES_AVERAGE_MAX_FEATURES", 20, minimum=1)
# Largest number of compositions the exhaustive allocator may visit.
EXHAUSTIVE_MAX_CANDIDATES: int = _int_from_env(
    "NOISYBAYES_EXHAUSTIVE_MAX_CANDIDATES", 1_000_000, minimum=1)
# Memory cap for a single generating-function coefficient grid.
MAX_GRID_ENTRIES: int = _int_from_env("NOISYBAYES_MAX_GRID_ENTRIES", 50_000_000, minimum=1)
NUM_WORKERS: int = _int_from_env("NOISYBAYES_NUM_WORKERS", 1, minimum=1)
LOG_LEVEL: str = os.environ.get("NOISYBAYES_LOG_LEVEL", "WARNING")

__all__ = [
    "EXACT_MAX_FEATURES",
    "AVERAGE_MAX_FEATURES",
    "EXHAUSTIVE_MAX_CANDIDATES",
    "MAX_GRID_ENTRIES",
    "NUM_WORKERS",
    "LOG_LEVEL",
]
