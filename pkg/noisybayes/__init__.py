# Licensed under the MIT License.

import logging
from typing import Union

from tqdm import tqdm

_LOG_FORMAT = "%(asctime)s [NoisyBayes:%(levelname)s]: %(message)s"
_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


class TqdmLoggingHandler(logging.Handler):
    """Writes records through ``tqdm.write`` so an active progress bar is redrawn below them."""

    def emit(self, record):
        try:
            tqdm.write(self.format(record))
        except Exception:
            self.handleError(record)


def set_log_level(level: Union[str, int]) -> None:
    """Set the package log level from a name such as ``"info"`` or a ``logging`` constant."""
    if isinstance(level, str):
        resolved = logging.getLevelName(level.strip().upper())
        if not isinstance(resolved, int):
            raise ValueError(f"Unknown log level {level!r}; expected DEBUG, INFO, WARNING, "
                             f"ERROR or CRITICAL")
        level = resolved
    logging.getLogger(__name__).setLevel(level)


def _init_logger():
    logger = logging.getLogger(__name__)
    if not any(isinstance(h, TqdmLoggingHandler) for h in logger.handlers):
        handler = TqdmLoggingHandler()
        handler.setFormatter(logging.Formatter(fmt=_LOG_FORMAT, datefmt=_DATE_FORMAT))
        logger.addHandler(handler)
    logger.propagate = False
    logger.setLevel(logging.WARNING)


_init_logger()

logger = logging.getLogger(__name__)

from .env import LOG_LEVEL

try:
    set_log_level(LOG_LEVEL)
except ValueError as err:
    logger.warning(f"Ignoring NOISYBAYES_LOG_LEVEL: {err}")

from .common import (
    ScpMethod,  # noqa: F401
    MultStrategy,  # noqa: F401
    Weighting,  # noqa: F401
    ValidationError,  # noqa: F401
    CapExceededError,  # noqa: F401
)
from .model import (
    NaiveBayesModel,  # noqa: F401
    TestPoint,  # noqa: F401
    LogTerms,  # noqa: F401
    Dataset,  # noqa: F401
    train,  # noqa: F401
    classify,  # noqa: F401
    log_terms,  # noqa: F401
    save_model,  # noqa: F401
    load_model,  # noqa: F401
)
from .channel import (
    NoiseSpec,  # noqa: F401
    ErrorPattern,  # noqa: F401
    RedundancyAllocation,  # noqa: F401
    repetition_error_prob,  # noqa: F401
    apply_allocation,  # noqa: F401
    error_pattern_prob,  # noqa: F401
    sample_errors,  # noqa: F401
)
from .scp import (
    ScpResult,  # noqa: F401
    EvalConfig,  # noqa: F401
    scp_exact,  # noqa: F401
    scp_averaged,  # noqa: F401
    scp_monte_carlo,  # noqa: F401
    scp_approx,  # noqa: F401
    scp_hybrid,  # noqa: F401
    compute_scp,  # noqa: F401
)
from .allocation import (
    AllocationProblem,  # noqa: F401
    AllocationResult,  # noqa: F401
    evaluate_allocation,  # noqa: F401
    uniform_allocation,  # noqa: F401
    greedy_allocate,  # noqa: F401
    exhaustive_allocate,  # noqa: F401
)

from .version import __version__  # noqa: F401
