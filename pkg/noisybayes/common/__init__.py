# Licensed under the MIT License.

from .kinds import ScpMethod, MultStrategy, Weighting  # noqa: F401
from .errors import ValidationError, CapExceededError  # noqa: F401
from .parallel import ordered_map  # noqa: F401
