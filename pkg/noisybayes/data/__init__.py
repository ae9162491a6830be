# Licensed under the MIT License.

from .loader import (
    LABEL_COLUMN,  # noqa: F401
    BUNDLED_SAMPLE,  # noqa: F401
    load_dataset,  # noqa: F401
    save_dataset,  # noqa: F401
    load_bundled_sample,  # noqa: F401
)
from .synth import (
    SYNTH_PROFILES,  # noqa: F401
    synth_model,  # noqa: F401
    synth_dataset,  # noqa: F401
)
