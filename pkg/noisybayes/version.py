# Licensed under the MIT License.

import os

_PACKAGE_DIR = os.path.dirname(os.path.abspath(__file__))

# A source checkout keeps VERSION at the repository root; setup.py copies it into the package.
_CANDIDATES = (
    os.path.join(os.path.dirname(_PACKAGE_DIR), "VERSION"),
    os.path.join(_PACKAGE_DIR, "VERSION"),
)


def _read_version() -> str:
    for path in _CANDIDATES:
        if os.path.isfile(path):
            with open(path) as f:
                return f.read().strip()
    raise FileNotFoundError(f"VERSION file not found; looked in {', '.join(_CANDIDATES)}")


__version__ = _read_version()

__all__ = ["__version__"]
