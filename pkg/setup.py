# Licensed under the MIT License.

import os
import shutil
from typing import List

from setuptools import find_packages, setup
from setuptools.command.build_py import build_py
from setuptools.command.sdist import sdist

PACKAGE_NAME = "noisybayes"
ROOT_DIR = os.path.dirname(os.path.abspath(__file__))


def read_text(name: str, required: bool = True) -> str:
    path = os.path.join(ROOT_DIR, name)
    if not os.path.isfile(path):
        if required:
            raise FileNotFoundError(f"{name} not found in {ROOT_DIR}")
        return ""
    with open(path, encoding="utf-8") as f:
        return f.read()


def requirements(name: str = "requirements.txt") -> List[str]:
    """Requirement lines of ``name`` without comments or blanks."""
    lines = (line.strip() for line in read_text(name).splitlines())
    return [line for line in lines if line and not line.startswith("#")]


VERSION = read_text("VERSION").strip()


class NoisyBayesBuildPyCommand(build_py):
    """Ships VERSION inside the package for ``noisybayes.version``."""

    def run(self):
        build_py.run(self)
        target_dir = os.path.join(self.build_lib, PACKAGE_NAME)
        self.mkpath(target_dir)
        shutil.copy2(os.path.join(ROOT_DIR, "VERSION"), target_dir)


class NoisyBayesSdistCommand(sdist):
    """Names the sdist after the package and the VERSION file."""

    def make_distribution(self):
        self.distribution.metadata.name = PACKAGE_NAME
        self.distribution.metadata.version = VERSION
        super().make_distribution()


setup(
    name=PACKAGE_NAME,
    version=VERSION,
    packages=find_packages(where=".", include=["noisybayes", "noisybayes.*"]),
    package_dir={"": "."},
    description="Same-classification probability of naive Bayes classifiers under feature noise, "
    "and repetition-code allocation to protect it.",
    long_description=read_text("README.md", required=False),
    long_description_content_type="text/markdown",
    license="MIT",
    keywords="naive Bayes, robustness, bit flips, repetition codes, generating functions",
    classifiers=[
        "Programming Language :: Python :: 3.9",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Intended Audience :: Science/Research",
    ],
    python_requires=">=3.9",
    install_requires=requirements(),
    extras_require={"test": requirements("requirements-test.txt")},
    package_data={PACKAGE_NAME: ["data/*.csv"]},
    include_package_data=False,
    entry_points={"console_scripts": ["noisybayes=noisybayes.cli:main"]},
    cmdclass={
        "build_py": NoisyBayesBuildPyCommand,
        "sdist": NoisyBayesSdistCommand,
    },
)
