# Licensed under the MIT License.
from enum import IntEnum


class ScpMethod(IntEnum):
    Exact = 0
    Approx = 1
    Hybrid = 2
    MonteCarlo = 3

    @property
    def tag(self) -> str:
        return {
            ScpMethod.Exact: "exact",
            ScpMethod.Approx: "approx",
            ScpMethod.Hybrid: "hybrid",
            ScpMethod.MonteCarlo: "monte_carlo",
        }[self]

    @classmethod
    def from_tag(cls, tag: str) -> "ScpMethod":
        normalized = tag.strip().lower().replace("-", "_")
        for member in cls:
            if member.tag == normalized:
                return member
        raise ValueError(f"Unknown SCP method: {tag!r}")

    def is_exact(self):
        return self == ScpMethod.Exact

    def is_approx(self):
        return self == ScpMethod.Approx

    def is_hybrid(self):
        return self == ScpMethod.Hybrid

    def is_monte_carlo(self):
        return self == ScpMethod.MonteCarlo


class MultStrategy(IntEnum):
    Direct = 0
    Transform = 1

    @property
    def tag(self) -> str:
        return "direct" if self == MultStrategy.Direct else "transform"

    @classmethod
    def from_tag(cls, tag: str) -> "MultStrategy":
        normalized = tag.strip().lower()
        if normalized == "direct":
            return cls.Direct
        if normalized in ("transform", "fft"):
            return cls.Transform
        raise ValueError(f"Unknown multiplication strategy: {tag!r}")

    def is_direct(self):
        return self == MultStrategy.Direct

    def is_transform(self):
        return self == MultStrategy.Transform


class Weighting(IntEnum):
    UniformOverPoints = 0
    ModelMarginal = 1
    Dataset = 2

    @property
    def tag(self) -> str:
        return {
            Weighting.UniformOverPoints: "uniform",
            Weighting.ModelMarginal: "marginal",
            Weighting.Dataset: "dataset",
        }[self]

    @classmethod
    def from_tag(cls, tag: str) -> "Weighting":
        normalized = tag.strip().lower().replace("-", "_")
        aliases = {
            "uniform": cls.UniformOverPoints,
            "uniform_over_points": cls.UniformOverPoints,
            "marginal": cls.ModelMarginal,
            "model_marginal": cls.ModelMarginal,
            "dataset": cls.Dataset,
        }
        if normalized not in aliases:
            raise ValueError(f"Unknown weighting: {tag!r}")
        return aliases[normalized]
