# Licensed under the MIT License.
"""Model documents: YAML mappings with keys ``n``, ``prior0``, ``theta0`` and ``theta1``.

Floats are written in scientific notation with 17 significant digits so a document round-trips
to the identical model.
"""

import os
from typing import Any, Dict, Union

import yaml

from noisybayes.common.errors import ValidationError
from .naive_bayes import NaiveBayesModel

DOCUMENT_KEYS = ("n", "prior0", "theta0", "theta1")


class _ModelDumper(yaml.SafeDumper):
    pass


def _represent_float(dumper: yaml.SafeDumper, value: float) -> yaml.ScalarNode:
    return dumper.represent_scalar("tag:yaml.org,2002:float", format(value, ".16e"))


_ModelDumper.add_representer(float, _represent_float)


def model_to_dict(model: NaiveBayesModel) -> Dict[str, Any]:
    return {
        "n": model.n,
        "prior0": model.prior0,
        "theta0": list(model.theta0),
        "theta1": list(model.theta1),
    }


def dumps_model(model: NaiveBayesModel) -> str:
    return yaml.dump(
        model_to_dict(model),
        Dumper=_ModelDumper,
        sort_keys=False,
        default_flow_style=None,
        width=100,
    )


def _as_float(key: str, value: Any) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"Model document field {key} must be a number, got {value!r}")
    return float(value)


def model_from_dict(document: Dict[str, Any]) -> NaiveBayesModel:
    if not isinstance(document, dict):
        raise ValidationError("Model document must be a mapping")
    missing = [key for key in DOCUMENT_KEYS if key not in document]
    if missing:
        raise ValidationError(f"Model document is missing fields: {', '.join(missing)}")
    n = document["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValidationError(f"Model document field n must be a positive integer, got {n!r}")
    thetas = []
    for key in ("theta0", "theta1"):
        values = document[key]
        if not isinstance(values, list):
            raise ValidationError(f"Model document field {key} must be a list")
        if len(values) != n:
            raise ValidationError(f"Model document field {key} has {len(values)} entries, n = {n}")
        thetas.append(tuple(_as_float(f"{key}[{i}]", v) for i, v in enumerate(values)))
    return NaiveBayesModel(
        prior0=_as_float("prior0", document["prior0"]), theta0=thetas[0], theta1=thetas[1])


def loads_model(text: str) -> NaiveBayesModel:
    try:
        document = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ValidationError(f"Malformed model document: {e}") from e
    return model_from_dict(document)


def save_model(model: NaiveBayesModel, path: Union[str, os.PathLike]) -> None:
    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write(dumps_model(model))
    except OSError as e:
        raise ValidationError(f"Cannot write model document {path}: {e.strerror}") from e


def load_model(path: Union[str, os.PathLike]) -> NaiveBayesModel:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise ValidationError(f"Cannot read model document {path}: {e.strerror}") from e
    return loads_model(text)
