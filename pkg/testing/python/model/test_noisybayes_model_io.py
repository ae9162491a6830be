import os

import numpy as np
import pytest

import noisybayes.testing
from noisybayes.common.errors import ValidationError
from noisybayes.model import NaiveBayesModel, dumps_model, load_model, loads_model, save_model


@pytest.mark.parametrize("seed", range(10))
def test_model_round_trip(seed):
    model = noisybayes.testing.random_model(7, np.random.default_rng(seed))
    assert loads_model(dumps_model(model)) == model


def test_model_file_round_trip(tmp_path):
    model = NaiveBayesModel(0.5, (0.1, 0.11), (0.9, 0.89))
    path = os.path.join(tmp_path, "model.yaml")
    save_model(model, path)
    assert load_model(path) == model


def test_document_fields():
    text = dumps_model(NaiveBayesModel(0.25, (0.1,), (0.9,)))
    for key in ("n:", "prior0:", "theta0:", "theta1:"):
        assert key in text


@pytest.mark.parametrize(
    "document",
    [
        "n: 1\nprior0: 0.5\ntheta0: [1.0]\ntheta1: [0.5]\n",
        "n: 2\nprior0: 0.5\ntheta0: [0.3, 0.4]\ntheta1: [0.5]\n",
        "n: 1\nprior0: 0.5\ntheta0: [0.3]\n",
        "n: 1\nprior0: half\ntheta0: [0.3]\ntheta1: [0.5]\n",
        "n: [1\n",
        "- just a list\n",
    ],
)
def test_malformed_documents_are_rejected(document):
    with pytest.raises(ValidationError):
        loads_model(document)


if __name__ == "__main__":
    noisybayes.testing.main()
