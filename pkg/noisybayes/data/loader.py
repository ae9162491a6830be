# Licensed under the MIT License.
"""Dataset CSV ingestion.

The file has a header row, one column named ``class`` holding 0/1 labels and every other column
a binary feature. Cells are comma-separated and unquoted.
"""

import csv
import logging
import os
from typing import List

from noisybayes.common.errors import ValidationError
from noisybayes.model import Dataset, TestPoint

logger = logging.getLogger(__name__)

LABEL_COLUMN = "class"
BUNDLED_SAMPLE = os.path.join(os.path.dirname(os.path.abspath(__file__)), "house_votes_sample.csv")


def _parse_bit(cell: str, row: int, column: str) -> int:
    value = cell.strip()
    if value not in ("0", "1"):
        raise ValidationError(f"row {row}, column {column!r}: expected 0 or 1, got {cell!r}")
    return int(value)


def load_dataset(path: str) -> Dataset:
    """Read a dataset; feature order is the header order with ``class`` removed.

    Rows are numbered from 1 for the header, so the first data row is row 2.
    """
    if not os.path.isfile(path):
        raise ValidationError(f"Dataset file not found: {path}")
    with open(path, newline="") as f:
        rows = list(csv.reader(f, quoting=csv.QUOTE_NONE))
    rows = [r for r in rows if any(cell.strip() for cell in r)]
    if not rows:
        raise ValidationError(f"{path} is empty")
    for row_number, row in enumerate(rows, start=1):
        if any('"' in cell for cell in row):
            raise ValidationError(f"row {row_number}: quoted cells are not supported")

    header = [h.strip() for h in rows[0]]
    if LABEL_COLUMN not in header:
        raise ValidationError(f"{path}: no {LABEL_COLUMN!r} column in header {header}")
    if header.count(LABEL_COLUMN) > 1:
        raise ValidationError(f"{path}: {LABEL_COLUMN!r} appears more than once in the header")
    label_at = header.index(LABEL_COLUMN)
    feature_names = [h for i, h in enumerate(header) if i != label_at]
    if not feature_names:
        raise ValidationError(f"{path}: no feature columns")

    points: List[TestPoint] = []
    labels: List[int] = []
    for row_number, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ValidationError(
                f"row {row_number}: {len(row)} cells, the header has {len(header)}")
        bits = [
            _parse_bit(cell, row_number, header[i]) for i, cell in enumerate(row) if i != label_at
        ]
        labels.append(_parse_bit(row[label_at], row_number, LABEL_COLUMN))
        points.append(TestPoint(tuple(bits)))
    if not points:
        raise ValidationError(f"{path}: header only, no data rows")

    logger.debug(f"Loaded {len(points)} rows with {len(feature_names)} features from {path}")
    return Dataset(tuple(points), tuple(labels), tuple(feature_names))


def save_dataset(data: Dataset, path: str) -> None:
    names = data.feature_names or tuple(f"x{i}" for i in range(data.n))
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(list(names) + [LABEL_COLUMN])
        for point, label in zip(data.points, data.labels):
            writer.writerow(list(point.bits) + [label])


def load_bundled_sample() -> Dataset:
    """The bundled 16-feature sample in the house-votes layout."""
    return load_dataset(BUNDLED_SAMPLE)
