# Licensed under the MIT License.
"""Result tables and their CSV / YAML emission.

Floats are written with 12 significant digits and nothing time-dependent is emitted, so a
rerun with the same inputs produces the same bytes.
"""

import csv
import io
import logging
import math
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import yaml
from tabulate import tabulate

from noisybayes.common.errors import ValidationError

logger = logging.getLogger(__name__)

FLOAT_FORMAT = ".12g"
FORMATS = ("csv", "yaml")


@dataclass
class ResultTable:
    """Rows of one experiment; ``details`` is carried only by the YAML form."""
    columns: Tuple[str, ...]
    rows: List[Tuple[Any, ...]] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    def append(self, *row: Any) -> None:
        assert len(row) == len(self.columns), f"row {row} does not match columns {self.columns}"
        self.rows.append(tuple(row))

    def column(self, name: str) -> List[Any]:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]

    def where(self, **criteria: Any) -> List[Tuple[Any, ...]]:
        index = {name: self.columns.index(name) for name in criteria}
        return [
            row for row in self.rows if all(row[index[k]] == v for k, v in criteria.items())
        ]


def format_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value, FLOAT_FORMAT)
    return str(value)


def _round_floats(value: Any) -> Any:
    if isinstance(value, float) and math.isfinite(value):
        return float(format(value, FLOAT_FORMAT))
    if isinstance(value, dict):
        return {k: _round_floats(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round_floats(v) for v in value]
    return value


def to_csv(table: ResultTable) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([format_cell(v) for v in row])
    return buffer.getvalue()


def to_yaml(table: ResultTable) -> str:
    document = {
        "columns": list(table.columns),
        "rows": [dict(zip(table.columns, _round_floats(list(row)))) for row in table.rows],
    }
    if table.details:
        document["details"] = _round_floats(table.details)
    return yaml.safe_dump(document, sort_keys=False, default_flow_style=None)


def render(table: ResultTable, fmt: str = "csv") -> str:
    if fmt == "csv":
        return to_csv(table)
    elif fmt == "yaml":
        return to_yaml(table)
    else:
        raise ValidationError(f"Unknown result format {fmt!r}; expected one of {FORMATS}")


def emit_results(table: ResultTable, fmt: str = "csv", path: Optional[str] = None) -> str:
    """Write ``table`` to ``path`` (standard output when ``None`` or ``"-"``) and return the text."""
    text = render(table, fmt)
    if path is None or path == "-":
        sys.stdout.write(text)
        return text
    try:
        with open(path, "w", newline="") as f:
            f.write(text)
    except OSError as err:
        raise ValidationError(f"Cannot write results to {path}: {err.strerror}") from err
    logger.info(f"Wrote {len(table.rows)} rows to {path}")
    return text


def parse_csv(text: str) -> Tuple[List[str], List[List[str]]]:
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


def pretty(table: ResultTable, headers: Optional[Sequence[str]] = None) -> str:
    """Console rendering of a table."""
    return tabulate([[format_cell(v) for v in row] for row in table.rows],
                    headers=list(headers or table.columns),
                    tablefmt="github")
