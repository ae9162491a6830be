import os

import yaml

import noisybayes.testing
from noisybayes.experiments import ResultTable, emit_results, parse_csv, render


def sample_table():
    table = ResultTable(("k", "method", "mean_abs_err", "max_abs_err"))
    table.append(2, "approx_shift", 1.0 / 3.0, 0.5)
    table.append(5, "hybrid2", 1e-17, float("inf"))
    table.details = {"eps": 0.01, "points": 50}
    return table


def test_csv_parses_back():
    header, rows = parse_csv(render(sample_table(), "csv"))
    assert header == ["k", "method", "mean_abs_err", "max_abs_err"]
    assert rows[0] == ["2", "approx_shift", "0.333333333333", "0.5"]
    assert rows[1][3] == "inf"
    assert float(rows[1][2]) == 1e-17


def test_yaml_document():
    document = yaml.safe_load(render(sample_table(), "yaml"))
    assert document["columns"] == ["k", "method", "mean_abs_err", "max_abs_err"]
    assert document["rows"][0]["mean_abs_err"] == 0.333333333333
    assert document["details"]["points"] == 50


def test_empty_table_is_header_only():
    table = ResultTable(("budget", "strategy", "change_prob", "ratio_vs_uniform"))
    assert render(table, "csv") == "budget,strategy,change_prob,ratio_vs_uniform\n"


def test_output_is_byte_identical(tmp_path):
    first = os.path.join(tmp_path, "first.csv")
    second = os.path.join(tmp_path, "second.csv")
    emit_results(sample_table(), "csv", first)
    emit_results(sample_table(), "csv", second)
    with open(first, "rb") as a, open(second, "rb") as b:
        assert a.read() == b.read()


if __name__ == "__main__":
    noisybayes.testing.main()
