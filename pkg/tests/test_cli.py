import csv
import io
import json
import subprocess
import sys

import pytest

from symstats.cli import run_cli

EX1 = "ex1"


def value(result, column):
    rows = list(csv.DictReader(io.StringIO(result.stdout)))
    assert len(rows) == 1
    return rows[0][column]


def test_quantile_median():
    r = run_cli(["quantile", "ex_pulse", "--var", "pulse", "--unit", "1", "--t", "0.5"])
    assert r.status == 0
    assert "102.5" in r.stdout.split()


def test_billard_cov():
    r = run_cli(["cov", EX1, "--x", "Y1", "--y", "Y2", "--estimator", "billard", "--format", "csv"])
    assert r.status == 0
    assert value(r, "covariance") == "449.333333333"


def test_means_cov():
    r = run_cli(["cov", EX1, "--x", "Y1", "--y", "Y2", "--estimator", "means", "--format", "csv"])
    assert value(r, "covariance") == "441"


def test_ex2_cov():
    r = run_cli(["cov", "ex2", "--x", "Y1", "--y", "Y2", "--estimator", "billard",
                 "--format", "json-lines"])
    assert json.loads(r.stdout)["covariance"] == pytest.approx(445.166666667, abs=1e-9)


def test_stats_table():
    r = run_cli(["stats", EX1])
    assert r.status == 0
    lines = r.stdout.splitlines()
    assert lines[0].split() == ["variable", "kind", "n", "mean", "variance", "ssw", "ssb", "sst"]
    assert lines[1].split()[3:5] == ["42", "469.333333333"]
    assert len(lines) == 3


def test_stats_single_var_json():
    r = run_cli(["stats", EX1, "--var", "Y2", "--format", "json-lines"])
    rec = json.loads(r.stdout)
    assert rec["variable"] == "Y2" and rec["n"] == 2


def test_refine_one_sided():
    r = run_cli(["refine", EX1, "--x", "Y1", "--y", "Y2", "--splits", "1", "--side", "y",
                 "--format", "csv"])
    rows = list(csv.DictReader(io.StringIO(r.stdout)))
    assert [row["cov"] for row in rows] == ["449.333333333", "445.166666667"]


def test_refine_five():
    r = run_cli(["refine", EX1, "--x", "Y1", "--y", "Y2", "--splits", "5", "--format", "json-lines"])
    recs = [json.loads(line) for line in r.stdout.splitlines()]
    assert len(recs) == 6
    assert abs(recs[-1]["cov"] - 441) < 0.01


def test_diagnose():
    r = run_cli(["diagnose", EX1, "--var", "Y1", "--estimator", "billard", "--format", "csv"])
    assert value(r, "discrepancy") == "-40"


def test_zero_variance_correlation(tmp_path):
    p = tmp_path / "d.json"
    p.write_text(json.dumps({"format": "symbolic-dataset", "version": 1, "variables": [
        {"name": "X", "kind": "interval", "cells": [[0, 1], [2, 3]]},
        {"name": "C", "kind": "interval", "cells": [[1, 1], [1, 1]]}]}))
    r = run_cli(["cov", str(p), "--x", "X", "--y", "C", "--estimator", "bg", "--format", "json-lines"])
    assert r.status == 0
    assert json.loads(r.stdout)["correlation"] is None


def test_deterministic_output():
    args = ["refine", EX1, "--x", "Y1", "--y", "Y2", "--splits", "3"]
    assert run_cli(args).stdout == run_cli(args).stdout


@pytest.mark.parametrize(
    "args",
    [
        [],
        ["bogus", EX1],
        ["cov", EX1, "--x", "Y1"],
        ["cov", EX1, "--x", "Y1", "--y", "Y2", "--estimator", "nope"],
        ["cov", EX1, "--x", "Y1", "--y", "Z", "--estimator", "bg"],
        ["quantile", "ex_pulse", "--var", "pulse", "--unit", "2", "--t", "0.5"],
        ["quantile", "ex_pulse", "--var", "pulse", "--unit", "1", "--t", "1.5"],
        ["quantile", "ex_pulse", "--var", "pulse", "--unit", "1", "--t", "abc"],
        ["refine", EX1, "--x", "Y1", "--y", "Y2", "--splits", "21"],
        ["stats", EX1, "--format", "xml"],
    ],
)
def test_usage_errors(args):
    r = run_cli(args)
    assert r.status == 1
    assert r.stderr
    assert "Traceback" not in r.stderr


MALFORMED = {
    "syntax.json": '{"format": "symbolic-dataset", ',
    "version.json": '{"format": "symbolic-dataset", "version": 9, "variables": []}',
    "weights.json": json.dumps({"format": "symbolic-dataset", "version": 1, "variables": [
        {"name": "H", "kind": "histogram", "cells": [[[0, 1, 0.5], [1, 2, 0.4]]]}]}),
    "gap.json": json.dumps({"format": "symbolic-dataset", "version": 1, "variables": [
        {"name": "H", "kind": "histogram", "cells": [[[0, 1, 0.5], [2, 3, 0.5]]]}]}),
    "bounds.json": json.dumps({"format": "symbolic-dataset", "version": 1, "variables": [
        {"name": "H", "kind": "interval", "cells": [[3, 1]]}]}),
}


@pytest.mark.parametrize("name", sorted(MALFORMED))
def test_data_errors(tmp_path, name):
    p = tmp_path / name
    p.write_text(MALFORMED[name])
    r = run_cli(["stats", str(p)])
    assert r.status == 2
    assert "Traceback" not in r.stderr
    assert "data error" in r.stderr


def test_missing_file_is_data_error():
    r = run_cli(["stats", "/no/such/file.json"])
    assert r.status == 2


def test_kind_mismatch_is_data_error(tmp_path):
    p = tmp_path / "d.json"
    p.write_text(json.dumps({"format": "symbolic-dataset", "version": 1, "variables": [
        {"name": "X", "kind": "interval", "cells": [[0, 1]]},
        {"name": "H", "kind": "histogram", "cells": [[[0, 1, 1.0]]]}]}))
    r = run_cli(["cov", str(p), "--x", "X", "--y", "H", "--estimator", "billard"])
    assert r.status == 2


def test_help():
    assert run_cli(["--help"]).status == 0


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "symstats", "cov", EX1, "--x", "Y1", "--y", "Y2",
         "--estimator", "means", "--format", "csv"],
        capture_output=True, text=True, check=True,
    )
    assert out.stdout.splitlines()[1].split(",")[7] == "441"
