"""Reading and writing symbolic datasets.

Datasets are JSON documents::

    {
      "format": "symbolic-dataset",
      "version": 1,
      "variables": [
        {"name": "Y1", "kind": "histogram",
         "cells": [[[10, 20, 0.4], [20, 30, 0.6]],
                   [[50, 60, 0.2], [60, 70, 0.8]]]},
        {"name": "X", "kind": "interval", "cells": [[0, 2], [4, 6]]}
      ]
    }

An interval cell is ``[lower, upper]``; a histogram cell is a list of
``[lower, upper, weight]`` rows.  Cell counts may differ between histograms.
"""

from __future__ import annotations

import json
import math
from importlib import resources
from pathlib import Path

from .errors import SymbolicDataError
from .model import (
    HISTOGRAM,
    INTERVAL,
    Histogram,
    HistogramBin,
    Interval,
    SymbolicDataset,
    SymbolicVariable,
    validate_histogram,
)

FORMAT_NAME = "symbolic-dataset"
FORMAT_VERSION = 1

BUNDLED = {
    "ex_pulse": "ex_pulse.json",
    "ex1": "ex1.json",
    "ex2": "ex2.json",
}


class DatasetSyntaxError(SymbolicDataError):
    """The document is not a well-formed dataset."""

    def __init__(self, message: str, location: str | None = None, line: int | None = None,
                 column: int | None = None):
        self.location = location
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}, column {column}")
        if location:
            where.append(location)
        super().__init__(f"{'; '.join(where)}: {message}" if where else message)


class DatasetValidationError(SymbolicDataError):
    """A cell parsed fine but fails domain validation."""

    def __init__(self, location: str, cause: SymbolicDataError):
        self.location = location
        self.cause = cause
        super().__init__(f"{location}: {type(cause).__name__}: {cause}")


def _number(x, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise DatasetSyntaxError(f"expected a number, got {json.dumps(x)}", where)
    x = float(x)
    if not math.isfinite(x):
        raise DatasetSyntaxError("numbers must be finite", where)
    return x


def _interval_cell(raw, where: str) -> Interval:
    if not isinstance(raw, list) or len(raw) != 2:
        raise DatasetSyntaxError("interval cell must be [lower, upper]", where)
    lo, hi = (_number(x, f"{where}[{j}]") for j, x in enumerate(raw))
    try:
        return Interval(lo, hi)
    except SymbolicDataError as exc:
        raise DatasetValidationError(where, exc) from exc


def _histogram_cell(raw, where: str) -> Histogram:
    if not isinstance(raw, list):
        raise DatasetSyntaxError("histogram cell must be a list of [lower, upper, weight]", where)
    bins = []
    try:
        for r, row in enumerate(raw):
            at = f"{where}[{r}]"
            if not isinstance(row, list) or len(row) != 3:
                raise DatasetSyntaxError("histogram bin must be [lower, upper, weight]", at)
            lo, hi, w = (_number(x, f"{at}[{j}]") for j, x in enumerate(row))
            try:
                bins.append(HistogramBin(Interval(lo, hi), w))
            except SymbolicDataError as exc:
                raise DatasetValidationError(at, exc) from exc
        return validate_histogram(bins)
    except (DatasetSyntaxError, DatasetValidationError):
        raise
    except SymbolicDataError as exc:
        raise DatasetValidationError(where, exc) from exc


def _variable(raw, where: str) -> SymbolicVariable:
    if not isinstance(raw, dict):
        raise DatasetSyntaxError("variable must be an object", where)
    name = raw.get("name")
    if not isinstance(name, str) or not name:
        raise DatasetSyntaxError("variable needs a non-empty string 'name'", where)
    kind = raw.get("kind")
    if kind not in (INTERVAL, HISTOGRAM):
        raise DatasetSyntaxError(f"'kind' must be {INTERVAL!r} or {HISTOGRAM!r}", f"{where}.kind")
    cells = raw.get("cells")
    if not isinstance(cells, list) or not cells:
        raise DatasetSyntaxError("'cells' must be a non-empty list", f"{where}.cells")
    parse_cell = _interval_cell if kind == INTERVAL else _histogram_cell
    parsed = [parse_cell(c, f"{where}.cells[{i}]") for i, c in enumerate(cells)]
    return SymbolicVariable(name, parsed)


def parse_dataset(text: str) -> SymbolicDataset:
    """Parse and validate a dataset document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DatasetSyntaxError(exc.msg, line=exc.lineno, column=exc.colno) from exc
    if not isinstance(doc, dict):
        raise DatasetSyntaxError("top level must be an object")
    if doc.get("format") != FORMAT_NAME:
        raise DatasetSyntaxError(f"'format' must be {FORMAT_NAME!r}", "format")
    if doc.get("version") != FORMAT_VERSION:
        raise DatasetSyntaxError(f"unsupported version {doc.get('version')!r}", "version")
    variables = doc.get("variables")
    if not isinstance(variables, list) or not variables:
        raise DatasetSyntaxError("'variables' must be a non-empty list", "variables")
    parsed = [_variable(v, f"variables[{j}]") for j, v in enumerate(variables)]
    try:
        return SymbolicDataset(parsed)
    except SymbolicDataError as exc:
        raise DatasetValidationError("variables", exc) from exc


def _dump_cell(cell) -> str:
    if isinstance(cell, Interval):
        return json.dumps([cell.lower, cell.upper])
    return json.dumps([list(t) for t in cell.triples()])


def serialize_dataset(d: SymbolicDataset) -> str:
    """Canonical text form; floats use shortest round-trip repr."""
    out = [
        "{",
        f'  "format": {json.dumps(FORMAT_NAME)},',
        f'  "version": {FORMAT_VERSION},',
        '  "variables": [',
    ]
    for j, v in enumerate(d.variables):
        cells = ",\n".join(f"        {_dump_cell(c)}" for c in v.cells)
        out += [
            "    {",
            f'      "name": {json.dumps(v.name)},',
            f'      "kind": {json.dumps(v.kind)},',
            '      "cells": [',
            cells,
            "      ]",
            "    }" + ("," if j < len(d.variables) - 1 else ""),
        ]
    out += ["  ]", "}", ""]
    return "\n".join(out)


def load_dataset(source: str | Path) -> SymbolicDataset:
    """Load a dataset from a file path or the name of a bundled example."""
    path = Path(source)
    if path.exists():
        return parse_dataset(path.read_text(encoding="utf-8"))
    if str(source) in BUNDLED:
        return bundled_dataset(str(source))
    raise FileNotFoundError(f"no such dataset file or bundled example: {source}")


def bundled_dataset(name: str) -> SymbolicDataset:
    ref = resources.files("symstats") / "data" / BUNDLED[name]
    return parse_dataset(ref.read_text(encoding="utf-8"))
