import numpy as np
import pytest
from hypothesis import strategies as st

from symstats import Histogram, Interval, SymbolicVariable

PULSE_ROWS = [(80, 90, 0.1), (90, 100, 0.3), (100, 110, 0.4), (110, 120, 0.2)]
EX1_ROWS = [
    [(10, 20, 0.4), (20, 30, 0.6)],
    [(50, 60, 0.2), (60, 70, 0.8)],
]
EX2_Y2_ROWS = [
    [(10, 15, 0.2), (15, 20, 0.2), (20, 25, 0.3), (25, 30, 0.3)],
    [(50, 55, 0.1), (55, 60, 0.1), (60, 65, 0.4), (65, 70, 0.4)],
]


def hist_var(name, cells):
    return SymbolicVariable(name, [Histogram.from_triples(rows) for rows in cells])


def interval_var(name, pairs):
    return SymbolicVariable(name, [Interval(a, b) for a, b in pairs])


@pytest.fixture
def pulse():
    return Histogram.from_triples(PULSE_ROWS)


@pytest.fixture
def ex1():
    return hist_var("Y1", EX1_ROWS), hist_var("Y2", EX1_ROWS)


@pytest.fixture
def ex2():
    return hist_var("Y1", EX1_ROWS), hist_var("Y2", EX2_Y2_ROWS)


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


# --- random data -----------------------------------------------------------------

bound = st.floats(min_value=-100, max_value=100, allow_nan=False)


@st.composite
def intervals(draw):
    a, b = draw(bound), draw(bound)
    return Interval(min(a, b), max(a, b))


@st.composite
def histogram_rows(draw, max_bins=6):
    k = draw(st.integers(1, max_bins))
    start = draw(bound)
    widths = draw(st.lists(st.floats(0.01, 20), min_size=k, max_size=k))
    masses = draw(st.lists(st.integers(0, 10), min_size=k, max_size=k).filter(any))
    total = sum(masses)
    edges = np.concatenate([[start], start + np.cumsum(widths)])
    return [(edges[h], edges[h + 1], masses[h] / total) for h in range(k)]


@st.composite
def histograms(draw, max_bins=6):
    return Histogram.from_triples(draw(histogram_rows(max_bins)))


@st.composite
def interval_variables(draw, max_n=50, n=None):
    n = draw(st.integers(1, max_n)) if n is None else n
    return SymbolicVariable("X", draw(st.lists(intervals(), min_size=n, max_size=n)))


@st.composite
def histogram_variables(draw, max_n=8, n=None):
    n = draw(st.integers(1, max_n)) if n is None else n
    return SymbolicVariable("H", draw(st.lists(histograms(), min_size=n, max_size=n)))


@st.composite
def variable_pairs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    make = draw(st.sampled_from([interval_variables, histogram_variables]))
    return draw(make(n=n)), draw(make(n=n))


def random_interval_variable(rng, max_n=50, n=None):
    n = int(rng.integers(1, max_n + 1)) if n is None else n
    ends = np.sort(rng.uniform(-100, 100, size=(n, 2)), axis=1)
    return SymbolicVariable("X", [Interval(a, b) for a, b in ends])


def random_histogram_rows(rng, max_bins=4):
    k = int(rng.integers(1, max_bins + 1))
    start = rng.uniform(-50, 50)
    edges = start + np.concatenate([[0.0], np.cumsum(rng.uniform(0.5, 20, size=k))])
    w = rng.uniform(0.05, 1, size=k)
    w /= w.sum()
    return [(edges[h], edges[h + 1], w[h]) for h in range(k)]


# --- acceptance summary ----------------------------------------------------------

_criteria: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = dict(report.user_properties).get("criterion")
    if marker is None:
        return
    key, title = marker
    ok, seen = _criteria.get(key, (True, title))
    _criteria[key] = (ok and report.passed, seen)


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            item.user_properties.append(("criterion", tuple(m.args)))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria):
        ok, title = _criteria[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {title}")
