"""Interval- and histogram-valued cells, their moments and distribution functions.

An interval ``[a, b]`` is read as a uniform distribution on ``[a, b]``.  A
histogram is a contiguous partition of a bounded support into bins, each
carrying a probability mass spread uniformly over the bin.  Bins are
half-open ``[a, b)`` except the last one, which is closed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (
    DegenerateIntervalError,
    EmptyBinsError,
    InvalidIntervalError,
    KindMismatchError,
    LengthMismatchError,
    NegativeWeightError,
    NonContiguousError,
    OutOfRangeError,
    SymbolicDataError,
    WeightSumError,
    ZeroWidthMassError,
)

WEIGHT_SUM_TOL = 1e-9

INTERVAL = "interval"
HISTOGRAM = "histogram"


@dataclass(frozen=True)
class Interval:
    """Closed bounded interval ``[lower, upper]``."""

    lower: float
    upper: float

    def __post_init__(self):
        lo, hi = float(self.lower), float(self.upper)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise InvalidIntervalError(f"interval bounds must be finite, got [{lo}, {hi}]")
        if lo > hi:
            raise InvalidIntervalError(f"lower bound {lo} exceeds upper bound {hi}")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @property
    def width(self) -> float:
        return self.upper - self.lower

    @property
    def midpoint(self) -> float:
        return (self.lower + self.upper) / 2

    def shifted(self, c: float) -> Interval:
        return Interval(self.lower + c, self.upper + c)

    def scaled(self, s: float) -> Interval:
        lo, hi = self.lower * s, self.upper * s
        return Interval(min(lo, hi), max(lo, hi))


@dataclass(frozen=True)
class HistogramBin:
    interval: Interval
    weight: float

    @property
    def lower(self) -> float:
        return self.interval.lower

    @property
    def upper(self) -> float:
        return self.interval.upper


@dataclass(frozen=True)
class UnitMoments:
    """Mean and variance of a single cell's distribution."""

    mean: float
    variance: float


class Histogram:
    """A validated histogram description.

    Stored as ``n + 1`` bin edges and ``n`` raw weights.  Probabilities are
    the weights divided by their compensated sum, so a histogram whose
    weights add up to ``1 +- 1e-9`` behaves as an exact unit mass while the
    raw weights survive serialization unchanged.

    Use :func:`validate_histogram` or :meth:`from_triples` to build one.
    """

    __slots__ = ("_edges", "_weights", "_total", "_probs", "_cum")

    def __init__(self, edges: Sequence[float], weights: Sequence[float]):
        edges = np.array(edges, dtype=float)
        weights = np.array(weights, dtype=float)
        if weights.size == 0:
            raise EmptyBinsError("a histogram needs at least one bin")
        if edges.shape != (weights.size + 1,):
            raise ValueError("expected len(edges) == len(weights) + 1")
        if not np.all(np.isfinite(edges)):
            raise InvalidIntervalError("bin bounds must be finite")
        if not np.all(np.isfinite(weights)):
            raise WeightSumError("bin weights must be finite")
        widths = np.diff(edges)
        if np.any(widths < 0):
            h = int(np.argmax(widths < 0))
            raise InvalidIntervalError(f"bin {h} has lower bound above upper bound")
        if np.any(weights < 0):
            h = int(np.argmax(weights < 0))
            raise NegativeWeightError(f"bin {h} has negative weight {weights[h]}")
        massive_point = (widths == 0) & (weights > 0)
        if np.any(massive_point):
            h = int(np.argmax(massive_point))
            raise ZeroWidthMassError(f"bin {h} has zero width but weight {weights[h]}")
        total = math.fsum(weights)
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise WeightSumError(f"bin weights sum to {total!r}, expected 1")

        probs = weights / total
        cum = np.empty(edges.size)
        cum[0] = 0.0
        np.cumsum(probs, out=cum[1:])
        cum[-1] = 1.0
        np.minimum(cum, 1.0, out=cum)
        for arr in (edges, weights, probs, cum):
            arr.flags.writeable = False
        self._edges = edges
        self._weights = weights
        self._total = total
        self._probs = probs
        self._cum = cum

    @classmethod
    def from_triples(cls, triples: Iterable[Sequence[float]]) -> Histogram:
        """Build from ``(lower, upper, weight)`` rows, the usual tabular layout."""
        bins = [HistogramBin(Interval(lo, hi), float(w)) for lo, hi, w in triples]
        return validate_histogram(bins)

    # --- accessors -------------------------------------------------------

    @property
    def edges(self) -> np.ndarray:
        return self._edges

    @property
    def lowers(self) -> np.ndarray:
        return self._edges[:-1]

    @property
    def uppers(self) -> np.ndarray:
        return self._edges[1:]

    @property
    def weights(self) -> np.ndarray:
        """Raw weights as given at construction."""
        return self._weights

    @property
    def probabilities(self) -> np.ndarray:
        """Weights normalized by their exact sum."""
        return self._probs

    @property
    def cumulative(self) -> np.ndarray:
        """CDF at each edge; ``cumulative[h]`` is the mass below bin ``h``."""
        return self._cum

    @property
    def support(self) -> Interval:
        return Interval(self._edges[0], self._edges[-1])

    @property
    def bins(self) -> tuple[HistogramBin, ...]:
        return tuple(
            HistogramBin(Interval(lo, hi), float(w))
            for lo, hi, w in zip(self.lowers, self.uppers, self._weights)
        )

    def triples(self) -> list[tuple[float, float, float]]:
        return [
            (float(lo), float(hi), float(w))
            for lo, hi, w in zip(self.lowers, self.uppers, self._weights)
        ]

    def __len__(self) -> int:
        return self._weights.size

    def __eq__(self, other):
        if not isinstance(other, Histogram):
            return NotImplemented
        return np.array_equal(self._edges, other._edges) and np.array_equal(
            self._weights, other._weights
        )

    def __hash__(self):
        return hash((self._edges.tobytes(), self._weights.tobytes()))

    def __repr__(self):
        rows = ", ".join(f"([{lo:g}, {hi:g}], {w:g})" for lo, hi, w in self.triples()[:6])
        more = ", ..." if len(self) > 6 else ""
        return f"Histogram({rows}{more})"

    def shifted(self, c: float) -> Histogram:
        return Histogram(self._edges + c, self._weights)

    def scaled(self, s: float) -> Histogram:
        if s > 0:
            return Histogram(self._edges * s, self._weights)
        if s < 0:
            return Histogram(self._edges[::-1] * s, self._weights[::-1])
        raise SymbolicDataError("cannot scale a histogram by zero")


Cell = Union[Interval, Histogram]


def cell_kind(cell: Cell) -> str:
    if isinstance(cell, Interval):
        return INTERVAL
    if isinstance(cell, Histogram):
        return HISTOGRAM
    raise TypeError(f"not a symbolic cell: {cell!r}")


def validate_histogram(bins: Sequence[HistogramBin]) -> Histogram:
    """Check raw bins and assemble a :class:`Histogram`.

    Bins are sorted by lower bound first; consecutive bins must then share
    their boundary exactly.
    """
    bins = list(bins)
    if not bins:
        raise EmptyBinsError("a histogram needs at least one bin")
    bins.sort(key=lambda b: (b.interval.lower, b.interval.upper))
    for h, (left, right) in enumerate(zip(bins, bins[1:])):
        if left.interval.upper != right.interval.lower:
            kind = "gap" if left.interval.upper < right.interval.lower else "overlap"
            raise NonContiguousError(
                f"{kind} between bin {h} (upper {left.interval.upper}) "
                f"and bin {h + 1} (lower {right.interval.lower})"
            )
    edges = [bins[0].interval.lower] + [b.interval.upper for b in bins]
    return Histogram(edges, [b.weight for b in bins])


def interval_moments(x: Interval) -> UnitMoments:
    """Mean and variance of the uniform distribution on ``x``."""
    w = x.upper - x.lower
    return UnitMoments((x.lower + x.upper) / 2, w * w / 12)


def histogram_moments(h: Histogram) -> UnitMoments:
    """Mean and variance of the uniform-per-bin density.

    The variance is accumulated in centered form, within-bin spread plus
    spread of bin midpoints around the mean, which keeps it non-negative
    and free of cancellation.
    """
    p = h.probabilities
    mids = (h.lowers + h.uppers) / 2
    widths = h.uppers - h.lowers
    mean = math.fsum(p * mids)
    dev = mids - mean
    variance = math.fsum(p * (dev * dev + widths * widths / 12))
    return UnitMoments(mean, variance)


def cell_moments(cell: Cell) -> UnitMoments:
    if isinstance(cell, Interval):
        return interval_moments(cell)
    return histogram_moments(cell)


def cdf(h: Histogram, y: float) -> float:
    """Piecewise-linear distribution function of ``h`` at ``y``."""
    edges = h.edges
    if y < edges[0]:
        return 0.0
    if y >= edges[-1]:
        return 1.0
    # last bin whose lower edge is <= y; skips zero-width bins sitting on y
    ell = int(np.searchsorted(edges, y, side="right")) - 1
    lo, hi = edges[ell], edges[ell + 1]
    frac = (y - lo) / (hi - lo)
    return min(1.0, float(h.cumulative[ell] + h.probabilities[ell] * frac))


def quantile(h: Histogram, t: float) -> float:
    """Inverse of :func:`cdf`.

    At cumulative breakpoints the leftmost bin with positive mass wins;
    zero-mass bins are never selected.
    """
    if not 0.0 <= t <= 1.0:
        raise OutOfRangeError(f"probability level must lie in [0, 1], got {t}")
    edges, cum, p = h.edges, h.cumulative, h.probabilities
    if t == 0.0:
        return float(edges[0])
    if t == 1.0:
        return float(edges[-1])
    # first bin whose upper cumulative reaches t
    ell = int(np.searchsorted(cum[1:], t, side="left"))
    n = p.size
    ell = min(ell, n - 1)
    while ell < n - 1 and p[ell] == 0.0:
        ell += 1
    while p[ell] == 0.0:
        ell -= 1
    lo, hi = float(edges[ell]), float(edges[ell + 1])
    y = lo + (t - cum[ell]) / p[ell] * (hi - lo)
    return float(min(max(y, lo), hi))


def bisect_bins(h: Histogram) -> Histogram:
    """Split every bin at its midpoint, halving its weight.

    The distribution is unchanged; only its encoding gets finer.
    """
    edges = h.edges
    mids = (edges[:-1] + edges[1:]) / 2
    new_edges = np.empty(2 * edges.size - 1)
    new_edges[0::2] = edges
    new_edges[1::2] = mids
    half = h.weights / 2
    return Histogram(new_edges, np.repeat(half, 2))


def interval_as_histogram(x: Interval) -> Histogram:
    if x.lower == x.upper:
        raise DegenerateIntervalError(
            f"point interval [{x.lower}, {x.upper}] has no uniform density"
        )
    return Histogram([x.lower, x.upper], [1.0])


@dataclass(frozen=True)
class SymbolicVariable:
    """A named column of cells, all intervals or all histograms."""

    name: str
    cells: tuple[Cell, ...]

    def __post_init__(self):
        cells = tuple(self.cells)
        if not cells:
            raise SymbolicDataError(f"variable {self.name!r} has no cells")
        kinds = {cell_kind(c) for c in cells}
        if len(kinds) > 1:
            raise KindMismatchError(
                f"variable {self.name!r} mixes interval and histogram cells"
            )
        object.__setattr__(self, "cells", cells)

    @property
    def n(self) -> int:
        return len(self.cells)

    @property
    def kind(self) -> str:
        return cell_kind(self.cells[0])

    def moments(self) -> list[UnitMoments]:
        return [cell_moments(c) for c in self.cells]

    def map(self, fn, name: str | None = None) -> SymbolicVariable:
        """New variable with ``fn`` applied to every cell."""
        return SymbolicVariable(self.name if name is None else name, [fn(c) for c in self.cells])

    def __len__(self):
        return len(self.cells)


@dataclass(frozen=True)
class SymbolicDataset:
    variables: tuple[SymbolicVariable, ...]

    def __post_init__(self):
        variables = tuple(self.variables)
        if not variables:
            raise SymbolicDataError("a dataset needs at least one variable")
        names = [v.name for v in variables]
        dupes = sorted({x for x in names if names.count(x) > 1})
        if dupes:
            raise SymbolicDataError(f"duplicate variable names: {', '.join(dupes)}")
        sizes = {v.n for v in variables}
        if len(sizes) > 1:
            raise LengthMismatchError(
                "variables describe different numbers of units: "
                + ", ".join(f"{v.name}={v.n}" for v in variables)
            )
        object.__setattr__(self, "variables", variables)

    @property
    def n(self) -> int:
        return self.variables[0].n

    @property
    def names(self) -> list[str]:
        return [v.name for v in self.variables]

    def __getitem__(self, name: str) -> SymbolicVariable:
        for v in self.variables:
            if v.name == name:
                return v
        raise KeyError(name)

    def __contains__(self, name) -> bool:
        return any(v.name == name for v in self.variables)
