"""Symbolic sample mean and variance of a single variable.

Each cell is a distribution; the variable as a whole is their equal-weight
mixture.  Mean and variance are those of the mixture, with the variance in
population form (divided by ``n``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import INTERVAL, SymbolicVariable


@dataclass(frozen=True)
class UnivariateReport:
    n: int
    mean: float
    variance: float
    ssw: float
    ssb: float
    sst: float


def symbolic_mean(v: SymbolicVariable) -> float:
    return math.fsum(m.mean for m in v.moments()) / v.n


def variance_decomposition(v: SymbolicVariable) -> UnivariateReport:
    """Split total variation into within-cell and between-cell parts.

    ``ssw`` sums the cell variances, ``ssb`` the squared deviations of the
    cell means from the overall mean, and ``variance = (ssw + ssb) / n``.
    """
    moments = v.moments()
    n = len(moments)
    mean = math.fsum(m.mean for m in moments) / n
    ssw = math.fsum(m.variance for m in moments)
    devs = [m.mean - mean for m in moments]
    ssb = math.fsum(d * d for d in devs)
    sst = ssw + ssb
    return UnivariateReport(n=n, mean=mean, variance=sst / n, ssw=ssw, ssb=ssb, sst=sst)


def symbolic_variance(v: SymbolicVariable) -> float:
    return variance_decomposition(v).variance


def mixture_variance(v: SymbolicVariable) -> float:
    """Variance as mean of second moments minus squared mean.

    Same quantity as :func:`symbolic_variance`, evaluated the uncentered way.
    """
    moments = v.moments()
    n = len(moments)
    mean = math.fsum(m.mean for m in moments) / n
    second = math.fsum(m.mean * m.mean + m.variance for m in moments) / n
    return second - mean * mean


def closed_form_variance(v: SymbolicVariable) -> float:
    """Variance straight from the cell bounds, no per-cell moments.

    Intervals use ``(1/3n) sum(b^2 + ab + a^2) - (1/4n^2) [sum(a + b)]^2``;
    histograms weight each bin's ``a^2 + ab + b^2`` by its mass.
    """
    n = v.n
    if v.kind == INTERVAL:
        second = math.fsum(c.lower**2 + c.lower * c.upper + c.upper**2 for c in v.cells)
        total = math.fsum(c.lower + c.upper for c in v.cells)
        return second / (3 * n) - total * total / (4 * n * n)
    second_terms = []
    mid_terms = []
    for h in v.cells:
        a, b, p = h.lowers, h.uppers, h.probabilities
        second_terms.extend(p * (a * a + a * b + b * b))
        mid_terms.extend(p * (a + b))
    mean = math.fsum(mid_terms) / (2 * n)
    return math.fsum(second_terms) / (3 * n) - mean * mean
