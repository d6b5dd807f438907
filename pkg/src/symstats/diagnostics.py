"""Checks that expose inconsistencies in the covariance definitions.

:func:`check_problem1` pairs a variable with itself and compares the
cross-variation against ``n`` times its variance; a coherent covariance
would make them equal.  :func:`refinement_experiment` re-encodes histograms
with ever finer bins (same density) and tracks how the bin-pair covariance
drifts toward the covariance of the unit means.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .bivariate import Estimator, cov_of_means, covariance
from .errors import KindMismatchError, TooManySplitsError
from .model import HISTOGRAM, SymbolicVariable, bisect_bins
from .univariate import symbolic_mean, variance_decomposition

MAX_SPLITS = 20


@dataclass(frozen=True)
class Problem1Report:
    estimator: Estimator
    variance1: float
    variance2: float
    cst: float
    n_times_variance: float
    discrepancy: float


def check_problem1(v: SymbolicVariable, estimator: Estimator | str) -> Problem1Report:
    """Compare ``CST(v, v)`` with ``n * S^2(v)``.

    ``n_times_variance`` is the total sum of squares ``ssw + ssb``.  The
    discrepancy is accumulated exactly from the unrounded parts
    ``csw + csb - ssw - ssb``, so it is exactly ``-ssw`` under
    ``Estimator.BG`` and exactly zero for comonotone intervals.
    """
    estimator = Estimator(estimator)
    uni = variance_decomposition(v)
    report = covariance(v, v, estimator)
    return Problem1Report(
        estimator=estimator,
        variance1=uni.variance,
        variance2=uni.variance,
        cst=report.cst,
        n_times_variance=uni.sst,
        discrepancy=math.fsum([report.csw, report.csb, -uni.ssw, -uni.ssb]),
    )


class Side(str, enum.Enum):
    BOTH = "both"
    X = "x"
    Y = "y"


@dataclass(frozen=True)
class RefinementStep:
    k: int
    cov: float
    cov_means: float
    means: tuple[float, float]
    variances: tuple[float, float]
    bins: tuple[int, int]

    @property
    def gap(self) -> float:
        return abs(self.cov - self.cov_means)


@dataclass
class RefinementTrace:
    side: Side
    steps: list[RefinementStep] = field(default_factory=list)

    @property
    def gaps(self) -> list[float]:
        return [s.gap for s in self.steps]

    def is_converging(self) -> bool:
        """True when ``|cov_k - cov_means|`` never increases."""
        g = self.gaps
        return all(b <= a for a, b in zip(g, g[1:]))


def _step(k, v1, v2) -> RefinementStep:
    rep = covariance(v1, v2, Estimator.BILLARD2008)
    return RefinementStep(
        k=k,
        cov=rep.covariance,
        cov_means=cov_of_means(v1, v2),
        means=(symbolic_mean(v1), symbolic_mean(v2)),
        variances=(rep.variance1, rep.variance2),
        bins=(sum(len(c) for c in v1.cells), sum(len(c) for c in v2.cells)),
    )


def refinement_experiment(
    v1: SymbolicVariable,
    v2: SymbolicVariable,
    max_splits: int,
    side: Side | str = Side.BOTH,
) -> RefinementTrace:
    """Bisect every bin ``max_splits`` times, recording statistics each round.

    Step 0 is the input itself.  ``side`` selects which variable gets
    refined; refining only ``y`` once on the two-unit example reproduces the
    split-bin table.
    """
    if not 0 <= max_splits <= MAX_SPLITS:
        raise TooManySplitsError(f"max_splits must be in [0, {MAX_SPLITS}], got {max_splits}")
    for v in (v1, v2):
        if v.kind != HISTOGRAM:
            raise KindMismatchError(f"{v.name!r} is {v.kind}-valued, expected histogram-valued")
    side = Side(side)
    trace = RefinementTrace(side=side, steps=[_step(0, v1, v2)])
    for k in range(1, max_splits + 1):
        if side in (Side.BOTH, Side.X):
            v1 = v1.map(bisect_bins)
        if side in (Side.BOTH, Side.Y):
            v2 = v2.map(bisect_bins)
        trace.steps.append(_step(k, v1, v2))
    return trace
