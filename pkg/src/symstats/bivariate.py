"""Covariance between two symbolic variables.

Three definitions are provided, each reported with its cross-variation
decomposition ``cst = csw + csb``:

* ``Estimator.BG`` treats the two distributions of a unit as independent,
  so the within part is zero.
* ``Estimator.BILLARD2008`` couples them comonotonically for intervals
  (within part ``w1 * w2 / 12`` per unit) and, for histograms, applies the
  same bilinear form to every pair of bins weighted by their masses.
* ``Estimator.MEANS`` uses the unit means only.

None of these is corrected for its known drawbacks; they are reproduced as
defined.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import ConsistencyError, KindMismatchError, LengthMismatchError, ZeroVarianceError
from .model import HISTOGRAM, INTERVAL, Histogram, SymbolicVariable
from .univariate import symbolic_variance

AGREEMENT_RTOL = 1e-9


class Estimator(str, enum.Enum):
    BG = "bg"
    BILLARD2008 = "billard"
    MEANS = "means"


@dataclass(frozen=True)
class CovReport:
    n: int
    estimator: Estimator
    csw: float
    csb: float
    cst: float
    covariance: float
    variance1: float
    variance2: float

    @property
    def correlation(self) -> float:
        """``covariance / (S1 * S2)``, unclamped.

        Raises :class:`ZeroVarianceError` when either variance is zero.
        """
        if self.variance1 <= 0 or self.variance2 <= 0:
            raise ZeroVarianceError("correlation undefined: a variable has zero variance")
        return self.covariance / math.sqrt(self.variance1 * self.variance2)

    @property
    def correlation_out_of_range(self) -> bool:
        """True when the raw correlation ratio exceeds 1 in magnitude."""
        try:
            return abs(self.correlation) > 1.0
        except ZeroVarianceError:
            return False


def _check_pair(v1: SymbolicVariable, v2: SymbolicVariable) -> None:
    if v1.n != v2.n:
        raise LengthMismatchError(f"{v1.name!r} has {v1.n} units, {v2.name!r} has {v2.n}")
    if v1.kind != v2.kind:
        raise KindMismatchError(f"{v1.name!r} is {v1.kind}-valued, {v2.name!r} is {v2.kind}-valued")


def _require_kind(kind: str, *variables: SymbolicVariable) -> None:
    for v in variables:
        if v.kind != kind:
            raise KindMismatchError(f"{v.name!r} is {v.kind}-valued, expected {kind}-valued")


def _means(v: SymbolicVariable) -> tuple[list[float], float]:
    mu = [m.mean for m in v.moments()]
    return mu, math.fsum(mu) / len(mu)


def csb(v1: SymbolicVariable, v2: SymbolicVariable) -> float:
    """Between-unit cross-variation ``sum (mu_i1 - Y1)(mu_i2 - Y2)``."""
    _check_pair(v1, v2)
    mu1, m1 = _means(v1)
    mu2, m2 = _means(v2)
    return math.fsum((x - m1) * (y - m2) for x, y in zip(mu1, mu2))


def _report(v1, v2, estimator, csw_, csb_, cst) -> CovReport:
    n = v1.n
    return CovReport(
        n=n,
        estimator=estimator,
        csw=csw_,
        csb=csb_,
        cst=cst,
        covariance=cst / n,
        variance1=symbolic_variance(v1),
        variance2=symbolic_variance(v2),
    )


def cov_bg(v1: SymbolicVariable, v2: SymbolicVariable) -> CovReport:
    between = csb(v1, v2)
    return _report(v1, v2, Estimator.BG, 0.0, between, between)


def cov_of_means(v1: SymbolicVariable, v2: SymbolicVariable) -> float:
    """Covariance of the unit means, ``(1/n) sum mu_i1 mu_i2 - Y1 Y2``."""
    return csb(v1, v2) / v1.n


def cov_means_report(v1: SymbolicVariable, v2: SymbolicVariable) -> CovReport:
    between = csb(v1, v2)
    return _report(v1, v2, Estimator.MEANS, 0.0, between, between)


def billard_interval_cst_closed_form(v1: SymbolicVariable, v2: SymbolicVariable) -> float:
    """Interval CST from the bounds, centered on the symbolic means.

    ``(1/6) sum [2 B1 B2 + B1 A2 + A1 B2 + 2 A1 A2]`` with ``A = a - Y`` and
    ``B = b - Y``.
    """
    _check_pair(v1, v2)
    _require_kind(INTERVAL, v1, v2)
    return math.fsum(_closed_form_terms(v1, v2)) / 6


def _closed_form_terms(v1, v2) -> list[float]:
    _, m1 = _means(v1)
    _, m2 = _means(v2)
    terms = []
    for x, y in zip(v1.cells, v2.cells):
        a1, b1 = x.lower - m1, x.upper - m1
        a2, b2 = y.lower - m2, y.upper - m2
        terms += [2 * b1 * b2, b1 * a2, a1 * b2, 2 * a1 * a2]
    return terms


def _agree(x: float, y: float, scale: float) -> bool:
    # scale bounds the magnitude of the summands, so cancellation is covered
    return abs(x - y) <= AGREEMENT_RTOL * max(abs(x), abs(y), scale)


def cov_billard_interval(v1: SymbolicVariable, v2: SymbolicVariable) -> CovReport:
    """Comonotone-within covariance for interval variables.

    The within part is ``sum (b_i1 - a_i1)(b_i2 - a_i2) / 12``, the
    covariance of two uniforms driven by one shared quantile level.  The
    result is cross-checked against :func:`billard_interval_cst_closed_form`.
    """
    _check_pair(v1, v2)
    _require_kind(INTERVAL, v1, v2)
    within = math.fsum(
        (x.upper - x.lower) * (y.upper - y.lower) / 12 for x, y in zip(v1.cells, v2.cells)
    )
    between = csb(v1, v2)
    cst = within + between
    terms = _closed_form_terms(v1, v2)
    closed = math.fsum(terms) / 6
    scale = math.fsum(abs(t) for t in terms) / 6
    if not _agree(cst, closed, scale):
        raise ConsistencyError(f"interval CST paths disagree: {cst!r} vs {closed!r}")
    return _report(v1, v2, Estimator.BILLARD2008, within, between, cst)


def _bound_offsets(h: Histogram, center: float) -> tuple[float, float]:
    """Mass-weighted offsets ``sum p (a - center)`` and ``sum p (b - center)``."""
    p = h.probabilities
    return math.fsum(p * (h.lowers - center)), math.fsum(p * (h.uppers - center))


def billard_histogram_unit_terms(
    v1: SymbolicVariable, v2: SymbolicVariable
) -> list[float]:
    """Per-unit double sums over bin pairs ``(r, s)`` of the bilinear form.

    The form is bilinear in the bin bounds, so the double sum factors into
    mass-weighted bound offsets per histogram: O(h1 + h2) per unit.
    """
    _, m1 = _means(v1)
    _, m2 = _means(v2)
    out = []
    for x, y in zip(v1.cells, v2.cells):
        a1, b1 = _bound_offsets(x, m1)
        a2, b2 = _bound_offsets(y, m2)
        out.append(math.fsum([2 * b1 * b2, b1 * a2, a1 * b2, 2 * a1 * a2]))
    return out


def cov_billard_histogram(v1: SymbolicVariable, v2: SymbolicVariable) -> CovReport:
    """Bin-pair extension of the interval formula to histograms.

    ``cov = (1/6n) sum_i sum_r sum_s [2 B1r B2s + B1r A2s + A1r B2s + 2 A1r A2s]
    p1r p2s`` with bounds centered on the symbolic means.  There is no
    per-unit within term, so ``csw`` is the residual ``cst - csb``.
    """
    _check_pair(v1, v2)
    _require_kind(HISTOGRAM, v1, v2)
    n = v1.n
    cst = math.fsum(billard_histogram_unit_terms(v1, v2)) / 6
    between = csb(v1, v2)
    return CovReport(
        n=n,
        estimator=Estimator.BILLARD2008,
        csw=cst - between,
        csb=between,
        cst=cst,
        covariance=cst / n,
        variance1=symbolic_variance(v1),
        variance2=symbolic_variance(v2),
    )


def cov_billard(v1: SymbolicVariable, v2: SymbolicVariable) -> CovReport:
    _check_pair(v1, v2)
    if v1.kind == INTERVAL:
        return cov_billard_interval(v1, v2)
    return cov_billard_histogram(v1, v2)


def covariance(v1: SymbolicVariable, v2: SymbolicVariable, estimator: Estimator | str) -> CovReport:
    estimator = Estimator(estimator)
    if estimator is Estimator.BG:
        return cov_bg(v1, v2)
    if estimator is Estimator.MEANS:
        return cov_means_report(v1, v2)
    return cov_billard(v1, v2)
