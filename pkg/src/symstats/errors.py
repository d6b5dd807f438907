"""Exception types raised by symstats.

Every error derives from :class:`SymbolicDataError` (itself a ``ValueError``)
so callers can catch data problems with a single clause.
"""


class SymbolicDataError(ValueError):
    """Base class for all invalid-data conditions."""


class InvalidIntervalError(SymbolicDataError):
    """Interval bounds are not finite or lower > upper."""


class HistogramError(SymbolicDataError):
    """Base class for histogram validation failures."""


class EmptyBinsError(HistogramError):
    pass


class NonContiguousError(HistogramError):
    """Consecutive bins leave a gap or overlap."""


class WeightSumError(HistogramError):
    """Bin weights do not sum to one within tolerance."""


class NegativeWeightError(HistogramError):
    pass


class ZeroWidthMassError(HistogramError):
    """A zero-width bin carries positive mass."""


class DegenerateIntervalError(SymbolicDataError):
    """A point interval cannot carry a uniform density."""


class OutOfRangeError(SymbolicDataError):
    """Probability level outside [0, 1]."""


class LengthMismatchError(SymbolicDataError):
    """Two variables describe a different number of units."""


class KindMismatchError(SymbolicDataError):
    """Cells are of the wrong kind (interval vs histogram) for the operation."""


class TooManySplitsError(SymbolicDataError):
    pass


class ZeroVarianceError(SymbolicDataError):
    """Correlation requested for a variable with zero variance."""


class ConsistencyError(ArithmeticError):
    """Two algebraically equivalent computations disagree beyond tolerance."""
