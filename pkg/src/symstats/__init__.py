"""Descriptive statistics for interval- and histogram-valued symbolic data."""

from .bivariate import (
    CovReport,
    Estimator,
    cov_bg,
    cov_billard,
    cov_billard_histogram,
    cov_billard_interval,
    cov_of_means,
    covariance,
    csb,
)
from .diagnostics import (
    Problem1Report,
    RefinementStep,
    RefinementTrace,
    Side,
    check_problem1,
    refinement_experiment,
)
from . import errors
from .errors import SymbolicDataError
from .fileio import load_dataset, parse_dataset, serialize_dataset
from .model import (
    Histogram,
    HistogramBin,
    Interval,
    SymbolicDataset,
    SymbolicVariable,
    UnitMoments,
    bisect_bins,
    cdf,
    histogram_moments,
    interval_as_histogram,
    interval_moments,
    quantile,
    validate_histogram,
)
from .univariate import (
    UnivariateReport,
    symbolic_mean,
    symbolic_variance,
    variance_decomposition,
)

__version__ = "0.1.0"
