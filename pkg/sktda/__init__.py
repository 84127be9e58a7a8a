"""
scikit-tda-coint studies how cointegration changes the topology of
time-delay embedded time series.

This module exposes the main operations of each analysis stage.
"""

try:
    from ._version import version as __version__
except ImportError:  # not built by setuptools_scm
    __version__ = "0+unknown"

from .cointegration import johansen, residual_series
from .diagram_metrics import diagram_distance_matrix, wasserstein
from .embedding import delay_embed
from .gp_regression import fit_gp, gp_residuals, predict
from .pipeline import PipelineConfig, run_linear_residuals, run_six_series
from .series_core import MultiSeries, TimeSeries, load_csv
from .stationarity import adf_test, integration_order
from .vr_persistence import betti_at, persistent_homology, vr_filtration

__author__ = "The scikit-tda-coint team"

__all__ = [
    "__version__",
    "TimeSeries",
    "MultiSeries",
    "load_csv",
    "adf_test",
    "integration_order",
    "johansen",
    "residual_series",
    "fit_gp",
    "predict",
    "gp_residuals",
    "delay_embed",
    "vr_filtration",
    "persistent_homology",
    "betti_at",
    "wasserstein",
    "diagram_distance_matrix",
    "PipelineConfig",
    "run_six_series",
    "run_linear_residuals",
]


# Cleaner Python 3.7 command line completion
def __dir__():
    return __all__
