"""
This module defines constants commonly used in scikit-tda-coint.
"""

import os

DEFAULT_ALPHA = 75
"""Delay used by the pipelines, in samples."""

TOY_ALPHA = 5
"""Delay used for the three-sine toy embedding."""

DEFAULT_EMBEDDING_DIM = 3

DEFAULT_MAX_DIM = 3
"""Largest simplex dimension of a filtration. Homology is reported up to ``DEFAULT_MAX_DIM - 1``."""

DEFAULT_P = 2.0
"""Wasserstein exponent."""

DEFAULT_COMBINED_DIMS = (0, 1, 2)

DEFAULT_SUBSAMPLE_CAP = 400

DEFAULT_MAX_SIMPLICES = 5_000_000
"""Simplex-count guard of :func:`sktda.vr_persistence.vr_filtration`."""

BACKENDS = ("ripser", "reduction")
"""Persistence backends: giotto-ph's ripser, or the explicit filtration and reduction of this package."""

DEFAULT_BACKEND = "ripser"

DEFAULT_SIGNIFICANCE = "5%"

SIGNIFICANCE_LEVELS = ("1%", "5%", "10%")

DEFAULT_MAX_ORDER = 2

DEFAULT_VECM_LAG = 1

DEFAULT_GP_RESTARTS = 5

DEFAULT_GP_MAX_ITER = 200

DEFAULT_GP_GTOL = 1e-5

DEFAULT_SEED = 0

SIX_SERIES_LABELS = ("RAW", "GP1", "GP2", "LIN CO", "GP1 CO", "GP2 CO")
"""Row order of the six-series distance table."""

TORI_LABELS = SIX_SERIES_LABELS[:3]

BALL_LABELS = SIX_SERIES_LABELS[3:]


def SKTDA_DIR():
    """Top-level directory where runs are written when ``--out`` is not given."""
    return "_sktda"


def DISTANCES_COMBINED_FILE(out_dir):
    """Combined (summed over dimensions) Wasserstein matrix."""
    return os.path.join(out_dir, "distances_combined.csv")


def DISTANCES_DIM_FILE(out_dir, dim):
    """Wasserstein matrix of homology dimension ``dim``."""
    return os.path.join(out_dir, f"distances_h{dim}.csv")


def DIAGRAM_FILE(out_dir, label, ext):
    """Persistence diagram of series ``label``; ``ext`` is ``csv`` or ``svg``."""
    return os.path.join(out_dir, f"diagram_{label}.{ext}")


def SERIES_FILE(out_dir):
    """Constructed series of a pipeline run."""
    return os.path.join(out_dir, "series.csv")


def MANIFEST_FILE(out_dir):
    """Run manifest storing config, seeds, versions and the integration report."""
    return os.path.join(out_dir, "manifest.json")


def ADF_REPORT_FILE(out_dir):
    """Per-channel ADF statistics written by ``sktda adf``."""
    return os.path.join(out_dir, "adf.csv")


def CRITICAL_VALUES_FILE(out_dir):
    """Embedded Dickey-Fuller critical-value table."""
    return os.path.join(out_dir, "critical_values.csv")


def JOHANSEN_FILE(out_dir):
    """Eigenvalues and cointegrating vectors written by ``sktda cointegrate``."""
    return os.path.join(out_dir, "johansen.csv")


def RESIDUALS_FILE(out_dir):
    """Residual series ``eps1 .. epsm``."""
    return os.path.join(out_dir, "residuals.csv")


def GP_RESIDUALS_FILE(out_dir):
    return os.path.join(out_dir, "gp_residuals.csv")


def GP_MODEL_FILE(out_dir):
    """JSON sidecar holding the learned GP hyperparameters."""
    return os.path.join(out_dir, "gp_model.json")


def CLOUD_FILE(out_dir):
    """Delay-embedded point cloud, one point per row."""
    return os.path.join(out_dir, "cloud.csv")


def SYNTH_FILE(out_dir, kind):
    return os.path.join(out_dir, f"synth_{kind}.csv")
