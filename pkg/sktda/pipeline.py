"""
This module chains the analysis stages into the two end-to-end runs:

* :func:`run_six_series` compares the target channel before and after linear
  and Gaussian-process cointegration (``RAW``, ``GP1``, ``GP2``, ``LIN CO``,
  ``GP1 CO``, ``GP2 CO``).
* :func:`run_linear_residuals` compares every channel with every Johansen
  residual series.

Each run writes its artifacts in one directory, listed in
:func:`sktda.constants.MANIFEST_FILE`, only after every stage succeeded.
"""

import contextlib
import json
import os
import platform
import shutil
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields, replace
from itertools import combinations

import distro
import gph
import matplotlib
import numpy as np
import pandas as pd
import scipy
from packaging.version import parse as parse_version
from scipy.stats import spearmanr

from .cointegration import cointegrating_residuals, johansen, residual_series
from .constants import (
    BACKENDS,
    BALL_LABELS,
    DEFAULT_ALPHA,
    DEFAULT_BACKEND,
    DEFAULT_COMBINED_DIMS,
    DEFAULT_EMBEDDING_DIM,
    DEFAULT_GP_MAX_ITER,
    DEFAULT_GP_RESTARTS,
    DEFAULT_MAX_DIM,
    DEFAULT_MAX_ORDER,
    DEFAULT_MAX_SIMPLICES,
    DEFAULT_P,
    DEFAULT_SEED,
    DEFAULT_SIGNIFICANCE,
    DEFAULT_SUBSAMPLE_CAP,
    DEFAULT_VECM_LAG,
    DIAGRAM_FILE,
    DISTANCES_COMBINED_FILE,
    DISTANCES_DIM_FILE,
    MANIFEST_FILE,
    SERIES_FILE,
    SIX_SERIES_LABELS,
    SKTDA_DIR,
    TORI_LABELS,
)
from .diagram_metrics import diagram_distance_matrix, write_distance_matrix_csv
from .embedding import delay_embed
from .exceptions import SKTdaError, SKTdaParameterError, SKTdaParseError
from .gp_regression import GpConfig, gp_predictions
from .series_core import MultiSeries, drop_missing, load_csv, standardize, write_csv
from .stationarity import integration_order
from .synth import MIMIC_LABELS, MIMIC_TARGET, Z24MimicConfig, gen_z24_mimic
from .utils import check_window, file_label, format_window, mkdir_p, sktda_log
from .vr_persistence import maxmin_subsample, vr_persistence, write_diagram_csv, write_diagram_svg

SIX_SERIES = "six-series"
LINEAR_RESIDUALS = "linear-residuals"


@dataclass
class PipelineConfig:
    """Settings of a pipeline run.

    ``input=None`` runs on the synthetic four-channel mimic generated with
    ``seed``. Windows are half-open ``(start, end)`` sample ranges.
    """

    input: str = None
    target: str = MIMIC_TARGET
    regressors: tuple = tuple(label for label in MIMIC_LABELS if label != MIMIC_TARGET)
    channels: tuple = None
    gp1_window: tuple = (0, 1000)
    gp2_window: tuple = (1500, 2500)
    alpha: int = DEFAULT_ALPHA
    dim: int = DEFAULT_EMBEDDING_DIM
    max_dim: int = DEFAULT_MAX_DIM
    p: float = DEFAULT_P
    subsample: int = DEFAULT_SUBSAMPLE_CAP
    max_scale: float = None
    backend: str = DEFAULT_BACKEND
    max_simplices: int = DEFAULT_MAX_SIMPLICES
    combined_dims: tuple = DEFAULT_COMBINED_DIMS
    essential: str = "truncate"
    vecm_lag: int = DEFAULT_VECM_LAG
    gp_restarts: int = DEFAULT_GP_RESTARTS
    gp_max_iter: int = DEFAULT_GP_MAX_ITER
    train_stride: int = 1
    mimic: dict = field(default_factory=dict)
    out: str = None
    seed: int = DEFAULT_SEED
    jobs: int = 1

    def __post_init__(self):
        for name in ("regressors", "gp1_window", "gp2_window", "combined_dims"):
            setattr(self, name, tuple(getattr(self, name)))
        if self.channels is not None:
            self.channels = tuple(self.channels)
        if self.alpha < 1:
            raise SKTdaParameterError(f"alpha must be at least 1, got {self.alpha}")
        if self.dim < 2:
            raise SKTdaParameterError(f"embedding dimension must be at least 2 for pipeline runs, got {self.dim}")
        if self.max_dim <= max(self.combined_dims):
            raise SKTdaParameterError(
                f"max_dim={self.max_dim} reports no homology of dimension {max(self.combined_dims)}"
            )
        if self.backend not in BACKENDS:
            raise SKTdaParameterError(f"unknown persistence backend {self.backend!r}, expected one of {BACKENDS}")
        if self.subsample < 1:
            raise SKTdaParameterError(f"subsample cap must be positive, got {self.subsample}")
        if self.jobs < 1:
            raise SKTdaParameterError(f"jobs must be positive, got {self.jobs}")
        for window in (self.gp1_window, self.gp2_window):
            check_window(window)

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, values):
        known = {item.name for item in fields(cls)}
        unknown = sorted(set(values) - known)
        if unknown:
            raise SKTdaParameterError(f"unknown configuration key(s): {unknown}")
        return cls(**values)

    @classmethod
    def from_json(cls, path):
        """Read a configuration file, or the ``config`` section of a run manifest.

        A manifest written by another version of the package is accepted with a warning.
        """
        try:
            with open(path, encoding="utf-8") as fp:
                values = json.load(fp)
        except ValueError as err:
            raise SKTdaParseError(f"{path}: {err}") from err
        if not isinstance(values, dict):
            raise SKTdaParseError(f"{path}: expected a JSON object")
        if "config" in values and "versions" in values:
            recorded = values["versions"].get("sktda")
            if recorded and parse_version(recorded) != parse_version(_package_version()):
                sktda_log.warning(
                    "manifest %s was written by sktda %s, replaying with %s", path, recorded, _package_version()
                )
            values = values["config"]
        return cls.from_dict(values)


@dataclass(frozen=True, eq=False)
class RunResult:
    """Outcome of a pipeline run."""

    matrix: object
    diagrams: dict
    series: MultiSeries
    manifest: dict
    out_dir: str


@contextlib.contextmanager
def pipeline_stage(name):
    """Tag any :class:`sktda.exceptions.SKTdaError` raised inside with stage ``name``."""
    sktda_log.info("stage %s", name)
    try:
        yield
    except SKTdaError as err:
        if err.stage is None:
            err.stage = name
        raise


def _package_version():
    from . import __version__  # pylint: disable=import-outside-toplevel

    return __version__


def versions():
    """Return the versions and platform recorded in a run manifest."""
    return {
        "sktda": _package_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "pandas": pd.__version__,
        "matplotlib": matplotlib.__version__,
        "giotto-ph": gph.__version__,
        "python": platform.python_version(),
        "platform": platform.platform(),
        "distro": distro.id() or platform.system().lower(),
    }


def _load(cfg, labels):
    if cfg.input is None:
        mimic = Z24MimicConfig(**{"seed": cfg.seed, **cfg.mimic})
        sktda_log.info("no input given, generating the synthetic mimic (seed %d)", mimic.seed)
        ms = gen_z24_mimic(mimic)
        return ms if labels is None else ms.select(labels)
    return drop_missing(load_csv(cfg.input, header=labels))


def _gp_config(cfg):
    return GpConfig(
        restarts=cfg.gp_restarts,
        max_iter=cfg.gp_max_iter,
        seed=cfg.seed,
        n_jobs=cfg.jobs,
        train_stride=cfg.train_stride,
    )


def _integration_report(series):
    report = {}
    for ts in series.channels:
        try:
            report[ts.label] = integration_order(ts, DEFAULT_MAX_ORDER, None, DEFAULT_SIGNIFICANCE)
        except SKTdaError as err:
            sktda_log.warning("integration order of %r undetermined: %s", ts.label, err)
            report[ts.label] = None
    return report


def _persist(ts, cfg):
    with pipeline_stage(f"persistence {ts.label}"):
        cloud = delay_embed(standardize(ts), cfg.dim, cfg.alpha)
        if len(cloud) > cfg.subsample:
            cloud = maxmin_subsample(cloud, cfg.subsample, cfg.seed)
        diagram = vr_persistence(cloud, cfg.max_dim, cfg.max_scale, cfg.max_simplices, cfg.backend)
        return diagram, len(cloud)


def _persist_all(series, cfg):
    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as executor:
            results = list(executor.map(lambda ts: _persist(ts, cfg), series.channels))
    else:
        results = [_persist(ts, cfg) for ts in series.channels]
    diagrams = {ts.label: diagram for ts, (diagram, _) in zip(series.channels, results)}
    points = {ts.label: n_points for ts, (_, n_points) in zip(series.channels, results)}
    return diagrams, points


def _artifacts(matrix, diagrams, series, manifest, out_dir):
    """Yield ``(path, writer)`` pairs of every file of a run."""
    yield SERIES_FILE(out_dir), lambda path: write_csv(series, path)
    for label, diagram in diagrams.items():
        name = file_label(label)
        yield DIAGRAM_FILE(out_dir, name, "csv"), lambda path, d=diagram: write_diagram_csv(d, path)
        yield DIAGRAM_FILE(out_dir, name, "svg"), lambda path, d=diagram, t=label: write_diagram_svg(d, path, t)
    yield DISTANCES_COMBINED_FILE(out_dir), lambda path: write_distance_matrix_csv(
        matrix.combined, matrix.labels, path
    )
    for k, values in matrix.per_dimension.items():
        yield DISTANCES_DIM_FILE(out_dir, k), lambda path, v=values: write_distance_matrix_csv(v, matrix.labels, path)
    yield MANIFEST_FILE(out_dir), lambda path: _write_json(manifest, path)


def _write_json(values, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fp:
        json.dump(values, fp, indent=2, sort_keys=True)
        fp.write("\n")


def write_run(matrix, diagrams, series, manifest, out_dir):
    """Write every artifact of a run to ``out_dir``; on failure remove what was written."""
    created = not os.path.isdir(out_dir)
    written = []
    manifest["files"] = [
        os.path.relpath(path, out_dir) for path, _ in _artifacts(matrix, diagrams, series, manifest, out_dir)
    ]
    try:
        with pipeline_stage("write"):
            mkdir_p(out_dir)
            for path, writer in _artifacts(matrix, diagrams, series, manifest, out_dir):
                try:
                    writer(path)
                except OSError as err:
                    raise SKTdaParameterError(f"cannot write {path}: {err}") from err
                written.append(path)
    except BaseException:
        if created:
            shutil.rmtree(out_dir, ignore_errors=True)
        else:
            for path in written:
                with contextlib.suppress(OSError):
                    os.remove(path)
        raise
    sktda_log.info("wrote %d files to %s", len(written), out_dir)


def _base_manifest(command, cfg, points):
    return {
        "command": command,
        "config": cfg.to_dict(),
        "seeds": {"gp": cfg.seed, "subsample": cfg.seed, "synthetic": cfg.seed if cfg.input is None else None},
        "versions": versions(),
        "subsample_points": points,
    }


def run_six_series(cfg):
    """Compare the target channel before and after linear and GP cointegration.

    Returns a :class:`RunResult` whose ``matrix`` rows follow
    :data:`sktda.constants.SIX_SERIES_LABELS`.
    """
    labels = [cfg.target] + list(cfg.regressors)
    if len(labels) < 4:
        raise SKTdaParameterError(f"six-series needs a target and at least 3 regressors, got {labels}")
    with pipeline_stage("load"):
        ms = _load(cfg, labels)
    with pipeline_stage("config"):
        for window in (cfg.gp1_window, cfg.gp2_window):
            check_window(window, len(ms))

    gp_config = _gp_config(cfg)
    with pipeline_stage("gp1"):
        gp1_model, gp1 = gp_predictions(ms, cfg.target, cfg.regressors, cfg.gp1_window, gp_config)
    with pipeline_stage("gp2"):
        gp2_model, gp2 = gp_predictions(ms, cfg.target, cfg.regressors, cfg.gp2_window, gp_config)
    with pipeline_stage("cointegrate"):
        result = johansen(ms, cfg.vecm_lag)
        linear = residual_series(ms, result.leading)

    raw = ms[cfg.target].values
    columns = (raw, gp1.values, gp2.values, linear.values, raw - gp1.values, raw - gp2.values)
    series = MultiSeries.from_array(np.column_stack(columns), SIX_SERIES_LABELS, ms.index)

    with pipeline_stage("integration"):
        report = _integration_report(series)
    diagrams, points = _persist_all(series, cfg)
    with pipeline_stage("distance"):
        matrix = diagram_distance_matrix(
            list(diagrams.items()), cfg.p, cfg.combined_dims, cfg.essential, n_jobs=cfg.jobs
        )

    within, cross = block_contrast(matrix)
    manifest = _base_manifest(SIX_SERIES, cfg, points)
    manifest.update(
        {
            "block_mean": {"within": within, "cross": cross},
            "integration_order": report,
            "johansen": {
                "labels": list(result.labels),
                "eigenvalues": list(result.eigenvalues),
                "leading": [float(value) for value in result.leading],
            },
            "gp": {
                "GP1": {"window": format_window(cfg.gp1_window), **gp1_model.hyperparameters()},
                "GP2": {"window": format_window(cfg.gp2_window), **gp2_model.hyperparameters()},
            },
        }
    )
    out_dir = cfg.out or os.path.join(SKTDA_DIR(), SIX_SERIES)
    write_run(matrix, diagrams, series, manifest, out_dir)
    return RunResult(matrix, diagrams, series, manifest, out_dir)


def block_contrast(matrix, blocks=(TORI_LABELS, BALL_LABELS)):
    """Return the mean combined distance within ``blocks`` and the mean across them."""
    index = {label: i for i, label in enumerate(matrix.labels)}
    groups = [[index[label] for label in block] for block in blocks]
    within = [matrix.combined[i, j] for group in groups for i, j in combinations(group, 2)]
    cross = [matrix.combined[i, j] for first, second in combinations(groups, 2) for i in first for j in second]
    return float(np.mean(within)), float(np.mean(cross))


def cross_block_trend(matrix, n_channels):
    """Return the mean channel-to-residual distance of each residual row and its Spearman
    correlation with the residual index (``None`` if undefined)."""
    combined = matrix.combined
    means = combined[n_channels:, :n_channels].mean(axis=1)
    if means.size < 2 or np.ptp(means) == 0:
        return means, None
    return means, float(spearmanr(np.arange(means.size), means)[0])


def run_linear_residuals(cfg):
    """Compare every channel with every Johansen residual ``eps1..epsm``.

    Residuals are ordered by descending eigenvalue; the returned matrix is
    ``2m x 2m`` with the channels first.
    """
    with pipeline_stage("load"):
        ms = _load(cfg, None if cfg.channels is None else list(cfg.channels))
    with pipeline_stage("cointegrate"):
        result = johansen(ms, cfg.vecm_lag)
        residuals = cointegrating_residuals(ms, result)
    series = MultiSeries(ms.channels + residuals.channels, ms.index)

    with pipeline_stage("integration"):
        report = _integration_report(series)
    diagrams, points = _persist_all(series, cfg)
    with pipeline_stage("distance"):
        matrix = diagram_distance_matrix(
            list(diagrams.items()), cfg.p, cfg.combined_dims, cfg.essential, n_jobs=cfg.jobs
        )
    means, rho = cross_block_trend(matrix, ms.n_channels)

    manifest = _base_manifest(LINEAR_RESIDUALS, cfg, points)
    manifest.update(
        {
            "integration_order": report,
            "johansen": {
                "labels": list(result.labels),
                "eigenvalues": list(result.eigenvalues),
                "vectors": [[float(value) for value in vector] for vector in result.vectors],
            },
            "cross_block_mean": [float(value) for value in means],
            "cross_block_spearman": rho,
        }
    )
    out_dir = cfg.out or os.path.join(SKTDA_DIR(), LINEAR_RESIDUALS)
    write_run(matrix, diagrams, series, manifest, out_dir)
    return RunResult(matrix, diagrams, series, manifest, out_dir)


RUNS = {SIX_SERIES: run_six_series, LINEAR_RESIDUALS: run_linear_residuals}


def replay(manifest_path, out=None):
    """Run again the pipeline recorded in ``manifest_path``, writing to ``out``."""
    with open(manifest_path, encoding="utf-8") as fp:
        command = json.load(fp).get("command")
    if command not in RUNS:
        raise SKTdaParseError(f"{manifest_path}: unknown command {command!r}")
    cfg = PipelineConfig.from_json(manifest_path)
    if out is not None:
        cfg = replace(cfg, out=out)
    return RUNS[command](cfg)
