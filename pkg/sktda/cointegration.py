"""
This module implements the Johansen reduced-rank regression and the
residual series ``z(t) = beta^T y(t)`` of a cointegrating vector.

The eigenvector of the largest eigenvalue is the most stationary linear
combination of the channels.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .constants import DEFAULT_VECM_LAG
from .exceptions import (
    SKTdaCollinearityError,
    SKTdaInsufficientDataError,
    SKTdaParameterError,
    SKTdaShapeError,
)
from .series_core import MultiSeries, TimeSeries
from .utils import sktda_log

MAX_CONDITION = 1e12
"""Moment matrices with a larger condition number are treated as singular."""


@dataclass(frozen=True, eq=False)
class JohansenResult:
    """Eigenvalues in descending order and their cointegrating vectors.

    Each vector has unit Euclidean norm and a positive first nonzero entry.
    """

    eigenvalues: tuple
    vectors: tuple
    lag: int
    labels: tuple = ()

    @property
    def leading(self):
        """Cointegrating vector of the largest eigenvalue."""
        return self.vectors[0]


def _normalize(vector):
    vector = vector / np.linalg.norm(vector)
    nonzero = np.flatnonzero(np.abs(vector) > 1e-12 * np.abs(vector).max())
    if vector[nonzero[0]] < 0:
        vector = -vector
    return vector


def _partial_out(target, regressors):
    if regressors.shape[1] == 0:
        return target
    coef, _, _, _ = np.linalg.lstsq(regressors, target, rcond=None)
    return target - regressors @ coef


def _check_condition(matrix, name):
    condition = np.linalg.cond(matrix)
    if not np.isfinite(condition) or condition > MAX_CONDITION:
        raise SKTdaCollinearityError(f"moment matrix {name} is singular (condition number {condition:.3g})")


def johansen(ms, lag=DEFAULT_VECM_LAG, intercept=True):
    """Solve the Johansen eigenproblem for the channels of ``ms``.

    :param ms: Channels in levels, each integrated of order one.
    :param lag: VECM lag; ``lag - 1`` lagged differences enter the auxiliary regressions.
    :param intercept: Include a constant in the auxiliary regressions.
    """
    m = ms.n_channels
    if m < 2:
        raise SKTdaParameterError(f"johansen needs at least 2 channels, got {m}")
    if lag < 1:
        raise SKTdaParameterError(f"VECM lag must be at least 1, got {lag}")
    if len(ms) < 10 * m or len(ms) <= lag + m + 1:
        raise SKTdaInsufficientDataError(f"{len(ms)} samples are too few for {m} channels")

    levels = ms.as_array()
    total = levels.shape[0]
    diffs = np.diff(levels, axis=0)
    delta = diffs[lag - 1 :]
    lagged_levels = levels[lag - 1 : total - 1]
    columns = [diffs[lag - 1 - j : total - 1 - j] for j in range(1, lag)]
    if intercept:
        columns.append(np.ones((delta.shape[0], 1)))
    regressors = np.hstack(columns) if columns else np.empty((delta.shape[0], 0))

    r0 = _partial_out(delta, regressors)
    r1 = _partial_out(lagged_levels, regressors)
    n_used = delta.shape[0]
    s00 = r0.T @ r0 / n_used
    s11 = r1.T @ r1 / n_used
    s01 = r0.T @ r1 / n_used
    _check_condition(s00, "S00")
    _check_condition(s11, "S11")

    product = s01.T @ scipy.linalg.solve(s00, s01, assume_a="pos")
    product = (product + product.T) / 2
    try:
        values, vectors = scipy.linalg.eigh(product, s11)
    except scipy.linalg.LinAlgError as err:
        raise SKTdaCollinearityError(f"generalized eigenproblem failed: {err}") from err

    order = np.argsort(values)[::-1]
    eigenvalues = tuple(float(value) for value in np.clip(values[order], 0.0, None))
    result = JohansenResult(
        eigenvalues=eigenvalues,
        vectors=tuple(_normalize(vectors[:, k]) for k in order),
        lag=lag,
        labels=ms.labels,
    )
    sktda_log.info("johansen on %d channels: eigenvalues %s", m, ", ".join(f"{v:.4f}" for v in eigenvalues))
    return result


def residual_series(ms, beta, label="z"):
    """Return ``beta^T y(t)`` at every sample of ``ms``."""
    beta = np.asarray(beta, dtype=float)
    if beta.shape != (ms.n_channels,):
        raise SKTdaShapeError(f"beta of shape {beta.shape} does not match {ms.n_channels} channels")
    return TimeSeries(ms.as_array() @ beta, label)


def cointegrating_residuals(ms, result, prefix="eps"):
    """Return the residual series of every vector of ``result`` as channels ``eps1 .. epsm``."""
    channels = tuple(
        residual_series(ms, vector, f"{prefix}{k}") for k, vector in enumerate(result.vectors, start=1)
    )
    return MultiSeries(channels, ms.index)
