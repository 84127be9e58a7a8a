"""
This module fits error-correction models and runs the Augmented Dickey-Fuller
unit-root test used to establish the order of integration of a series.

The null hypothesis is a unit root. The test is left-tailed: the unit root is
rejected (the series is considered stationary) when ``t_p`` falls below the
critical value.
"""

import math
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from .constants import DEFAULT_MAX_ORDER, DEFAULT_SIGNIFICANCE, SIGNIFICANCE_LEVELS
from .exceptions import (
    SKTdaInsufficientDataError,
    SKTdaOrderUndeterminedError,
    SKTdaParameterError,
    SKTdaRankDeficiencyError,
)
from .series_core import TimeSeries, difference
from .utils import sktda_log

# Dickey-Fuller critical values, constant and no trend.
DF_CRITICAL_VALUES = {
    25: (-3.75, -3.00, -2.62),
    50: (-3.58, -2.93, -2.60),
    100: (-3.51, -2.89, -2.58),
    250: (-3.46, -2.88, -2.57),
    500: (-3.44, -2.87, -2.57),
    math.inf: (-3.43, -2.86, -2.57),
}

_RESIDUAL_RTOL = 1e-20


@dataclass(frozen=True, eq=False)
class EcmFit:
    """Least-squares fit of the error-correction model."""

    rho_hat: float
    b: tuple
    sigma_rho: float
    residuals: TimeSeries
    n_used: int
    intercept: float = 0.0
    design: np.ndarray = field(default=None, repr=False)


@dataclass(frozen=True)
class AdfResult:
    """Outcome of :func:`adf_test`."""

    t_p: float
    critical_values: dict
    reject_unit_root: dict
    lags: int
    n_used: int

    def rejects(self, level=DEFAULT_SIGNIFICANCE):
        """Return True if the unit root is rejected at ``level``."""
        _check_level(level)
        return self.reject_unit_root[level]

    def verdict(self, level=DEFAULT_SIGNIFICANCE):
        return "reject" if self.rejects(level) else "fail to reject"


def _check_level(level):
    if level not in SIGNIFICANCE_LEVELS:
        raise SKTdaParameterError(f"significance level {level!r} not in {SIGNIFICANCE_LEVELS}")


def default_lags(n):
    """Return the Schwert lag count ``floor(12 * (n / 100) ** 0.25)``."""
    return int(math.floor(12 * (n / 100.0) ** 0.25))


def critical_values(n):
    """Return the critical values for ``n`` observations, keyed by level.

    The table is interpolated linearly in ``1/n``; below 25 observations the
    25-observation row is used.
    """
    inverse = np.array([0.0 if size == math.inf else 1.0 / size for size in DF_CRITICAL_VALUES])
    table = np.array(list(DF_CRITICAL_VALUES.values()))
    order = np.argsort(inverse)
    x = 1.0 / n if n > 0 else inverse.max()
    return {
        level: float(np.interp(x, inverse[order], table[order, k])) for k, level in enumerate(SIGNIFICANCE_LEVELS)
    }


def export_critical_values(path):
    """Write the embedded critical-value table to ``path`` as CSV."""
    rows = [
        {"n": "inf" if size == math.inf else str(size), **dict(zip(SIGNIFICANCE_LEVELS, values))}
        for size, values in DF_CRITICAL_VALUES.items()
    ]
    pd.DataFrame(rows).to_csv(path, index=False, lineterminator="\n")


def _ecm_design(y, lags, intercept):
    dy = np.diff(y)
    rows = dy.size - lags
    columns = [y[lags : lags + rows]]
    for j in range(1, lags + 1):
        columns.append(dy[lags - j : lags - j + rows])
    if intercept:
        columns.append(np.ones(rows))
    return np.column_stack(columns), dy[lags:]


def fit_ecm(ts, lags, intercept=True):
    """Fit ``dy_i = rho * y_{i-1} + sum_j b_j * dy_{i-j} + c + e_i`` by ordinary least squares.

    :param ts: Series to model.
    :param lags: Number of lagged differences.
    :param intercept: Include the constant ``c``.
    """
    if lags < 0:
        raise SKTdaParameterError(f"lags must be non-negative, got {lags}")
    n_regressors = lags + 1 + int(intercept)
    if len(ts) < lags + 2 + n_regressors:
        raise SKTdaInsufficientDataError(
            f"series {ts.label!r} of length {len(ts)} is too short for {lags} lags "
            f"(need at least {lags + 2 + n_regressors})"
        )

    design, response = _ecm_design(ts.values, lags, intercept)
    coef, _, rank, _ = np.linalg.lstsq(design, response, rcond=None)
    if rank < n_regressors:
        raise SKTdaRankDeficiencyError(f"design matrix of {ts.label!r} has rank {rank} < {n_regressors}")

    residuals = response - design @ coef
    n_used = response.size
    rss = float(residuals @ residuals)
    if rss <= _RESIDUAL_RTOL * max(float(response @ response), 1.0):
        raise SKTdaRankDeficiencyError(f"series {ts.label!r} is fitted exactly; residual variance is zero")
    sigma2 = rss / (n_used - n_regressors)
    cov = sigma2 * np.linalg.inv(design.T @ design)

    return EcmFit(
        rho_hat=float(coef[0]),
        b=tuple(float(value) for value in coef[1 : lags + 1]),
        sigma_rho=float(np.sqrt(cov[0, 0])),
        residuals=TimeSeries(residuals, ts.label),
        n_used=n_used,
        intercept=float(coef[-1]) if intercept else 0.0,
        design=design,
    )


def adf_test(ts, lags=None, intercept=True):
    """Run the Augmented Dickey-Fuller test on ``ts``.

    ``lags=None`` selects :func:`default_lags` of the series length.
    """
    if lags is None:
        lags = default_lags(len(ts))
    fit = fit_ecm(ts, lags, intercept)
    t_p = fit.rho_hat / fit.sigma_rho
    values = critical_values(fit.n_used)
    reject = {level: bool(t_p < value) for level, value in values.items()}
    sktda_log.debug("adf %r: t_p=%.4f lags=%d n=%d", ts.label, t_p, lags, fit.n_used)
    return AdfResult(t_p=float(t_p), critical_values=values, reject_unit_root=reject, lags=lags, n_used=fit.n_used)


def integration_order(ts, max_order=DEFAULT_MAX_ORDER, lags=None, level=DEFAULT_SIGNIFICANCE):
    """Return the smallest number of differences after which ``ts`` is stationary.

    Raises :class:`sktda.exceptions.SKTdaOrderUndeterminedError` if no order
    up to ``max_order`` rejects the unit root at ``level``.
    """
    _check_level(level)
    if max_order < 0:
        raise SKTdaParameterError(f"max_order must be non-negative, got {max_order}")
    for order in range(max_order + 1):
        if adf_test(difference(ts, order), lags).rejects(level):
            sktda_log.info("series %r is integrated of order %d", ts.label, order)
            return order
    raise SKTdaOrderUndeterminedError(f"series {ts.label!r} is not stationary after {max_order} difference(s)")
