"""
This module implements exact Gaussian-process regression with a
squared-exponential kernel, used as the nonlinear cointegration model.

Inputs and targets are standardized internally. Hyperparameters are the
per-dimension lengthscales, the kernel variance and the noise variance, all
expressed in standardized units, and are chosen by multi-start maximization
of the log marginal likelihood.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.optimize
from scipy.spatial.distance import cdist

from .constants import DEFAULT_GP_GTOL, DEFAULT_GP_MAX_ITER, DEFAULT_GP_RESTARTS, DEFAULT_SEED
from .exceptions import (
    SKTdaInsufficientDataError,
    SKTdaOptimizationError,
    SKTdaParameterError,
    SKTdaShapeError,
)
from .series_core import TimeSeries
from .utils import check_window, sktda_log

MIN_NOISE_VARIANCE = 1e-6


@dataclass(frozen=True)
class GpConfig:
    """Optimizer settings of :func:`fit_gp`."""

    restarts: int = DEFAULT_GP_RESTARTS
    max_iter: int = DEFAULT_GP_MAX_ITER
    gtol: float = DEFAULT_GP_GTOL
    seed: int = DEFAULT_SEED
    n_jobs: int = 1
    train_stride: int = 1
    lengthscale_bounds: tuple = (1e-2, 1e3)
    variance_bounds: tuple = (1e-4, 1e4)
    noise_bounds: tuple = (MIN_NOISE_VARIANCE, 1e1)

    def __post_init__(self):
        if self.restarts < 1:
            raise SKTdaParameterError(f"restarts must be at least 1, got {self.restarts}")
        if self.max_iter < 1:
            raise SKTdaParameterError(f"max_iter must be at least 1, got {self.max_iter}")
        if self.train_stride < 1:
            raise SKTdaParameterError(f"train_stride must be at least 1, got {self.train_stride}")
        if self.noise_bounds[0] < MIN_NOISE_VARIANCE:
            raise SKTdaParameterError(f"noise variance lower bound must be at least {MIN_NOISE_VARIANCE}")

    def bounds(self, n_dims):
        """Bounds of ``log(lengthscales..., kernel variance, noise variance)``."""
        pairs = [self.lengthscale_bounds] * n_dims + [self.variance_bounds, self.noise_bounds]
        return [(math.log(low), math.log(high)) for low, high in pairs]


@dataclass(frozen=True, eq=False)
class GpModel:
    """Fitted Gaussian process. Immutable, safe to share between threads."""

    kernel_lengthscales: np.ndarray
    kernel_variance: float
    noise_variance: float
    training_inputs: np.ndarray
    training_targets: np.ndarray
    cholesky: np.ndarray = field(repr=False)
    alpha: np.ndarray = field(repr=False)
    x_mean: np.ndarray
    x_scale: np.ndarray
    y_mean: float
    y_scale: float
    log_marginal_likelihood: float

    @property
    def n_dims(self):
        return self.training_inputs.shape[1]

    def kernel_matrix(self):
        """Return ``K + noise_variance * I`` over the standardized training inputs."""
        theta = np.log(np.r_[self.kernel_lengthscales, self.kernel_variance, self.noise_variance])
        return _covariance(theta, self.training_inputs)[0]

    def hyperparameters(self):
        """Return the learned hyperparameters as a JSON-serializable dict."""
        return {
            "kernel_lengthscales": [float(value) for value in self.kernel_lengthscales],
            "kernel_variance": float(self.kernel_variance),
            "noise_variance": float(self.noise_variance),
            "log_marginal_likelihood": float(self.log_marginal_likelihood),
            "x_mean": [float(value) for value in self.x_mean],
            "x_scale": [float(value) for value in self.x_scale],
            "y_mean": float(self.y_mean),
            "y_scale": float(self.y_scale),
            "n_train": int(self.training_inputs.shape[0]),
        }


def _covariance(theta, inputs):
    n_dims = inputs.shape[1]
    lengthscales = np.exp(theta[:n_dims])
    kernel_variance, noise_variance = np.exp(theta[n_dims]), np.exp(theta[n_dims + 1])
    scaled = inputs / lengthscales
    kernel = kernel_variance * np.exp(-0.5 * cdist(scaled, scaled, "sqeuclidean"))
    covariance = kernel + noise_variance * np.eye(inputs.shape[0])
    return covariance, kernel, lengthscales, noise_variance


def log_marginal_likelihood(theta, inputs, targets):
    """Return the log marginal likelihood and its gradient with respect to ``theta``.

    ``theta`` is ``log(lengthscale_1, ..., lengthscale_d, kernel variance, noise variance)``.
    The value is ``-inf`` (zero gradient) when the covariance is not positive definite.
    """
    theta = np.asarray(theta, dtype=float)
    inputs = np.asarray(inputs, dtype=float)
    targets = np.asarray(targets, dtype=float)
    n_samples, n_dims = inputs.shape
    covariance, kernel, lengthscales, noise_variance = _covariance(theta, inputs)
    try:
        lower = scipy.linalg.cholesky(covariance, lower=True)
    except scipy.linalg.LinAlgError:
        return -np.inf, np.zeros_like(theta)

    alpha = scipy.linalg.cho_solve((lower, True), targets)
    value = -0.5 * targets @ alpha - np.log(np.diag(lower)).sum() - 0.5 * n_samples * math.log(2 * math.pi)

    inner = np.outer(alpha, alpha) - scipy.linalg.cho_solve((lower, True), np.eye(n_samples))
    gradient = np.empty_like(theta)
    for k in range(n_dims):
        squared = (inputs[:, k, None] - inputs[None, :, k]) ** 2 / lengthscales[k] ** 2
        gradient[k] = 0.5 * np.sum(inner * kernel * squared)
    gradient[n_dims] = 0.5 * np.sum(inner * kernel)
    gradient[n_dims + 1] = 0.5 * noise_variance * np.trace(inner)
    return float(value), gradient


def _scale(values, axis=None):
    center = values.mean(axis=axis)
    spread = values.std(axis=axis)
    spread = np.where(spread > 0, spread, 1.0)
    return center, spread


def _as_inputs(inputs, n_dims=None):
    inputs = np.asarray(inputs, dtype=float)
    if inputs.ndim == 1:
        inputs = inputs[:, None]
    if inputs.ndim != 2 or (n_dims is not None and inputs.shape[1] != n_dims):
        raise SKTdaShapeError(f"inputs of shape {inputs.shape} do not have {n_dims} column(s)")
    return inputs


def _optimize(theta0, inputs, targets, bounds, config):
    def objective(theta):
        value, gradient = log_marginal_likelihood(theta, inputs, targets)
        if not np.isfinite(value):
            return np.inf, np.zeros_like(theta)
        return -value, -gradient

    candidates = [(log_marginal_likelihood(theta0, inputs, targets)[0], theta0)]
    try:
        result = scipy.optimize.minimize(
            objective,
            theta0,
            jac=True,
            method="L-BFGS-B",
            bounds=bounds,
            options={"maxiter": config.max_iter, "gtol": config.gtol},
        )
    except (ValueError, FloatingPointError, np.linalg.LinAlgError) as err:
        sktda_log.warning("GP restart from %s failed: %s", np.exp(theta0), err)
    else:
        candidates.append((log_marginal_likelihood(result.x, inputs, targets)[0], result.x))
    return max(candidates, key=lambda candidate: candidate[0] if np.isfinite(candidate[0]) else -np.inf)


def _initial_points(n_dims, config):
    rng = np.random.default_rng(config.seed)
    points = [np.log(np.r_[np.ones(n_dims), 1.0, 0.1])]
    for _ in range(config.restarts - 1):
        points.append(
            np.r_[
                rng.uniform(math.log(0.1), math.log(10.0), n_dims),
                rng.uniform(math.log(0.1), math.log(10.0)),
                rng.uniform(math.log(1e-4), math.log(1.0)),
            ]
        )
    bounds = np.array(config.bounds(n_dims))
    return [np.clip(point, bounds[:, 0], bounds[:, 1]) for point in points]


def fit_gp(inputs, targets, config=None):
    """Fit a Gaussian process to ``targets`` as a function of ``inputs``.

    :param inputs: ``(n_train, d_in)`` matrix (a vector is read as ``d_in = 1``).
    :param targets: ``n_train`` values.
    :param config: :class:`GpConfig`; defaults are used if ``None``.
    """
    config = GpConfig() if config is None else config
    inputs = _as_inputs(inputs)
    targets = np.asarray(targets, dtype=float).ravel()
    n_train, n_dims = inputs.shape
    if targets.size != n_train:
        raise SKTdaShapeError(f"{targets.size} targets for {n_train} inputs")
    if n_train < n_dims + 2:
        raise SKTdaInsufficientDataError(f"{n_train} training points are too few for {n_dims} input dimension(s)")
    if not (np.all(np.isfinite(inputs)) and np.all(np.isfinite(targets))):
        raise SKTdaParameterError("GP training data must be finite")

    x_mean, x_scale = _scale(inputs, axis=0)
    y_mean, y_scale = _scale(targets)
    x_train = (inputs - x_mean) / x_scale
    y_train = (targets - y_mean) / y_scale

    bounds = config.bounds(n_dims)
    starts = _initial_points(n_dims, config)
    sktda_log.info("fitting GP on %d points x %d inputs with %d start(s)", n_train, n_dims, len(starts))
    if config.n_jobs > 1:
        with ThreadPoolExecutor(max_workers=config.n_jobs) as executor:
            results = list(executor.map(lambda theta0: _optimize(theta0, x_train, y_train, bounds, config), starts))
    else:
        results = [_optimize(theta0, x_train, y_train, bounds, config) for theta0 in starts]

    finite = [result for result in results if np.isfinite(result[0])]
    if not finite:
        raise SKTdaOptimizationError("log marginal likelihood is not finite at any start")
    best_value, best_theta = max(finite, key=lambda result: result[0])

    covariance = _covariance(best_theta, x_train)[0]
    lower = scipy.linalg.cholesky(covariance, lower=True)
    alpha = scipy.linalg.cho_solve((lower, True), y_train)
    hyper = np.exp(best_theta)
    sktda_log.info(
        "GP hyperparameters: lengthscales %s, kernel variance %.4g, noise variance %.4g",
        np.array2string(hyper[:n_dims], precision=4),
        hyper[n_dims],
        hyper[n_dims + 1],
    )
    return GpModel(
        kernel_lengthscales=hyper[:n_dims],
        kernel_variance=float(hyper[n_dims]),
        noise_variance=float(hyper[n_dims + 1]),
        training_inputs=x_train,
        training_targets=y_train,
        cholesky=lower,
        alpha=alpha,
        x_mean=np.atleast_1d(x_mean),
        x_scale=np.atleast_1d(x_scale),
        y_mean=float(y_mean),
        y_scale=float(y_scale),
        log_marginal_likelihood=float(best_value),
    )


def predict(model, inputs):
    """Return the posterior mean and latent variance at ``inputs``, on the original target scale."""
    inputs = (_as_inputs(inputs, model.n_dims) - model.x_mean) / model.x_scale
    cross = model.kernel_variance * np.exp(
        -0.5
        * cdist(inputs / model.kernel_lengthscales, model.training_inputs / model.kernel_lengthscales, "sqeuclidean")
    )
    mean = cross @ model.alpha
    solved = scipy.linalg.solve_triangular(model.cholesky, cross.T, lower=True)
    variance = np.clip(model.kernel_variance - np.sum(solved**2, axis=0), 0.0, None)
    return model.y_mean + model.y_scale * mean, variance * model.y_scale**2


def _training_data(ms, target, regressors, train_window, stride):
    regressors = list(regressors)
    if target in regressors:
        raise SKTdaParameterError(f"target {target!r} is also a regressor")
    if not regressors:
        raise SKTdaParameterError("at least one regressor is required")
    check_window(train_window, len(ms))
    start, end = train_window
    inputs = ms.as_array(regressors)
    targets = ms[target].values
    return inputs, inputs[start:end:stride], targets[start:end:stride]


def gp_predictions(ms, target, regressors, train_window, config=None):
    """Fit the target channel on ``train_window`` and predict it over every sample.

    Returns the fitted model and the prediction series.
    """
    config = GpConfig() if config is None else config
    inputs, train_inputs, train_targets = _training_data(ms, target, regressors, train_window, config.train_stride)
    model = fit_gp(train_inputs, train_targets, config)
    mean, _ = predict(model, inputs)
    return model, TimeSeries(mean, target)


def gp_residuals(ms, target, regressors, train_window, config=None):
    """Return ``target - GP(regressors)`` over every sample, the GP being trained on ``train_window``."""
    _, prediction = gp_predictions(ms, target, regressors, train_window, config)
    return TimeSeries(ms[target].values - prediction.values, target)
