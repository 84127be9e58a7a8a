#!/usr/bin/env python

"""test_cointegration
------------------------

Tests for the Johansen procedure and cointegrating residuals.
"""

import numpy as np
import pytest

from sktda.cointegration import cointegrating_residuals, johansen, residual_series
from sktda.exceptions import (
    SKTdaCollinearityError,
    SKTdaInsufficientDataError,
    SKTdaParameterError,
    SKTdaShapeError,
)
from sktda.series_core import MultiSeries, TimeSeries
from sktda.stationarity import adf_test
from sktda.synth import gen_cointegrated_system

BETA_TRUE = np.array([1.0, -2.0]) / np.sqrt(5.0)


def angle_degrees(first, second):
    cosine = abs(float(np.dot(first, second))) / (np.linalg.norm(first) * np.linalg.norm(second))
    return float(np.degrees(np.arccos(min(cosine, 1.0))))


def test_johansen_recovers_pair(cointegrated_pair):
    result = johansen(cointegrated_pair)
    assert result.labels == ("y1", "y2")
    assert result.lag == 1
    assert len(result.eigenvalues) == 2
    assert result.eigenvalues[0] >= result.eigenvalues[1] >= 0.0
    assert angle_degrees(result.leading, BETA_TRUE) < 2.0


def test_johansen_vector_normalization(cointegrated_pair):
    result = johansen(cointegrated_pair, lag=2)
    for vector in result.vectors:
        assert np.linalg.norm(vector) == pytest.approx(1.0)
        assert vector[np.flatnonzero(np.abs(vector) > 1e-12)[0]] > 0
    assert result.leading[0] > 0 > result.leading[1]


def test_johansen_channel_order_permutes_vector(cointegrated_pair):
    swapped = cointegrated_pair.select(("y2", "y1"))
    first = johansen(cointegrated_pair).leading
    second = johansen(swapped).leading
    np.testing.assert_allclose(np.abs(second[::-1]), np.abs(first), atol=1e-8)


def test_residual_series(cointegrated_pair):
    z = residual_series(cointegrated_pair, [1.0, -2.0])
    _, noise = gen_cointegrated_system(2000, 2, (1.0, -2.0), seed=0, return_noise=True)
    np.testing.assert_allclose(z.values, noise.values, atol=1e-9)
    assert z.label == "z"


def test_residual_series_shape(cointegrated_pair):
    with pytest.raises(SKTdaShapeError):
        residual_series(cointegrated_pair, [1.0, 2.0, 3.0])


def test_cointegrating_residuals_labels():
    ms = gen_cointegrated_system(500, 3, (1.0, 0.5, -1.0), seed=2)
    result = johansen(ms)
    residuals = cointegrating_residuals(ms, result)
    assert residuals.labels == ("eps1", "eps2", "eps3")
    np.testing.assert_allclose(residuals["eps1"].values, ms.as_array() @ result.leading)


def test_johansen_needs_two_channels():
    ms = MultiSeries((TimeSeries(np.arange(100.0), "a"),))
    with pytest.raises(SKTdaParameterError):
        johansen(ms)


def test_johansen_needs_samples():
    ms = gen_cointegrated_system(15, 2, (1.0, -1.0))
    with pytest.raises(SKTdaInsufficientDataError):
        johansen(ms)


def test_johansen_collinear_channels():
    walk = np.cumsum(np.random.default_rng(0).standard_normal(300))
    ms = MultiSeries.from_array(np.column_stack([walk, 2.0 * walk]), ("a", "b"))
    with pytest.raises(SKTdaCollinearityError):
        johansen(ms)


@pytest.mark.slow
def test_johansen_recovery_over_seeds():
    errors = []
    for seed in range(20):
        ms = gen_cointegrated_system(2000, 2, (1.0, -2.0), seed=seed)
        errors.append(angle_degrees(johansen(ms).leading, BETA_TRUE))
    assert np.mean(errors) <= 5.0

    stationary = 0
    for seed in range(100):
        ms = gen_cointegrated_system(2000, 2, (1.0, -2.0), seed=seed)
        stationary += adf_test(residual_series(ms, johansen(ms).leading)).rejects("5%")
    assert stationary >= 90


def test_johansen_is_invariant_under_channel_rescaling():
    ms = gen_cointegrated_system(1500, 3, (1.0, -2.0, 0.5), seed=2)
    factors = np.array([0.1, 3.0, 40.0])
    scaled = MultiSeries.from_array(ms.as_array() * factors, ms.labels)
    first = johansen(ms, lag=2)
    second = johansen(scaled, lag=2)
    np.testing.assert_allclose(second.eigenvalues, first.eigenvalues, rtol=1e-6, atol=1e-10)
    for original, rescaled in zip(first.vectors, second.vectors):
        expected = original / factors
        expected = expected / np.linalg.norm(expected)
        np.testing.assert_allclose(np.abs(rescaled), np.abs(expected), atol=1e-6)
        assert abs(float(np.dot(rescaled, expected))) == pytest.approx(1.0, abs=1e-9)


def test_residual_series_is_linear():
    ms = gen_cointegrated_system(400, 3, (1.0, 0.5, -1.0), seed=4)
    first, second = np.array([1.0, -2.0, 0.5]), np.array([0.3, 0.0, 4.0])
    combined = residual_series(ms, 2.5 * first - 1.5 * second).values
    expected = 2.5 * residual_series(ms, first).values - 1.5 * residual_series(ms, second).values
    np.testing.assert_allclose(combined, expected, rtol=1e-12, atol=1e-9)


@pytest.mark.slow
def test_independent_walks_are_not_cointegrated():
    stationary = 0
    for seed in range(100):
        rng = np.random.default_rng(seed)
        ms = MultiSeries.from_array(np.cumsum(rng.standard_normal((1000, 2)), axis=0), ("a", "b"))
        result = johansen(ms)
        assert result.eigenvalues[0] < 0.05
        stationary += adf_test(residual_series(ms, result.leading)).rejects("5%")
    assert stationary <= 20
