from dataclasses import replace

import numpy as np
import pytest

from sktda.cointegration import johansen, residual_series
from sktda.constants import DEFAULT_ALPHA, DEFAULT_EMBEDDING_DIM, DEFAULT_VECM_LAG
from sktda.embedding import delay_embed
from sktda.exceptions import SKTdaParameterError
from sktda.series_core import standardize
from sktda.synth import (
    MIMIC_LABELS,
    MIMIC_TARGET,
    Z24MimicConfig,
    gen_cointegrated_system,
    gen_random_walk,
    gen_sine_mix,
    gen_z24_mimic,
)
from sktda.vr_persistence import maxmin_subsample, vr_persistence


@pytest.fixture(scope="module")
def mimic():
    return gen_z24_mimic()


def loop_persistence(ts, size=400):
    cloud = delay_embed(standardize(ts), DEFAULT_EMBEDDING_DIM, DEFAULT_ALPHA)
    return vr_persistence(maxmin_subsample(cloud, size), max_dim=2).persistence(1)


def test_gen_sine_mix():
    ts = gen_sine_mix(600)
    assert len(ts) == 600
    t = 0.1 * 17
    assert ts.values[17] == pytest.approx(np.sin(t) + np.sin(2 * t) + np.sin(3 * t))


def test_gen_random_walk_is_seeded():
    first = gen_random_walk(100, seed=4)
    np.testing.assert_array_equal(first.values, gen_random_walk(100, seed=4).values)
    assert not np.array_equal(first.values, gen_random_walk(100, seed=5).values)


def test_gen_cointegrated_system():
    ms, noise = gen_cointegrated_system(300, 3, (0.0, 2.0, -1.0), seed=1, return_noise=True)
    assert ms.labels == ("y1", "y2", "y3")
    np.testing.assert_allclose(ms.as_array() @ [0.0, 2.0, -1.0], noise.values, atol=1e-9)


@pytest.mark.parametrize(
    "m, beta",
    (
        (1, (1.0,)),
        (2, (1.0, 0.0)),
        (3, (1.0, -1.0)),
    ),
)
def test_gen_cointegrated_system_invalid(m, beta):
    with pytest.raises(SKTdaParameterError):
        gen_cointegrated_system(100, m, beta)


def test_gen_z24_mimic_is_deterministic():
    first = gen_z24_mimic()
    second = gen_z24_mimic(Z24MimicConfig())
    assert first.labels == MIMIC_LABELS
    assert len(first) == 3000
    np.testing.assert_array_equal(first.as_array(), second.as_array())
    other = gen_z24_mimic(Z24MimicConfig(seed=1))
    assert not np.array_equal(first.as_array(), other.as_array())


def test_gen_z24_mimic_excursion_only_on_target():
    config = Z24MimicConfig(noise_std=0.0)
    flat = gen_z24_mimic(Z24MimicConfig(noise_std=0.0, excursion_amplitude=0.0))
    shaped = gen_z24_mimic(config)
    difference = shaped.as_array() - flat.as_array()
    target = MIMIC_LABELS.index(MIMIC_TARGET)
    assert np.all(np.delete(difference, target, axis=1) == 0.0)
    start, end = config.regime
    assert difference[:start, target].max() == 0.0
    assert difference[start:end, target].max() == pytest.approx(config.excursion_amplitude)


@pytest.mark.parametrize(
    "options",
    (
        {"period": 4},
        {"noise_std": -1.0},
        {"disturbance_std": -0.1},
        {"disturbance_steps": 0.0},
        {"channel_couplings": (1.0, 2.0)},
        {"regime": (2000, 1000)},
        {"n": 1000, "regime": (500, 1200)},
    ),
)
def test_z24_mimic_config_validation(options):
    with pytest.raises(SKTdaParameterError):
        Z24MimicConfig(**options)


def test_gen_z24_mimic_disturbance_outside_regime():
    config = Z24MimicConfig(noise_std=0.0)
    calm = gen_z24_mimic(replace(config, disturbance_std=0.0))
    difference = gen_z24_mimic(config).as_array() - calm.as_array()
    start, end = config.regime
    assert np.all(difference[start:end] == 0.0)
    outside = np.delete(difference, np.s_[start:end], axis=0)
    np.testing.assert_allclose(outside.std(axis=0), config.disturbance_std, rtol=0.3)
    lag_one = [np.corrcoef(column[:-1], column[1:])[0, 1] for column in outside.T]
    np.testing.assert_allclose(lag_one, np.exp(-1.0 / config.disturbance_steps), atol=0.03)


def test_gen_z24_mimic_target_has_dominant_loop(mimic):
    persistence = loop_persistence(mimic[MIMIC_TARGET])
    assert persistence.max() >= 3 * np.median(persistence)


def test_linear_residual_of_mimic_has_no_dominant_loop(mimic):
    result = johansen(mimic, DEFAULT_VECM_LAG)
    residual = residual_series(mimic, result.leading)
    assert loop_persistence(residual).max() < 0.5 * loop_persistence(mimic[MIMIC_TARGET]).max()
