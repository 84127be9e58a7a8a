import logging

import numpy as np
import pytest

from sktda.synth import Z24MimicConfig, gen_cointegrated_system, gen_z24_mimic
from sktda.utils import sktda_log

SMALL_MIMIC = {"n": 600, "period": 100, "regime": (300, 450)}
"""Reduced four-channel mimic keeping a full seasonal cycle on each side of the regime."""


@pytest.fixture(autouse=True)
def sktda_log_level():
    """Restore the package logger threshold changed by a test."""
    level = sktda_log.level
    yield
    sktda_log.setLevel(level)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def cointegrated_pair():
    return gen_cointegrated_system(2000, 2, (1.0, -2.0), seed=0)


@pytest.fixture(scope="session")
def small_mimic():
    return gen_z24_mimic(Z24MimicConfig(**SMALL_MIMIC))


@pytest.fixture
def small_pipeline(tmpdir):
    """Keyword arguments of a :class:`sktda.pipeline.PipelineConfig` small enough for the quick loop."""
    return dict(
        mimic=dict(SMALL_MIMIC),
        gp1_window=(0, 200),
        gp2_window=(250, 500),
        alpha=10,
        dim=3,
        max_dim=2,
        combined_dims=(0, 1),
        subsample=30,
        gp_restarts=1,
        gp_max_iter=15,
        train_stride=2,
        out=str(tmpdir.join("run")),
    )


@pytest.fixture
def caplog_sktda(caplog):
    caplog.set_level(logging.DEBUG, logger="sktda")
    return caplog
