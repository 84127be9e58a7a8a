"""
This module provides seeded synthetic generators: the three-sine toy signal,
random walks, linearly cointegrated systems and a four-channel stand-in for
temperature-driven natural-frequency data with a nonlinear regime.

Every generator is deterministic given its arguments and seed.
"""

from dataclasses import asdict, dataclass

import numpy as np
from scipy.signal import lfilter

from .exceptions import SKTdaParameterError
from .series_core import MultiSeries, TimeSeries
from .utils import check_window, sktda_log

MIMIC_LABELS = ("w1", "w2", "w3", "w4")
MIMIC_TARGET = "w2"


@dataclass(frozen=True)
class Z24MimicConfig:
    """Parameters of :func:`gen_z24_mimic`.

    The shared driver is ``sin(2 pi t / period)`` plus a slow random walk,
    lowered by ``drop_depth`` inside ``regime``. Channel ``w2`` additionally
    rises by up to ``excursion_amplitude`` where the driver falls below its
    lowest value outside the regime.

    Outside the regime every channel also carries a disturbance of its own,
    a stationary first-order autoregression with standard deviation
    ``disturbance_std`` and correlation time ``disturbance_steps`` samples.
    The disturbance is absent inside the regime.
    """

    n: int = 3000
    period: int = 300
    regime: tuple = (1800, 2400)
    excursion_amplitude: float = 1.5
    noise_std: float = 0.02
    channel_couplings: tuple = (1.0, 0.8, 1.2, 0.9)
    drop_depth: float = 1.5
    walk_std: float = 0.01
    disturbance_std: float = 0.15
    disturbance_steps: float = 20.0
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "regime", tuple(int(bound) for bound in self.regime))
        object.__setattr__(self, "channel_couplings", tuple(float(c) for c in self.channel_couplings))
        if self.period < 8:
            raise SKTdaParameterError(f"period must be at least 8 samples, got {self.period}")
        if self.noise_std < 0 or self.walk_std < 0:
            raise SKTdaParameterError("noise_std and walk_std must be nonnegative")
        if self.disturbance_std < 0 or not self.disturbance_steps > 0:
            raise SKTdaParameterError(
                f"disturbance_std must be nonnegative and disturbance_steps positive, "
                f"got {self.disturbance_std} and {self.disturbance_steps}"
            )
        if len(self.channel_couplings) != len(MIMIC_LABELS):
            raise SKTdaParameterError(f"expected {len(MIMIC_LABELS)} channel couplings, got {self.channel_couplings}")
        check_window(self.regime, self.n)

    def to_dict(self):
        return asdict(self)


def _smoothstep(x):
    return x * x * (3.0 - 2.0 * x)


def gen_sine_mix(n, dt=0.1):
    """Return ``sin(t) + sin(2t) + sin(3t)`` sampled at ``t = k * dt``."""
    if n < 2:
        raise SKTdaParameterError(f"n must be at least 2, got {n}")
    if not dt > 0:
        raise SKTdaParameterError(f"dt must be positive, got {dt}")
    t = np.arange(n) * dt
    return TimeSeries(np.sin(t) + np.sin(2 * t) + np.sin(3 * t), "y")


def gen_random_walk(n, seed=0):
    """Return the cumulative sum of ``n`` unit Gaussian innovations."""
    if n < 1:
        raise SKTdaParameterError(f"n must be at least 1, got {n}")
    innovations = np.random.default_rng(seed).standard_normal(n)
    return TimeSeries(np.cumsum(innovations), "walk")


def gen_cointegrated_system(n, m, beta_true, seed=0, return_noise=False):
    """Return ``m`` channels ``y1..ym`` such that ``beta_true . y`` is white noise.

    The channels other than the first one with a nonzero weight are
    independent random walks; that channel absorbs the combination. With
    ``return_noise`` the injected noise series is returned as well.
    """
    beta = np.asarray(beta_true, dtype=float)
    if m < 2:
        raise SKTdaParameterError(f"a cointegrated system needs at least 2 channels, got {m}")
    if beta.shape != (m,):
        raise SKTdaParameterError(f"beta_true has {beta.size} entries for {m} channels")
    nonzero = np.flatnonzero(beta)
    if nonzero.size < 2:
        raise SKTdaParameterError("beta_true needs at least two nonzero weights")
    if n < 2:
        raise SKTdaParameterError(f"n must be at least 2, got {n}")

    rng = np.random.default_rng(seed)
    noise = rng.standard_normal(n)
    trends = np.cumsum(rng.standard_normal((n, m - 1)), axis=0)
    pivot = nonzero[0]
    data = np.empty((n, m))
    others = [k for k in range(m) if k != pivot]
    data[:, others] = trends
    data[:, pivot] = (noise - trends @ beta[others]) / beta[pivot]

    ms = MultiSeries.from_array(data, tuple(f"y{k + 1}" for k in range(m)))
    if return_noise:
        return ms, TimeSeries(noise, "noise")
    return ms


def _regime_plateau(n, regime):
    start, end = regime
    ramp = max((end - start) * 0.25, 1.0)
    index = np.arange(n, dtype=float)
    rising = _smoothstep(np.clip((index - start) / ramp, 0.0, 1.0))
    falling = _smoothstep(np.clip((end - 1 - index) / ramp, 0.0, 1.0))
    plateau = np.minimum(rising, falling)
    plateau[(index < start) | (index >= end)] = 0.0
    return plateau


def _disturbance(innovations, steps):
    """Unit-variance AR(1) columns with lag-one correlation ``exp(-1 / steps)``, started stationary."""
    phi = np.exp(-1.0 / steps)
    gain = np.sqrt(1.0 - phi * phi)
    first = innovations[:1]
    rest = lfilter([gain], [1.0, -phi], innovations[1:], axis=0, zi=phi * first)[0]
    return np.concatenate([first, rest])


def gen_z24_mimic(cfg=None):
    """Return the four channels ``w1..w4`` described by ``cfg``."""
    cfg = Z24MimicConfig() if cfg is None else cfg
    rng = np.random.default_rng(cfg.seed)
    n = cfg.n
    start, end = cfg.regime

    walk = cfg.walk_std * np.cumsum(rng.standard_normal(n))
    noise = rng.standard_normal((n, len(MIMIC_LABELS)))
    inside = np.zeros(n, dtype=bool)
    inside[start:end] = True
    driver = np.sin(2 * np.pi * np.arange(n) / cfg.period) + walk - cfg.drop_depth * _regime_plateau(n, cfg.regime)

    data = np.outer(driver, cfg.channel_couplings) + cfg.noise_std * noise
    disturbance = _disturbance(rng.standard_normal((n, len(MIMIC_LABELS))), cfg.disturbance_steps)
    data[~inside] += cfg.disturbance_std * disturbance[~inside]
    if cfg.excursion_amplitude != 0 and (~inside).any():
        threshold = driver[~inside].min()
        width = 0.5 * max(cfg.drop_depth, 0.1)
        excursion = cfg.excursion_amplitude * _smoothstep(np.clip((threshold - driver) / width, 0.0, 1.0))
        data[:, MIMIC_LABELS.index(MIMIC_TARGET)] += excursion
        sktda_log.debug("mimic excursion active on %d samples", int((excursion > 0).sum()))
    return MultiSeries.from_array(data, MIMIC_LABELS)
