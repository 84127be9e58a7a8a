"""This module turns a univariate series into a point cloud by time-delay embedding."""

from dataclasses import dataclass

import numpy as np

from .exceptions import SKTdaInsufficientDataError, SKTdaParameterError, SKTdaShapeError
from .utils import sktda_log


@dataclass(frozen=True, eq=False)
class PointCloud:
    """``n`` points of dimension ``dim``, one per row of ``points``."""

    points: np.ndarray
    source: str = ""

    def __post_init__(self):
        points = np.array(self.points, dtype=float)
        if points.ndim == 1:
            points = points[:, None]
        if points.ndim != 2 or points.shape[1] < 1:
            raise SKTdaShapeError(f"point cloud must be a 2-D array, got shape {points.shape}")
        if not np.all(np.isfinite(points)):
            raise SKTdaParameterError(f"point cloud {self.source!r} has non-finite coordinates")
        points.setflags(write=False)
        object.__setattr__(self, "points", points)

    @property
    def dim(self):
        return self.points.shape[1]

    def __len__(self):
        return self.points.shape[0]

    def take(self, indices, source=None):
        """Return the points at ``indices``."""
        return PointCloud(self.points[np.asarray(indices, dtype=int)], self.source if source is None else source)


def delay_embed(ts, d, alpha):
    """Return the points ``(y_k, y_{k+alpha}, ..., y_{k+(d-1)alpha})`` of ``ts``.

    ``alpha`` is counted in samples. A delay below 2, or a window ``(d-1)*alpha``
    longer than half the series, is legal but logged as an advisory.
    """
    if d < 1:
        raise SKTdaParameterError(f"embedding dimension must be at least 1, got {d}")
    if alpha < 1:
        raise SKTdaParameterError(f"delay must be at least 1, got {alpha}")
    span = (d - 1) * alpha
    n = len(ts)
    if n <= span:
        raise SKTdaInsufficientDataError(f"series {ts.label!r} of length {n} is too short for d={d}, alpha={alpha}")
    if d > 1 and alpha < 2:
        sktda_log.warning("delay alpha=%d is very small; the embedding will hug the diagonal", alpha)
    if span > n / 2:
        sktda_log.warning("embedding window (d-1)*alpha=%d exceeds half of the %d samples", span, n)

    count = n - span
    points = np.column_stack([ts.values[k * alpha : k * alpha + count] for k in range(d)])
    return PointCloud(points, f"{ts.label} d={d} alpha={alpha}")
