"""
This module builds Vietoris-Rips filtrations and computes their persistent
homology over Z/2, either with giotto-ph's ripser or by the boundary-matrix
reduction implemented here.

Scales are simplex diameters: a simplex enters the filtration at the largest
pairwise distance among its vertices. A ball-radius convention ``eps`` maps
to the scale ``2 * eps``.
"""

from dataclasses import dataclass
from itertools import combinations

import matplotlib
import numpy as np
import pandas as pd
from gph import ripser_parallel
from matplotlib.figure import Figure
from scipy.spatial.distance import pdist, squareform

from .constants import BACKENDS, DEFAULT_BACKEND, DEFAULT_MAX_DIM, DEFAULT_MAX_SIMPLICES
from .embedding import PointCloud
from .exceptions import (
    SKTdaEmptyDataError,
    SKTdaParameterError,
    SKTdaParseError,
    SKTdaShapeError,
    SKTdaSizeLimitError,
)
from .utils import sktda_log

DIAGRAM_COLUMNS = ("dimension", "birth", "death", "essential")


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Symmetric matrix of pairwise distances with a zero diagonal."""

    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=float)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.shape[0] < 1:
            raise SKTdaShapeError(f"distance matrix must be square and nonempty, got shape {entries.shape}")
        if not np.allclose(entries, entries.T, rtol=0.0, atol=1e-12) or np.any(np.diag(entries) != 0):
            raise SKTdaParameterError("distance matrix must be symmetric with a zero diagonal")
        if np.any(entries < 0) or not np.all(np.isfinite(entries)):
            raise SKTdaParameterError("distances must be finite and nonnegative")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def n(self):
        return self.entries.shape[0]


@dataclass(frozen=True, eq=False)
class Filtration:
    """Simplices ``(vertices, scale, dimension)`` in filtration order."""

    simplices: tuple
    max_dim: int
    max_scale: float
    n_vertices: int
    is_cone: bool = False

    def counts(self):
        """Return the number of simplices of each dimension ``0..max_dim``."""
        counts = [0] * (self.max_dim + 1)
        for _, _, dim in self.simplices:
            counts[dim] += 1
        return counts

    def __len__(self):
        return len(self.simplices)


@dataclass(frozen=True, eq=False)
class PersistenceDiagram:
    """Persistence intervals of homology dimensions ``0..max_dim-1``.

    ``intervals[k]`` is an ``(m, 2)`` array of ``(birth, death)`` rows and
    ``essential[k]`` flags the classes that never die; their death is
    truncated to ``max_scale``.
    """

    intervals: dict
    essential: dict
    max_dim: int
    max_scale: float

    @property
    def dimensions(self):
        return tuple(range(self.max_dim))

    def dimension(self, k, essential="truncate"):
        """Return the ``(birth, death)`` rows of dimension ``k``.

        ``essential="drop"`` leaves out the never-dying classes.
        """
        if essential not in ("truncate", "drop"):
            raise SKTdaParameterError(f"essential mode must be 'truncate' or 'drop', got {essential!r}")
        if k not in self.intervals:
            return np.empty((0, 2))
        rows = self.intervals[k]
        if essential == "drop":
            rows = rows[~self.essential[k]]
        return rows

    def persistence(self, k):
        rows = self.dimension(k)
        return rows[:, 1] - rows[:, 0]

    def to_frame(self):
        dims = self.dimensions
        rows = np.concatenate([self.intervals[k] for k in dims]).reshape(-1, 2)
        return pd.DataFrame(
            {
                "dimension": np.concatenate([np.full(len(self.intervals[k]), k, dtype=int) for k in dims]),
                "birth": rows[:, 0],
                "death": rows[:, 1],
                "essential": np.concatenate([self.essential[k] for k in dims]).astype(int),
            },
            columns=list(DIAGRAM_COLUMNS),
        )


def pairwise_distances(pc):
    """Return the Euclidean distances between the points of ``pc``."""
    if len(pc) < 1:
        raise SKTdaEmptyDataError("cannot compute distances of an empty point cloud")
    if len(pc) == 1:
        return DistanceMatrix(np.zeros((1, 1)))
    return DistanceMatrix(squareform(pdist(pc.points, "euclidean")))


def maxmin_subsample(pc, k, seed=0):
    """Return ``k`` points of ``pc`` chosen by farthest-point (maxmin) sampling.

    The first point is drawn with ``seed``; each next point maximizes the
    distance to the points already chosen.
    """
    n = len(pc)
    if not 1 <= k <= n:
        raise SKTdaParameterError(f"subsample size {k} is not in [1, {n}]")
    rng = np.random.default_rng(seed)
    chosen = np.empty(k, dtype=int)
    chosen[0] = rng.integers(n)
    nearest = np.linalg.norm(pc.points - pc.points[chosen[0]], axis=1)
    nearest[chosen[0]] = -1.0
    for i in range(1, k):
        chosen[i] = int(np.argmax(nearest))
        nearest = np.minimum(nearest, np.linalg.norm(pc.points - pc.points[chosen[i]], axis=1))
        nearest[chosen[: i + 1]] = -1.0
    if k < n:
        sktda_log.info("subsampled %d of %d points of %r", k, n, pc.source)
    return pc.take(chosen, f"{pc.source} maxmin={k}")


def enclosing_radius(dm):
    """Return ``min_i max_j d(i, j)``, beyond which the Rips complex is a cone."""
    return float(dm.entries.max(axis=1).min())


def _default_max_scale(dm):
    radius = enclosing_radius(dm)
    return radius if radius > 0 else 1.0


def _checked_scale(dm, max_dim, max_scale):
    if max_dim < 1:
        raise SKTdaParameterError(f"max_dim must be at least 1, got {max_dim}")
    if max_scale is None:
        max_scale = _default_max_scale(dm)
    if not max_scale > 0:
        raise SKTdaParameterError(f"max_scale must be positive, got {max_scale}")
    return float(max_scale)


def vr_filtration(dm, max_dim=DEFAULT_MAX_DIM, max_scale=None, max_simplices=DEFAULT_MAX_SIMPLICES):
    """Return every simplex of dimension ``<= max_dim`` and diameter ``<= max_scale``.

    :param dm: :class:`DistanceMatrix`.
    :param max_dim: Largest simplex dimension. Homology is reported below it.
    :param max_scale: Largest scale. ``None`` selects the enclosing radius (1.0 if it is zero).
    :param max_simplices: Raise :class:`sktda.exceptions.SKTdaSizeLimitError` past this count.
    """
    max_scale = _checked_scale(dm, max_dim, max_scale)
    entries = dm.entries
    n = dm.n
    upper = [{int(u) + v + 1 for u in np.flatnonzero(entries[v, v + 1 :] <= max_scale)} for v in range(n)]
    simplices = [((v,), 0.0, 0) for v in range(n)]

    # Depth-first clique expansion; each simplex is extended by larger common neighbours only.
    stack = [((v,), 0.0, upper[v]) for v in range(n - 1, -1, -1)]
    while stack:
        vertices, scale, candidates = stack.pop()
        if len(vertices) > max_dim:
            continue
        for w in sorted(candidates, reverse=True):
            diameter = max(scale, float(entries[list(vertices), w].max()))
            face = vertices + (w,)
            simplices.append((face, diameter, len(face) - 1))
            if len(simplices) > max_simplices:
                raise SKTdaSizeLimitError(
                    f"filtration exceeds {max_simplices} simplices (max_dim={max_dim}, max_scale={max_scale:.6g}, "
                    f"{n} points); lower the subsample size or max_scale"
                )
            if len(face) <= max_dim:
                stack.append((face, diameter, candidates & upper[w]))

    simplices.sort(key=lambda simplex: (simplex[1], simplex[2], simplex[0]))
    filtration = Filtration(
        simplices=tuple(simplices),
        max_dim=max_dim,
        max_scale=max_scale,
        n_vertices=n,
        is_cone=n > 0 and enclosing_radius(dm) <= max_scale,
    )
    sktda_log.info(
        "Rips filtration of %d points up to dimension %d at scale %.6g: %s simplices",
        n,
        max_dim,
        max_scale,
        "/".join(str(count) for count in filtration.counts()),
    )
    return filtration


def _required_deaths(filtration):
    # In a cone every class of dimension < max_dim dies, except one component.
    counts = filtration.counts()
    required = {1: filtration.n_vertices - 1}
    for k in range(2, filtration.max_dim + 1):
        required[k] = counts[k - 1] - required[k - 1]
    return required


def persistent_homology(f):
    """Reduce the boundary matrix of ``f`` over Z/2 and return its :class:`PersistenceDiagram`.

    Columns are reduced from the top dimension down, clearing the columns of
    simplices already known to be paired. Zero-length intervals are dropped.
    """
    simplices = f.simplices
    index = {vertices: i for i, (vertices, _, _) in enumerate(simplices)}
    scales = [scale for _, scale, _ in simplices]
    dims = [dim for _, _, dim in simplices]
    by_dim = [[] for _ in range(f.max_dim + 1)]
    for i, dim in enumerate(dims):
        by_dim[dim].append(i)

    required = _required_deaths(f) if f.is_cone else {}
    pivots = {}
    cleared = set()
    pairs = []
    for k in range(f.max_dim, 0, -1):
        target = required.get(k)
        found = 0
        for j in by_dim[k]:
            if target is not None and found >= target:
                break
            if j in cleared:
                continue
            column = {index[face] for face in combinations(simplices[j][0], k)}
            while column:
                low = max(column)
                other = pivots.get(low)
                if other is None:
                    break
                column ^= other
            if column:
                low = max(column)
                pivots[low] = column
                cleared.add(low)
                pairs.append((low, j))
                found += 1

    deaths = {j for _, j in pairs}
    rows = {k: [] for k in range(f.max_dim)}
    for low, j in pairs:
        if dims[low] < f.max_dim and scales[j] > scales[low]:
            rows[dims[low]].append((scales[low], scales[j], False))
    for i, dim in enumerate(dims):
        if dim < f.max_dim and i not in cleared and i not in deaths and scales[i] < f.max_scale:
            rows[dim].append((scales[i], f.max_scale, True))
    return _diagram(rows, f.max_dim, f.max_scale)


def _diagram(rows, max_dim, max_scale):
    """Build a diagram from ``(birth, death, essential)`` rows, sorted within each dimension."""
    intervals, essential = {}, {}
    for k in range(max_dim):
        items = sorted(rows.get(k, ()))
        intervals[k] = np.array([(birth, death) for birth, death, _ in items], dtype=float).reshape(-1, 2)
        essential[k] = np.array([flag for _, _, flag in items], dtype=bool)
    sktda_log.debug("persistence: %s", ", ".join(f"H{k}={len(intervals[k])}" for k in intervals))
    return PersistenceDiagram(intervals=intervals, essential=essential, max_dim=max_dim, max_scale=max_scale)


def _snap(values, scales):
    # Nearest entry of the sorted array ``scales``.
    if scales.size == 1:
        return np.full(values.shape, scales[0])
    upper = np.clip(np.searchsorted(scales, values), 1, scales.size - 1)
    lower = upper - 1
    nearer = np.where(scales[upper] - values < values - scales[lower], upper, lower)
    return scales[nearer]


def ripser_persistence(dm, max_dim=DEFAULT_MAX_DIM, max_scale=None, n_threads=1):
    """Return the persistence diagram of the Rips filtration of ``dm`` computed by giotto-ph.

    The diagram follows the conventions of :func:`persistent_homology`:
    homology below ``max_dim``, essential classes truncated at ``max_scale``,
    zero-length intervals dropped. giotto-ph reports single-precision values;
    each one is mapped back to the nearest distance of ``dm``.

    :param dm: :class:`DistanceMatrix`.
    :param max_dim: Largest simplex dimension. Homology is reported below it.
    :param max_scale: Largest scale. ``None`` selects the enclosing radius (1.0 if it is zero).
    :param n_threads: Threads used by giotto-ph.
    """
    max_scale = _checked_scale(dm, max_dim, max_scale)
    rows = {k: [] for k in range(max_dim)}
    if dm.n == 1:
        rows[0].append((0.0, max_scale, True))
        return _diagram(rows, max_dim, max_scale)

    entries = dm.entries
    distances = entries[np.triu_indices(dm.n, 1)]
    scales = np.union1d([0.0], distances[distances <= max_scale])
    dgms = ripser_parallel(
        np.array(entries), maxdim=max_dim - 1, thresh=max_scale, metric="precomputed", n_threads=n_threads
    )["dgms"]
    for k, pairs in enumerate(dgms[:max_dim]):
        pairs = np.asarray(pairs, dtype=float).reshape(-1, 2)
        finite = np.isfinite(pairs[:, 1])
        births = _snap(pairs[:, 0], scales)
        deaths = np.full(len(pairs), max_scale)
        deaths[finite] = _snap(pairs[finite, 1], scales)
        keep = np.where(finite, deaths > births, births < max_scale)
        rows[k] = [(float(b), float(d), not flag) for b, d, flag in zip(births[keep], deaths[keep], finite[keep])]
    sktda_log.info(
        "ripser persistence of %d points up to dimension %d at scale %.6g", dm.n, max_dim - 1, max_scale
    )
    return _diagram(rows, max_dim, max_scale)


def rips_diagram(
    dm,
    max_dim=DEFAULT_MAX_DIM,
    max_scale=None,
    backend=DEFAULT_BACKEND,
    max_simplices=DEFAULT_MAX_SIMPLICES,
    n_threads=1,
):
    """Return the Rips persistence diagram of ``dm`` computed by ``backend``.

    ``"ripser"`` runs giotto-ph with ``n_threads`` threads; ``"reduction"``
    builds the filtration explicitly, bounded by ``max_simplices``.
    """
    if backend not in BACKENDS:
        raise SKTdaParameterError(f"unknown persistence backend {backend!r}, expected one of {BACKENDS}")
    if backend == "ripser":
        return ripser_persistence(dm, max_dim, max_scale, n_threads)
    return persistent_homology(vr_filtration(dm, max_dim, max_scale, max_simplices))


def vr_persistence(
    pc,
    max_dim=DEFAULT_MAX_DIM,
    max_scale=None,
    max_simplices=DEFAULT_MAX_SIMPLICES,
    backend=DEFAULT_BACKEND,
    n_threads=1,
):
    """Return the Rips persistence diagram of point cloud ``pc``."""
    return rips_diagram(pairwise_distances(pc), max_dim, max_scale, backend, max_simplices, n_threads)


def betti_at(pd_, scale):
    """Return the Betti numbers ``[b_0, ..., b_{max_dim-1}]`` at ``scale``."""
    if not 0 <= scale <= pd_.max_scale:
        raise SKTdaParameterError(f"scale {scale} is not in [0, {pd_.max_scale}]")
    betti = []
    for k in pd_.dimensions:
        births, deaths = pd_.intervals[k][:, 0], pd_.intervals[k][:, 1]
        alive = (births <= scale) & ((scale < deaths) | pd_.essential[k])
        betti.append(int(alive.sum()))
    return betti


def betti_curve(pd_, scales):
    """Return a ``(len(scales), max_dim)`` matrix of Betti numbers, one row per scale."""
    return np.array([betti_at(pd_, scale) for scale in scales], dtype=int).reshape(-1, pd_.max_dim)


def write_diagram_csv(pd_, path):
    """Write ``pd_`` as rows ``dimension,birth,death,essential``."""
    pd_.to_frame().to_csv(path, index=False, lineterminator="\n")


def read_diagram_csv(path, max_dim=None):
    """Read a diagram written by :func:`write_diagram_csv`.

    ``max_dim`` defaults to one more than the largest dimension present.
    ``max_scale`` is recovered as the largest death.
    """
    try:
        frame = pd.read_csv(path)
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as err:
        raise SKTdaParseError(f"{path}: {err}") from err
    missing = [column for column in DIAGRAM_COLUMNS if column not in frame.columns]
    if missing:
        raise SKTdaParseError(f"{path}: diagram lacks column(s) {missing}")
    dims = frame["dimension"].to_numpy(dtype=int)
    if max_dim is None:
        max_dim = int(dims.max()) + 1 if dims.size else 1
    intervals, essential = {}, {}
    for k in range(max_dim):
        rows = frame[dims == k]
        intervals[k] = rows[["birth", "death"]].to_numpy(dtype=float).reshape(-1, 2)
        essential[k] = rows["essential"].to_numpy(dtype=int).astype(bool)
    max_scale = float(frame["death"].max()) if len(frame) else 1.0
    return PersistenceDiagram(intervals=intervals, essential=essential, max_dim=max_dim, max_scale=max_scale)


def write_diagram_svg(pd_, path, title=""):
    """Draw ``pd_`` as a birth/death scatter with the diagonal and save it as SVG."""
    figure = Figure(figsize=(4.5, 4.5))
    axes = figure.add_subplot()
    top = pd_.max_scale * 1.05
    axes.plot([0, top], [0, top], color="0.5", linewidth=0.8)
    for k in pd_.dimensions:
        rows = pd_.intervals[k]
        flags = pd_.essential[k]
        points = axes.scatter(rows[~flags, 0], rows[~flags, 1], s=12, label=f"H{k}")
        if flags.any():
            axes.scatter(rows[flags, 0], rows[flags, 1], s=24, marker="^", color=points.get_facecolor())
    axes.axhline(pd_.max_scale, color="0.7", linestyle="--", linewidth=0.6)
    axes.set_xlim(0, top)
    axes.set_ylim(0, top)
    axes.set_xlabel("birth")
    axes.set_ylabel("death")
    if title:
        axes.set_title(title)
    axes.legend(loc="lower right")
    with matplotlib.rc_context({"svg.hashsalt": "sktda", "svg.fonttype": "none"}):
        figure.savefig(path, format="svg", metadata={"Date": None})


def cloud_from_csv(path):
    """Read a point cloud written one point per row (header ``x0, x1, ...``)."""
    try:
        frame = pd.read_csv(path)
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as err:
        raise SKTdaParseError(f"{path}: {err}") from err
    try:
        points = frame.to_numpy(dtype=float)
    except ValueError as err:
        raise SKTdaParseError(f"{path}: {err}") from err
    return PointCloud(points, str(path))
