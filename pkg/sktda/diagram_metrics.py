"""
This module computes p-Wasserstein distances between persistence diagrams
and distance matrices over labelled collections of diagrams.

Intervals are compared with the supremum metric; an interval left unmatched
is sent to the diagonal at cost ``(death - birth) / 2``.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np
import pandas as pd
from scipy.optimize import linear_sum_assignment

from .constants import DEFAULT_COMBINED_DIMS, DEFAULT_P
from .exceptions import SKTdaOracleSizeError, SKTdaParameterError, SKTdaShapeError
from .utils import sktda_log

ORACLE_MAX_INTERVALS = 7


@dataclass(frozen=True, eq=False)
class DiagramDistanceMatrix:
    """Per-dimension and combined (summed) distance matrices between labelled diagrams."""

    labels: tuple
    per_dimension: dict
    combined: np.ndarray
    p: float = DEFAULT_P
    essential: str = "truncate"

    def entry(self, first, second, dim=None):
        """Return the distance between diagrams ``first`` and ``second`` (combined if ``dim`` is None)."""
        i, j = self.labels.index(first), self.labels.index(second)
        matrix = self.combined if dim is None else self.per_dimension[dim]
        return float(matrix[i, j])


def _check_slice(intervals, name):
    intervals = np.asarray(intervals, dtype=float).reshape(-1, 2)
    if not np.all(np.isfinite(intervals)):
        raise SKTdaParameterError(f"diagram {name} has non-finite intervals; truncate or drop essential classes first")
    return intervals


def _check_p(p):
    if not p >= 1:
        raise SKTdaParameterError(f"Wasserstein exponent p must be at least 1, got {p}")


def _diagonal_cost(intervals):
    return (intervals[:, 1] - intervals[:, 0]) / 2.0


def _sup_distance(first, second):
    return np.max(np.abs(first[:, None, :] - second[None, :, :]), axis=2)


def wasserstein(b1, b2, p=DEFAULT_P):
    """Return the p-Wasserstein distance between two single-dimension diagrams.

    :param b1: ``(m, 2)`` array of ``(birth, death)`` rows.
    :param b2: ``(n, 2)`` array of ``(birth, death)`` rows.
    :param p: Exponent, at least 1.

    The optimal partial matching is found exactly by a linear assignment on
    the ``(m + n) x (m + n)`` matrix augmented with diagonal projections.
    """
    _check_p(p)
    b1, b2 = _check_slice(b1, "b1"), _check_slice(b2, "b2")
    # Fixed argument order keeps the result bitwise symmetric.
    if (len(b1), b1.tobytes()) > (len(b2), b2.tobytes()):
        b1, b2 = b2, b1
    m, n = len(b1), len(b2)
    if m + n == 0:
        return 0.0

    diag1 = _diagonal_cost(b1) ** p
    diag2 = _diagonal_cost(b2) ** p
    direct = _sup_distance(b1, b2) ** p
    forbidden = direct.sum() + diag1.sum() + diag2.sum() + 1.0

    # Rows: b1 points, then diagonal slots for b2. Columns: b2 points, then diagonal slots for b1.
    cost = np.zeros((m + n, m + n))
    cost[:m, :n] = direct
    cost[:m, n:] = forbidden
    cost[m:, :n] = forbidden
    cost[np.arange(m), n + np.arange(m)] = diag1
    cost[m + np.arange(n), np.arange(n)] = diag2

    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].sum() ** (1.0 / p))


def wasserstein_oracle(b1, b2, p=DEFAULT_P):
    """Return the p-Wasserstein distance by enumerating every partial matching.

    Limited to diagrams of at most seven intervals each.
    """
    _check_p(p)
    b1, b2 = _check_slice(b1, "b1"), _check_slice(b2, "b2")
    if len(b1) > ORACLE_MAX_INTERVALS or len(b2) > ORACLE_MAX_INTERVALS:
        raise SKTdaOracleSizeError(
            f"enumeration is limited to {ORACLE_MAX_INTERVALS} intervals per diagram, got {len(b1)} and {len(b2)}"
        )
    diag1 = _diagonal_cost(b1) ** p
    diag2 = _diagonal_cost(b2) ** p
    direct = _sup_distance(b1, b2) ** p if len(b1) and len(b2) else np.zeros((len(b1), len(b2)))

    @lru_cache(maxsize=None)
    def best(i, used):
        if i == len(b1):
            return sum(diag2[j] for j in range(len(b2)) if not used & (1 << j))
        options = [diag1[i] + best(i + 1, used)]
        for j in range(len(b2)):
            if not used & (1 << j):
                options.append(direct[i, j] + best(i + 1, used | (1 << j)))
        return min(options)

    return float(best(0, 0) ** (1.0 / p))


def diagram_distance_matrix(diagrams, p=DEFAULT_P, dims=DEFAULT_COMBINED_DIMS, essential="truncate", n_jobs=1):
    """Return the Wasserstein distances between every pair of labelled diagrams.

    :param diagrams: Sequence of ``(label, PersistenceDiagram)`` pairs.
    :param p: Wasserstein exponent.
    :param dims: Homology dimensions compared; ``combined`` sums over them.
    :param essential: ``"truncate"`` keeps essential classes with death at
      ``max_scale``; ``"drop"`` leaves them out.
    :param n_jobs: Number of threads computing entries.
    """
    _check_p(p)
    diagrams = list(diagrams)
    labels = tuple(label for label, _ in diagrams)
    if len(set(labels)) != len(labels):
        raise SKTdaParameterError(f"diagram labels are not unique: {list(labels)}")
    dims = tuple(dims)
    for label, diagram in diagrams:
        if diagram.max_dim <= max(dims, default=0):
            raise SKTdaShapeError(f"diagram {label!r} has no homology of dimension {max(dims)}")

    slices = [{k: diagram.dimension(k, essential) for k in dims} for _, diagram in diagrams]
    tasks = [(i, j, k) for i, j in combinations(range(len(diagrams)), 2) for k in dims]

    def compute(task):
        i, j, k = task
        return wasserstein(slices[i][k], slices[j][k], p)

    if n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as executor:
            values = list(executor.map(compute, tasks))
    else:
        values = [compute(task) for task in tasks]

    size = len(diagrams)
    per_dimension = {k: np.zeros((size, size)) for k in dims}
    for (i, j, k), value in zip(tasks, values):
        per_dimension[k][i, j] = per_dimension[k][j, i] = value
    combined = np.zeros((size, size))
    for k in dims:
        combined += per_dimension[k]
    sktda_log.info("computed %d Wasserstein distances between %d diagrams", len(tasks), size)
    return DiagramDistanceMatrix(labels, per_dimension, combined, float(p), essential)


def write_distance_matrix_csv(matrix, labels, path):
    """Write a labelled square matrix as CSV, labels on the first row and column."""
    labels = list(labels)
    frame = pd.DataFrame(np.asarray(matrix, dtype=float), index=labels, columns=labels)
    frame.to_csv(path, index_label="label", lineterminator="\n")
