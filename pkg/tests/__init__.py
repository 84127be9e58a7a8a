"""Shared helpers of the scikit-tda-coint test suite: brute-force homology
oracles, random fixtures and small file writers.
"""

import os
import sys
from contextlib import contextmanager
from itertools import combinations

import numpy as np

from sktda.embedding import PointCloud
from sktda.series_core import MultiSeries, TimeSeries, write_csv


@contextmanager
def push_argv(argv):
    old_argv = sys.argv
    sys.argv = argv
    yield
    sys.argv = old_argv


def gf2_rank(rows):
    """Return the rank over Z/2 of a matrix given as a list of integer bit masks."""
    pivots = {}
    rank = 0
    for row in rows:
        while row:
            high = row.bit_length() - 1
            if high not in pivots:
                pivots[high] = row
                rank += 1
                break
            row ^= pivots[high]
    return rank


def rips_simplices(entries, scale, max_dim):
    """Return ``{dim: [vertex tuples]}`` of every simplex of diameter ``<= scale``."""
    n = entries.shape[0]
    simplices = {k: [] for k in range(max_dim + 1)}
    for k in range(max_dim + 1):
        for vertices in combinations(range(n), k + 1):
            if all(entries[u, v] <= scale for u, v in combinations(vertices, 2)):
                simplices[k].append(vertices)
    return simplices


def brute_force_betti(entries, scale, max_dim):
    """Betti numbers ``b_0..b_{max_dim-1}`` of the Rips complex at ``scale``, from boundary ranks."""
    simplices = rips_simplices(entries, scale, max_dim)
    ranks = {0: 0}
    for k in range(1, max_dim + 1):
        position = {face: i for i, face in enumerate(simplices[k - 1])}
        rows = [
            sum(1 << position[face] for face in combinations(vertices, k)) for vertices in simplices[k]
        ]
        ranks[k] = gf2_rank(rows)
    return [len(simplices[k]) - ranks[k] - ranks[k + 1] for k in range(max_dim)]


def random_cloud(seed, n_max=8):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, n_max + 1))
    dim = int(rng.integers(2, 4))
    return PointCloud(rng.uniform(-1.0, 1.0, (n, dim)), f"random {seed}")


def random_diagram(rng, n_max=7):
    """Return up to ``n_max`` random ``(birth, death)`` rows with ``death > birth``."""
    size = int(rng.integers(0, n_max + 1))
    births = rng.uniform(0.0, 1.0, size)
    return np.column_stack([births, births + rng.uniform(0.01, 1.0, size)]).reshape(-1, 2)


def unit_square():
    return PointCloud([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]], "square")


def unit_circle(n=100):
    angles = 2 * np.pi * np.arange(n) / n
    return PointCloud(np.column_stack([np.cos(angles), np.sin(angles)]), "circle")


def write_series(path, columns):
    """Write ``{label: values}`` as a series CSV and return the path as a string."""
    ms = MultiSeries(tuple(TimeSeries(values, label) for label, values in columns.items()))
    write_csv(ms, str(path))
    return str(path)


def write_text(path, text):
    with open(str(path), "w", encoding="utf-8", newline="\n") as fp:
        fp.write(text)
    return str(path)


def list_files(directory):
    return sorted(os.listdir(str(directory)))


def read_bytes(path):
    with open(str(path), "rb") as fp:
        return fp.read()
