"""
This module provides the time-series data model shared by every analysis
stage: ingestion, cleaning, standardization and differencing.

Missing samples are carried as ``NaN`` until :func:`drop_missing` removes
them row-wise across all channels.
"""

from dataclasses import dataclass

import numpy as np
import pandas as pd

from .exceptions import (
    SKTdaDegenerateVarianceError,
    SKTdaEmptyDataError,
    SKTdaInsufficientDataError,
    SKTdaParameterError,
    SKTdaParseError,
    SKTdaSchemaError,
    SKTdaShapeError,
)
from .utils import sktda_log

MISSING_MARKERS = ("", "nan")


def _frozen(values):
    array = np.array(values, dtype=float)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Ordered real samples with a label."""

    values: np.ndarray
    label: str = ""

    def __post_init__(self):
        values = _frozen(self.values)
        if values.ndim != 1:
            raise SKTdaShapeError(f"series {self.label!r} must be one-dimensional, got shape {values.shape}")
        if values.size < 1:
            raise SKTdaEmptyDataError(f"series {self.label!r} is empty")
        object.__setattr__(self, "values", values)

    def __len__(self):
        return self.values.size

    def relabel(self, label):
        """Return the same samples under ``label``."""
        return TimeSeries(self.values, label)


@dataclass(frozen=True, eq=False)
class MultiSeries:
    """Aligned named channels sharing a sample index."""

    channels: tuple
    index: np.ndarray = None

    def __post_init__(self):
        channels = tuple(self.channels)
        if not channels:
            raise SKTdaEmptyDataError("a MultiSeries needs at least one channel")
        lengths = {len(channel) for channel in channels}
        if len(lengths) != 1:
            raise SKTdaShapeError(f"channels have unequal lengths {sorted(lengths)}")
        labels = [channel.label for channel in channels]
        if len(set(labels)) != len(labels):
            raise SKTdaParameterError(f"channel labels are not unique: {labels}")
        length = lengths.pop()
        index = np.arange(length) if self.index is None else np.array(self.index, dtype=int)
        if index.shape != (length,):
            raise SKTdaShapeError(f"index has shape {index.shape}, expected ({length},)")
        index.setflags(write=False)
        object.__setattr__(self, "channels", channels)
        object.__setattr__(self, "index", index)

    @classmethod
    def from_array(cls, array, labels, index=None):
        """Build a MultiSeries from a ``(n_samples, n_channels)`` array."""
        array = np.asarray(array, dtype=float)
        if array.ndim != 2 or array.shape[1] != len(labels):
            raise SKTdaShapeError(f"array of shape {array.shape} does not match {len(labels)} labels")
        return cls(tuple(TimeSeries(array[:, k], label) for k, label in enumerate(labels)), index)

    def __len__(self):
        return len(self.channels[0])

    def __getitem__(self, label):
        for channel in self.channels:
            if channel.label == label:
                return channel
        raise SKTdaSchemaError(f"no channel labelled {label!r} (have {list(self.labels)})")

    @property
    def labels(self):
        return tuple(channel.label for channel in self.channels)

    @property
    def n_channels(self):
        return len(self.channels)

    def select(self, labels):
        """Return the channels named in ``labels``, in that order."""
        return MultiSeries(tuple(self[label] for label in labels), self.index)

    def as_array(self, labels=None):
        """Return the ``(n_samples, n_channels)`` matrix of ``labels`` (default all)."""
        labels = self.labels if labels is None else labels
        return np.column_stack([self[label].values for label in labels])


def _parse_cell(cell, line, label):
    if not isinstance(cell, str):
        raise SKTdaParseError(f"line {line}: missing field for channel {label!r}")
    text = cell.strip()
    if text.lower() in MISSING_MARKERS:
        return np.nan
    try:
        value = float(text)
    except ValueError:
        raise SKTdaParseError(f"line {line}: {text!r} is not a number (channel {label!r})") from None
    if not np.isfinite(value):
        raise SKTdaParseError(f"line {line}: {text!r} is not finite (channel {label!r})")
    return value


def load_csv(path, header=None):
    """Read a CSV file with one header row of channel labels and one column per channel.

    :param path: CSV file, UTF-8, comma separated.
    :param header: Expected channel labels. If given, only these channels are
      returned, in this order. If ``None``, every column is a channel.

    Empty cells and ``NaN`` (any case) are kept as missing markers.
    """
    try:
        frame = pd.read_csv(
            path, dtype=str, keep_default_na=False, encoding="utf-8", skipinitialspace=True, index_col=False
        )
    except pd.errors.ParserError as err:
        raise SKTdaParseError(f"{path}: {err}") from err
    except pd.errors.EmptyDataError as err:
        raise SKTdaEmptyDataError(f"{path}: no header row") from err

    columns = [str(column).strip() for column in frame.columns]
    frame.columns = columns
    labels = columns if header is None else list(header)
    missing = [label for label in labels if label not in columns]
    if missing:
        raise SKTdaSchemaError(f"{path}: header lacks channel(s) {missing} (found {columns})")
    if frame.shape[0] == 0:
        raise SKTdaEmptyDataError(f"{path}: no data rows")

    # Line 1 is the header row.
    values = np.empty((frame.shape[0], len(labels)))
    for k, label in enumerate(labels):
        for row, cell in enumerate(frame[label].tolist()):
            values[row, k] = _parse_cell(cell, row + 2, label)

    sktda_log.info("loaded %d rows x %d channels from %s", values.shape[0], values.shape[1], path)
    return MultiSeries.from_array(values, labels)


def write_csv(ms, path):
    """Write ``ms`` as CSV readable by :func:`load_csv`."""
    frame = pd.DataFrame({channel.label: channel.values for channel in ms.channels})
    frame.to_csv(path, index=False, lineterminator="\n", na_rep="NaN")


def drop_missing(ms):
    """Remove every row holding a missing marker in any channel."""
    data = ms.as_array()
    keep = np.all(np.isfinite(data), axis=1)
    if not keep.any():
        raise SKTdaEmptyDataError("every row has at least one missing value")
    dropped = int((~keep).sum())
    if dropped:
        sktda_log.info("dropped %d of %d rows with missing values", dropped, keep.size)
    return MultiSeries.from_array(data[keep], ms.labels, ms.index[keep])


def standardize(ts):
    """Return ``ts`` with sample mean 0 and sample standard deviation 1 (divisor n-1)."""
    if len(ts) < 2:
        raise SKTdaInsufficientDataError(f"series {ts.label!r} needs at least 2 samples to standardize")
    values = ts.values
    std = values.std(ddof=1)
    if not std > 0:
        raise SKTdaDegenerateVarianceError(f"series {ts.label!r} is constant")
    return TimeSeries((values - values.mean()) / std, ts.label)


def difference(ts, order):
    """Apply the first-difference operator ``order`` times."""
    if order < 0:
        raise SKTdaParameterError(f"difference order must be non-negative, got {order}")
    if order >= len(ts):
        raise SKTdaInsufficientDataError(f"series {ts.label!r} of length {len(ts)} cannot be differenced {order} times")
    if order == 0:
        return ts
    return TimeSeries(np.diff(ts.values, n=order), ts.label)
