"""This module defines functions generally useful in scikit-tda-coint."""

import logging
import os
import re
from contextlib import contextmanager

from ..exceptions import SKTdaParameterError

sktda_log = logging.getLogger("sktda")
sktda_log.setLevel(logging.INFO)


def mkdir_p(path):
    """Ensure directory ``path`` exists. If needed, parent directories
    are created.
    """
    return os.makedirs(path, exist_ok=True)


@contextmanager
def quiet_logging(quiet):
    """This context manager temporarily sets the ``sktda`` logger threshold
    to WARNING if ``quiet`` is True.

    It yields ``quiet``.
    """
    old_level = sktda_log.getEffectiveLevel()
    if quiet:
        sktda_log.setLevel(logging.WARNING)
    try:
        yield quiet
    finally:
        sktda_log.setLevel(old_level)


def parse_window(text, length=None):
    """Parse a half-open ``start:end`` sample window.

    An empty ``end`` means the end of the series and requires ``length``.
    Returns the tuple ``(start, end)``.
    """
    match = re.fullmatch(r"\s*(\d*)\s*:\s*(\d*)\s*", text)
    if match is None:
        raise SKTdaParameterError(f"window {text!r} is not of the form start:end")
    start = int(match.group(1)) if match.group(1) else 0
    if match.group(2):
        end = int(match.group(2))
    elif length is not None:
        end = length
    else:
        raise SKTdaParameterError(f"window {text!r} has no end and the series length is unknown")
    check_window((start, end), length)
    return start, end


def check_window(window, length=None):
    """Raise :class:`sktda.exceptions.SKTdaParameterError` if ``window`` is empty
    or reaches past ``length``."""
    start, end = window
    if start < 0 or end <= start:
        raise SKTdaParameterError(f"window {start}:{end} is empty")
    if length is not None and end > length:
        raise SKTdaParameterError(f"window {start}:{end} exceeds the series length {length}")


def format_window(window):
    """Return ``window`` as ``start:end``."""
    return f"{window[0]}:{window[1]}"


def file_label(label):
    """Return a version of ``label`` usable in a file name (``LIN CO`` -> ``LIN_CO``)."""
    return re.sub(r"[^\w.-]+", "_", label.strip())
