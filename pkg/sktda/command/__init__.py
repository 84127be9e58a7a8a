"""Collection of objects implementing the ``sktda`` subcommands.

Each subcommand is a class named after it. :func:`sktda.cli.main` calls, in
order, ``add_arguments`` while building the parser, ``finalize_options``
once the command line is parsed and ``run``.
"""

import os

from ..constants import SKTDA_DIR
from ..exceptions import SKTdaParameterError
from ..utils import mkdir_p, parse_window


def split_labels(text):
    """Split a comma-separated label list (a JSON list is accepted as is)."""
    if text is None:
        return None
    if isinstance(text, (list, tuple)):
        return tuple(str(label).strip() for label in text)
    labels = tuple(label.strip() for label in text.split(",") if label.strip())
    if not labels:
        raise SKTdaParameterError(f"empty label list {text!r}")
    return labels


def split_numbers(text, kind=float):
    """Split a comma-separated list of numbers (a JSON list is accepted as is)."""
    values = text if isinstance(text, (list, tuple)) else [value for value in text.split(",") if value.strip()]
    try:
        return tuple(kind(value) for value in values)
    except ValueError as err:
        raise SKTdaParameterError(f"cannot read numbers from {text!r}: {err}") from None


def window(value, length=None):
    """Read a ``start:end`` window (a two-element JSON list is accepted as is)."""
    if isinstance(value, (list, tuple)):
        value = f"{value[0]}:{value[1]}"
    return parse_window(value, length)


class Command:
    """Base class of the ``sktda`` subcommands."""

    name = None
    description = ""

    def add_arguments(self, parser):
        """Register the options of this command on ``parser``."""

    def finalize_options(self, args):
        """Complete ``args`` once the command line is parsed."""

    def run(self, args):
        """Execute the command and return the process exit code."""
        raise NotImplementedError


class set_output_dir_mixin:
    """Mixin setting ``--out`` to ``<SKTDA_DIR>/<command name>`` when it is not given."""

    def finalize_options(self, args):
        """Override ``finalize_options`` and set a default output directory."""
        if not getattr(args, "out", None):
            args.out = os.path.join(SKTDA_DIR(), self.name)
        super().finalize_options(args)

    def output_dir(self, args):
        """Create the output directory and return it."""
        mkdir_p(args.out)
        return args.out
