"""This module provides the ``sktda`` command line: argument parsing, the
``--config`` file layer and the mapping of errors to exit codes.
"""

import argparse
import json
import logging
import sys

from . import __version__
from .command import (
    adf,
    cointegrate,
    distance,
    embed,
    gp_fit,
    linear_residuals,
    persist,
    six_series,
    synth,
)
from .exceptions import SKTdaError, SKTdaParseError
from .utils import quiet_logging, sktda_log

EXIT_USAGE = 2

COMMANDS = (
    adf.adf,
    cointegrate.cointegrate,
    gp_fit.gp_fit,
    embed.embed,
    persist.persist,
    distance.distance,
    synth.synth,
    six_series.six_series,
    linear_residuals.linear_residuals,
)

# Run-manifest keys whose option has another name.
CONFIG_ALIASES = {
    "vecm_lag": "lag",
    "gp_restarts": "restarts",
    "combined_dims": "dims",
}


class ArgumentParser(argparse.ArgumentParser):
    """Argument parser printing the full help on usage errors."""

    def error(self, message):
        self.print_help(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def create_sktda_argparser():
    """Create and return the ``sktda`` argument parser.

    The parser of each subcommand is available as ``parser.subcommands[name]``.
    """
    parser = ArgumentParser(
        prog="sktda", description="Topological analysis of time series before and after cointegration."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="DIR", help="output directory")
    common.add_argument("--config", metavar="JSON", help="JSON file of option defaults; flags override it")
    common.add_argument("--quiet", action="store_true", help="only log warnings and errors")
    common.add_argument("--verbose", action="store_true", help="log debugging messages")
    common.add_argument("-j", metavar="N", type=int, dest="jobs", default=1, help="allow N concurrent jobs")

    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    parser.subcommands = {}
    for command_class in COMMANDS:
        command = command_class()
        subparser = subparsers.add_parser(
            command.name, parents=[common], help=command.description, description=command.description
        )
        command.add_arguments(subparser)
        subparser.set_defaults(handler=command)
        parser.subcommands[command.name] = subparser
    return parser


def _config_path(argv):
    for i, arg in enumerate(argv):
        if arg == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if arg.startswith("--config="):
            return arg.split("=", 1)[1]
    return None


def load_config(path):
    """Read option defaults from ``path``; a run manifest contributes its ``config`` section."""
    try:
        with open(path, encoding="utf-8") as fp:
            values = json.load(fp)
    except OSError as err:
        raise SKTdaParseError(f"cannot read config file {path}: {err}") from err
    except ValueError as err:
        raise SKTdaParseError(f"{path}: {err}") from err
    if not isinstance(values, dict):
        raise SKTdaParseError(f"{path}: expected a JSON object")
    if "config" in values and "versions" in values:
        values = values["config"]
    return {CONFIG_ALIASES.get(key, key).replace("-", "_"): value for key, value in values.items()}


def _selected_command(parser, argv):
    # The command is the first positional argument; top-level options take no value.
    selector = argparse.ArgumentParser(add_help=False)
    selector.add_argument("command", nargs="?")
    args, _ = selector.parse_known_args(argv)
    return args.command if args.command in parser.subcommands else None


def apply_config(parser, argv):
    """Use the ``--config`` file named in ``argv`` (if any) as defaults of the selected subcommand."""
    path = _config_path(argv)
    command = _selected_command(parser, argv)
    if path is None or command is None:
        return
    values = load_config(path)
    subparser = parser.subcommands[command]
    known = set()
    for action in subparser._actions:
        if action.dest in values:
            action.default = values[action.dest]
            action.required = False
            known.add(action.dest)
    ignored = sorted(set(values) - known)
    if ignored:
        sktda_log.warning("config file %s: ignoring key(s) %s not used by %s", path, ", ".join(ignored), command)


def main(argv=None):
    """Run the ``sktda`` command line and return the exit code."""
    argv = sys.argv[1:] if argv is None else list(argv)
    logging.basicConfig(format="%(levelname)s %(name)s: %(message)s")
    parser = create_sktda_argparser()
    try:
        apply_config(parser, argv)
    except SKTdaError as err:
        print(f"error [config]: {err}", file=sys.stderr)
        return err.exit_code
    args = parser.parse_args(argv)
    command = args.handler

    old_level = sktda_log.level
    if args.verbose:
        sktda_log.setLevel(logging.DEBUG)
    try:
        with quiet_logging(args.quiet):
            command.finalize_options(args)
            return command.run(args)
    except SKTdaError as err:
        print(f"error [{err.stage or command.name}]: {err}", file=sys.stderr)
        return err.exit_code
    finally:
        sktda_log.setLevel(old_level)
