"""This module defines the ``linear-residuals`` subcommand."""

from ..pipeline import run_linear_residuals
from . import split_labels
from .six_series import pipeline_command


class linear_residuals(pipeline_command):
    """Every channel against every Johansen residual series."""

    name = "linear-residuals"
    description = "compare channels with all Johansen residual series"
    run_function = run_linear_residuals

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--channels", metavar="LABELS", help="comma-separated channels (default: all)")

    def config_values(self, args):
        return dict(super().config_values(args), channels=split_labels(args.channels))

    def report(self, result):
        super().report(result)
        rho = result.manifest["cross_block_spearman"]
        if rho is not None:
            print(f"cross-block trend (Spearman) {rho:.3f}")
