"""This module defines the ``cointegrate`` subcommand."""

import pandas as pd

from ..constants import DEFAULT_VECM_LAG, JOHANSEN_FILE, RESIDUALS_FILE
from ..cointegration import cointegrating_residuals, johansen
from ..pipeline import pipeline_stage
from ..series_core import drop_missing, load_csv, write_csv
from . import Command, set_output_dir_mixin, split_labels


class cointegrate(set_output_dir_mixin, Command):
    """Johansen procedure over the selected channels."""

    name = "cointegrate"
    description = "estimate cointegrating vectors and residual series (Johansen)"

    def add_arguments(self, parser):
        parser.add_argument("--input", required=True, metavar="CSV", help="input series in levels")
        parser.add_argument("--channels", metavar="LABELS", help="comma-separated channels (default: all)")
        parser.add_argument("--lag", type=int, default=DEFAULT_VECM_LAG, metavar="N", help="VECM lag")

    def run(self, args):
        with pipeline_stage("load"):
            ms = drop_missing(load_csv(args.input, header=split_labels(args.channels)))
        with pipeline_stage("cointegrate"):
            result = johansen(ms, args.lag)
            residuals = cointegrating_residuals(ms, result)

        out = self.output_dir(args)
        table = pd.DataFrame([list(vector) for vector in result.vectors], columns=list(ms.labels))
        table.insert(0, "eigenvalue", list(result.eigenvalues))
        table.insert(0, "residual", list(residuals.labels))
        table.to_csv(JOHANSEN_FILE(out), index=False, lineterminator="\n")
        write_csv(residuals, RESIDUALS_FILE(out))
        print(f"leading eigenvalue {result.eigenvalues[0]:.6f}, vector " + " ".join(f"{v:.6f}" for v in result.leading))
        return 0
