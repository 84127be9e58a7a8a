"""This module defines the ``adf`` subcommand."""

import pandas as pd

from ..constants import (
    ADF_REPORT_FILE,
    CRITICAL_VALUES_FILE,
    DEFAULT_MAX_ORDER,
    DEFAULT_SIGNIFICANCE,
    SIGNIFICANCE_LEVELS,
)
from ..exceptions import SKTdaError
from ..pipeline import pipeline_stage
from ..series_core import drop_missing, load_csv
from ..stationarity import adf_test, export_critical_values, integration_order
from . import Command, set_output_dir_mixin, split_labels


class adf(set_output_dir_mixin, Command):
    """Augmented Dickey-Fuller test of each selected channel."""

    name = "adf"
    description = "test channels for a unit root (Augmented Dickey-Fuller)"

    def add_arguments(self, parser):
        parser.add_argument("--input", required=True, metavar="CSV", help="input series")
        parser.add_argument("--channel", metavar="LABELS", help="comma-separated channels to test (default: all)")
        parser.add_argument("--lags", type=int, metavar="N", help="lagged differences (default: Schwert rule)")
        parser.add_argument(
            "--level", default=DEFAULT_SIGNIFICANCE, choices=SIGNIFICANCE_LEVELS, help="significance level"
        )
        parser.add_argument("--no-intercept", dest="intercept", action="store_false", help="drop the constant term")
        parser.add_argument(
            "--max-order",
            type=int,
            default=DEFAULT_MAX_ORDER,
            metavar="K",
            help="also report the order of integration, searching up to K differences",
        )
        parser.add_argument(
            "--export-critical-values", action="store_true", help="write the embedded critical-value table"
        )

    def run(self, args):
        with pipeline_stage("load"):
            ms = drop_missing(load_csv(args.input, header=split_labels(args.channel)))
        rows = []
        with pipeline_stage("adf"):
            for ts in ms.channels:
                result = adf_test(ts, args.lags, args.intercept)
                try:
                    order = integration_order(ts, args.max_order, args.lags, args.level)
                except SKTdaError:
                    order = None
                rows.append(
                    {
                        "channel": ts.label,
                        "t_p": result.t_p,
                        **{f"cv {level}": value for level, value in result.critical_values.items()},
                        **{f"reject {level}": result.reject_unit_root[level] for level in SIGNIFICANCE_LEVELS},
                        "lags": result.lags,
                        "n_used": result.n_used,
                        "integration_order": order,
                    }
                )
                print(f"{ts.label}: t_p={result.t_p:.4f} {result.verdict(args.level)} the unit root at {args.level}")

        out = self.output_dir(args)
        pd.DataFrame(rows).to_csv(ADF_REPORT_FILE(out), index=False, lineterminator="\n")
        if args.export_critical_values:
            export_critical_values(CRITICAL_VALUES_FILE(out))
        return 0
