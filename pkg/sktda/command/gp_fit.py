"""This module defines the ``gp-fit`` subcommand."""

import json

from ..constants import DEFAULT_GP_MAX_ITER, DEFAULT_GP_RESTARTS, DEFAULT_SEED, GP_MODEL_FILE, GP_RESIDUALS_FILE
from ..gp_regression import GpConfig, gp_predictions
from ..pipeline import pipeline_stage
from ..series_core import MultiSeries, TimeSeries, drop_missing, load_csv, write_csv
from ..utils import format_window
from . import Command, set_output_dir_mixin, split_labels, window


class gp_fit(set_output_dir_mixin, Command):
    """Gaussian-process regression of a target channel on regressor channels."""

    name = "gp-fit"
    description = "fit a GP of the target on the regressors and write the residual series"

    def add_arguments(self, parser):
        parser.add_argument("--input", required=True, metavar="CSV", help="input series")
        parser.add_argument("--target", required=True, metavar="LABEL", help="predicted channel")
        parser.add_argument("--regressors", required=True, metavar="LABELS", help="comma-separated input channels")
        parser.add_argument("--train-window", required=True, metavar="START:END", help="training samples")
        parser.add_argument("--restarts", type=int, default=DEFAULT_GP_RESTARTS, metavar="N", help="optimizer starts")
        parser.add_argument(
            "--max-iter", type=int, default=DEFAULT_GP_MAX_ITER, metavar="N", help="iterations per start"
        )
        parser.add_argument("--train-stride", type=int, default=1, metavar="K", help="keep every K-th training sample")
        parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed of the random optimizer starts")

    def run(self, args):
        regressors = split_labels(args.regressors)
        with pipeline_stage("load"):
            ms = drop_missing(load_csv(args.input, header=(args.target,) + regressors))
        train_window = window(args.train_window, len(ms))
        config = GpConfig(
            restarts=args.restarts,
            max_iter=args.max_iter,
            seed=args.seed,
            n_jobs=args.jobs,
            train_stride=args.train_stride,
        )
        with pipeline_stage("gp"):
            model, prediction = gp_predictions(ms, args.target, regressors, train_window, config)
        residual = ms[args.target].values - prediction.values

        out = self.output_dir(args)
        series = MultiSeries((TimeSeries(prediction.values, "prediction"), TimeSeries(residual, "residual")), ms.index)
        write_csv(series, GP_RESIDUALS_FILE(out))
        sidecar = {
            "target": args.target,
            "regressors": list(regressors),
            "train_window": format_window(train_window),
            **model.hyperparameters(),
        }
        with open(GP_MODEL_FILE(out), "w", encoding="utf-8", newline="\n") as fp:
            json.dump(sidecar, fp, indent=2, sort_keys=True)
            fp.write("\n")
        print(
            f"{args.target}: residual std {residual.std(ddof=1):.6g}, "
            f"log marginal likelihood {model.log_marginal_likelihood:.4f}"
        )
        return 0
