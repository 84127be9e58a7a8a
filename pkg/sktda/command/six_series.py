"""This module defines the ``six-series`` subcommand and the options shared by pipeline runs."""

from ..constants import (
    BACKENDS,
    DEFAULT_ALPHA,
    DEFAULT_BACKEND,
    DEFAULT_EMBEDDING_DIM,
    DEFAULT_GP_MAX_ITER,
    DEFAULT_GP_RESTARTS,
    DEFAULT_MAX_DIM,
    DEFAULT_MAX_SIMPLICES,
    DEFAULT_P,
    DEFAULT_SEED,
    DEFAULT_SUBSAMPLE_CAP,
    DEFAULT_VECM_LAG,
)
from ..pipeline import PipelineConfig, replay, run_six_series
from ..synth import MIMIC_LABELS, MIMIC_TARGET
from . import Command, split_labels, split_numbers, window


class pipeline_command(Command):
    """Options shared by the pipeline runs. ``--out`` defaults to the run's own directory."""

    run_function = None

    def add_arguments(self, parser):
        parser.add_argument("--input", metavar="CSV", help="input series (default: synthetic mimic)")
        parser.add_argument("--alpha", type=int, default=DEFAULT_ALPHA, metavar="N", help="embedding delay")
        parser.add_argument("--dim", type=int, default=DEFAULT_EMBEDDING_DIM, metavar="D", help="embedding dimension")
        parser.add_argument(
            "--max-dim", type=int, default=DEFAULT_MAX_DIM, metavar="K", help="largest simplex dimension"
        )
        parser.add_argument("--p", type=float, default=DEFAULT_P, help="Wasserstein exponent")
        parser.add_argument("--dims", default="0,1,2", metavar="K,...", help="dimensions summed in the combined matrix")
        parser.add_argument(
            "--essential", default="truncate", choices=("truncate", "drop"), help="handling of essential classes"
        )
        parser.add_argument(
            "--subsample", type=int, default=DEFAULT_SUBSAMPLE_CAP, metavar="N", help="points per cloud"
        )
        parser.add_argument("--max-scale", type=float, metavar="R", help="largest Rips scale")
        parser.add_argument("--backend", default=DEFAULT_BACKEND, choices=BACKENDS, help="persistence algorithm")
        parser.add_argument("--max-simplices", type=int, default=DEFAULT_MAX_SIMPLICES, metavar="N", help="simplex cap")
        parser.add_argument("--lag", type=int, default=DEFAULT_VECM_LAG, metavar="N", help="VECM lag")
        parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed of the GP starts and subsampling")
        parser.add_argument("--replay", metavar="MANIFEST", help="run again the configuration of a manifest")

    def config_values(self, args):
        """Return the :class:`sktda.pipeline.PipelineConfig` fields set by ``args``."""
        return dict(
            input=args.input,
            alpha=args.alpha,
            dim=args.dim,
            max_dim=args.max_dim,
            p=args.p,
            combined_dims=split_numbers(args.dims, int),
            essential=args.essential,
            subsample=args.subsample,
            max_scale=args.max_scale,
            backend=args.backend,
            max_simplices=args.max_simplices,
            vecm_lag=args.lag,
            seed=args.seed,
            out=args.out,
            jobs=args.jobs,
        )

    def config(self, args):
        return PipelineConfig(**self.config_values(args))

    def run(self, args):
        if args.replay:
            result = replay(args.replay, args.out)
        else:
            result = type(self).run_function(self.config(args))
        self.report(result)
        return 0

    def report(self, result):
        print(f"{len(result.matrix.labels)}x{len(result.matrix.labels)} distance matrix written to {result.out_dir}")


class six_series(pipeline_command):
    """RAW, GP and linear cointegration residuals of one channel, compared by Wasserstein distance."""

    name = "six-series"
    description = "compare a channel before and after linear and GP cointegration"
    run_function = run_six_series

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--target", default=MIMIC_TARGET, metavar="LABEL", help="analysed channel")
        parser.add_argument(
            "--regressors",
            default=",".join(label for label in MIMIC_LABELS if label != MIMIC_TARGET),
            metavar="LABELS",
            help="comma-separated GP inputs",
        )
        parser.add_argument("--gp1-window", default="0:1000", metavar="START:END", help="GP1 training samples")
        parser.add_argument("--gp2-window", default="1500:2500", metavar="START:END", help="GP2 training samples")
        parser.add_argument(
            "--restarts", type=int, default=DEFAULT_GP_RESTARTS, metavar="N", help="GP optimizer starts"
        )
        parser.add_argument("--gp-max-iter", type=int, default=DEFAULT_GP_MAX_ITER, metavar="N", help="GP iterations")
        parser.add_argument("--train-stride", type=int, default=1, metavar="K", help="keep every K-th training sample")

    def config_values(self, args):
        return dict(
            super().config_values(args),
            target=args.target,
            regressors=split_labels(args.regressors),
            gp1_window=window(args.gp1_window),
            gp2_window=window(args.gp2_window),
            gp_restarts=args.restarts,
            gp_max_iter=args.gp_max_iter,
            train_stride=args.train_stride,
        )

    def report(self, result):
        super().report(result)
        labels = result.matrix.labels
        for i, label in enumerate(labels):
            print(f"{label:>7} " + " ".join(f"{value:9.3f}" for value in result.matrix.combined[i]))
