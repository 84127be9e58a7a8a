"""This module defines the ``embed`` subcommand."""

import pandas as pd

from ..constants import CLOUD_FILE, DEFAULT_ALPHA, DEFAULT_EMBEDDING_DIM
from ..embedding import delay_embed
from ..exceptions import SKTdaParameterError
from ..pipeline import pipeline_stage
from ..series_core import drop_missing, load_csv, standardize
from . import Command, set_output_dir_mixin


class embed(set_output_dir_mixin, Command):
    """Time-delay embedding of one channel."""

    name = "embed"
    description = "delay-embed a channel into a point cloud"

    def add_arguments(self, parser):
        parser.add_argument("--input", required=True, metavar="CSV", help="input series")
        parser.add_argument("--channel", metavar="LABEL", help="channel to embed (default: the only one)")
        parser.add_argument("--dim", type=int, default=DEFAULT_EMBEDDING_DIM, metavar="D", help="embedding dimension")
        parser.add_argument("--alpha", type=int, default=DEFAULT_ALPHA, metavar="N", help="delay in samples")
        parser.add_argument("--standardize", action="store_true", help="standardize the channel first")

    def run(self, args):
        with pipeline_stage("load"):
            ms = drop_missing(load_csv(args.input, header=None if args.channel is None else [args.channel]))
            if ms.n_channels != 1:
                raise SKTdaParameterError(f"choose one of the channels {list(ms.labels)} with --channel")
        with pipeline_stage("embed"):
            ts = ms.channels[0]
            if args.standardize:
                ts = standardize(ts)
            cloud = delay_embed(ts, args.dim, args.alpha)

        out = self.output_dir(args)
        frame = pd.DataFrame(cloud.points, columns=[f"x{k}" for k in range(cloud.dim)])
        frame.to_csv(CLOUD_FILE(out), index=False, lineterminator="\n")
        print(f"{ts.label}: {len(cloud)} points in dimension {cloud.dim}")
        return 0
