"""This module defines the ``persist`` subcommand."""

import os

from ..constants import (
    BACKENDS,
    DEFAULT_BACKEND,
    DEFAULT_MAX_DIM,
    DEFAULT_MAX_SIMPLICES,
    DEFAULT_SEED,
    DEFAULT_SUBSAMPLE_CAP,
    DIAGRAM_FILE,
)
from ..pipeline import pipeline_stage
from ..utils import file_label
from ..vr_persistence import cloud_from_csv, maxmin_subsample, vr_persistence, write_diagram_csv, write_diagram_svg
from . import Command, set_output_dir_mixin


class persist(set_output_dir_mixin, Command):
    """Vietoris-Rips persistent homology of a point cloud."""

    name = "persist"
    description = "compute the Rips persistence diagram of a point cloud"

    def add_arguments(self, parser):
        parser.add_argument("--input", required=True, metavar="CSV", help="point cloud, one point per row")
        parser.add_argument(
            "--max-dim", type=int, default=DEFAULT_MAX_DIM, metavar="K", help="largest simplex dimension"
        )
        parser.add_argument("--max-scale", type=float, metavar="R", help="largest scale (default: enclosing radius)")
        parser.add_argument(
            "--subsample", type=int, default=DEFAULT_SUBSAMPLE_CAP, metavar="N", help="maxmin subsample cap"
        )
        parser.add_argument("--backend", default=DEFAULT_BACKEND, choices=BACKENDS, help="persistence algorithm")
        parser.add_argument("--max-simplices", type=int, default=DEFAULT_MAX_SIMPLICES, metavar="N", help="simplex cap")
        parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed of the first subsampled point")
        parser.add_argument("--label", metavar="NAME", help="diagram name (default: input file name)")

    def run(self, args):
        with pipeline_stage("load"):
            cloud = cloud_from_csv(args.input)
        with pipeline_stage("persistence"):
            if len(cloud) > args.subsample:
                cloud = maxmin_subsample(cloud, args.subsample, args.seed)
            diagram = vr_persistence(
                cloud, args.max_dim, args.max_scale, args.max_simplices, args.backend, n_threads=args.jobs
            )

        label = args.label or os.path.splitext(os.path.basename(args.input))[0]
        out = self.output_dir(args)
        write_diagram_csv(diagram, DIAGRAM_FILE(out, file_label(label), "csv"))
        write_diagram_svg(diagram, DIAGRAM_FILE(out, file_label(label), "svg"), label)
        counts = ", ".join(f"H{k}: {len(diagram.intervals[k])}" for k in diagram.dimensions)
        print(f"{label}: {counts} intervals up to scale {diagram.max_scale:.6g}")
        return 0
