"""This module defines the ``distance`` subcommand."""

import os

from ..constants import DEFAULT_P, DISTANCES_COMBINED_FILE, DISTANCES_DIM_FILE
from ..diagram_metrics import diagram_distance_matrix, write_distance_matrix_csv
from ..pipeline import pipeline_stage
from ..vr_persistence import read_diagram_csv
from . import Command, set_output_dir_mixin, split_numbers


class distance(set_output_dir_mixin, Command):
    """Wasserstein distances between persistence diagrams."""

    name = "distance"
    description = "compute Wasserstein distance matrices between diagram CSV files"

    def add_arguments(self, parser):
        parser.add_argument("--inputs", required=True, nargs="+", metavar="CSV", help="diagram files")
        parser.add_argument("--p", type=float, default=DEFAULT_P, help="Wasserstein exponent")
        parser.add_argument("--dims", metavar="K,...", help="homology dimensions (default: all shared ones)")
        parser.add_argument(
            "--essential", default="truncate", choices=("truncate", "drop"), help="handling of essential classes"
        )

    def run(self, args):
        with pipeline_stage("load"):
            diagrams = [
                (os.path.splitext(os.path.basename(path))[0], read_diagram_csv(path)) for path in args.inputs
            ]
        dims = (
            split_numbers(args.dims, int)
            if args.dims is not None
            else tuple(range(min(diagram.max_dim for _, diagram in diagrams)))
        )
        with pipeline_stage("distance"):
            matrix = diagram_distance_matrix(diagrams, args.p, dims, args.essential, n_jobs=args.jobs)

        out = self.output_dir(args)
        write_distance_matrix_csv(matrix.combined, matrix.labels, DISTANCES_COMBINED_FILE(out))
        for k, values in matrix.per_dimension.items():
            write_distance_matrix_csv(values, matrix.labels, DISTANCES_DIM_FILE(out, k))
        if len(diagrams) == 2:
            print(f"{matrix.labels[0]} {matrix.labels[1]}: {float(matrix.combined[0, 1])}")
        else:
            print(f"{len(diagrams)}x{len(diagrams)} distance matrix written to {out}")
        return 0
