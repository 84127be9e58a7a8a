"""This module defines the ``synth`` subcommand and its generators."""

from ..constants import DEFAULT_SEED, SYNTH_FILE
from ..pipeline import pipeline_stage
from ..series_core import MultiSeries, write_csv
from ..synth import Z24MimicConfig, gen_cointegrated_system, gen_random_walk, gen_sine_mix, gen_z24_mimic
from . import Command, set_output_dir_mixin, split_numbers, window

_MIMIC = Z24MimicConfig()


def _sine_mix(args):
    return MultiSeries((gen_sine_mix(args.n, args.dt),))


def _random_walk(args):
    return MultiSeries((gen_random_walk(args.n, args.seed),))


def _cointegrated(args):
    beta = split_numbers(args.beta)
    ms, noise = gen_cointegrated_system(args.n, len(beta), beta, args.seed, return_noise=True)
    if args.with_noise:
        return MultiSeries(ms.channels + (noise,))
    return ms


def _z24_mimic(args):
    config = Z24MimicConfig(
        n=args.n,
        period=args.period,
        regime=window(args.regime, args.n),
        excursion_amplitude=args.amplitude,
        noise_std=args.noise_std,
        channel_couplings=split_numbers(args.couplings),
        drop_depth=args.drop_depth,
        walk_std=args.walk_std,
        disturbance_std=args.disturbance_std,
        disturbance_steps=args.disturbance_steps,
        seed=args.seed,
    )
    return gen_z24_mimic(config)


class synth(set_output_dir_mixin, Command):
    """Seeded synthetic series written as CSV readable by every other command."""

    name = "synth"
    description = "generate synthetic series"

    def add_arguments(self, parser):
        kinds = parser.add_subparsers(dest="kind", metavar="KIND", required=True)

        sine = kinds.add_parser("sine-mix", help="sin(t) + sin(2t) + sin(3t)")
        sine.add_argument("--n", type=int, default=600, help="number of samples")
        sine.add_argument("--dt", type=float, default=0.1, help="sampling step")
        sine.set_defaults(generator=_sine_mix)

        walk = kinds.add_parser("random-walk", help="cumulative sum of Gaussian innovations")
        walk.add_argument("--n", type=int, default=1000, help="number of samples")
        walk.add_argument("--seed", type=int, default=DEFAULT_SEED)
        walk.set_defaults(generator=_random_walk)

        coint = kinds.add_parser("cointegrated", help="random walks with one white-noise linear combination")
        coint.add_argument("--n", type=int, default=2000, help="number of samples")
        coint.add_argument(
            "--beta", default="1,-2", metavar="B,...", help="cointegrating vector, one weight per channel"
        )
        coint.add_argument("--seed", type=int, default=DEFAULT_SEED)
        coint.add_argument("--with-noise", action="store_true", help="also write the injected noise channel")
        coint.set_defaults(generator=_cointegrated)

        mimic = kinds.add_parser("z24-mimic", help="four seasonal channels with a nonlinear regime on w2")
        mimic.add_argument("--n", type=int, default=_MIMIC.n, help="number of samples")
        mimic.add_argument("--period", type=int, default=_MIMIC.period, help="samples per seasonal cycle")
        mimic.add_argument("--regime", default="{}:{}".format(*_MIMIC.regime), metavar="START:END")
        mimic.add_argument("--amplitude", type=float, default=_MIMIC.excursion_amplitude, help="excursion height")
        mimic.add_argument("--noise-std", type=float, default=_MIMIC.noise_std)
        mimic.add_argument("--couplings", default=",".join(map(str, _MIMIC.channel_couplings)), metavar="C1,C2,C3,C4")
        mimic.add_argument("--drop-depth", type=float, default=_MIMIC.drop_depth, help="driver drop inside the regime")
        mimic.add_argument("--walk-std", type=float, default=_MIMIC.walk_std, help="step of the slow random walk")
        mimic.add_argument(
            "--disturbance-std", type=float, default=_MIMIC.disturbance_std, help="disturbance outside the regime"
        )
        mimic.add_argument(
            "--disturbance-steps",
            type=float,
            default=_MIMIC.disturbance_steps,
            help="correlation time of the disturbance, in samples",
        )
        mimic.add_argument("--seed", type=int, default=DEFAULT_SEED)
        mimic.set_defaults(generator=_z24_mimic)

    def run(self, args):
        with pipeline_stage("synth"):
            ms = args.generator(args)
        path = SYNTH_FILE(self.output_dir(args), args.kind)
        write_csv(ms, path)
        print(f"{args.kind}: {len(ms)} samples x {ms.n_channels} channel(s) written to {path}")
        return 0
