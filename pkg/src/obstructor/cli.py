"""Command-line entry point: one subcommand per scenario.

Exit codes: 0 a verdict was produced, 2 the map failed the general position
check (a seed override is required), 3 invalid parameters.
"""

import argparse
import sys
import time

from . import scenarios
from .linalg import parse_frac


def _parse_numbers(s, cast):
    try:
        return tuple(cast(x) for x in s.split(","))
    except ValueError:
        raise scenarios.ParameterError("could not parse %r" % (s,))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="obstructor",
        description="Exact calculator for primary equivariant obstruction "
                    "classes of arrangement complements.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_hyp = sub.add_parser(
        "hyperplane", help="six-tuple partition by three half-circle cuts")
    p_hyp.add_argument("--alpha", required=True,
                       help="3 or 6 comma-separated positive integers")
    p_hyp.add_argument("--seed", help="comma-separated rationals for f(t)")
    p_hyp.add_argument("--literal-sum-row", action="store_true",
                       help="n = 10 variant: restrict the sum equation to "
                            "the first 8 coordinates")
    p_hyp.add_argument("--format", choices=("text", "json"), default="text")

    p_fan = sub.add_parser("fan", help="(a, b, a) partition by a 3-fan")
    p_fan.add_argument("--a", required=True, type=int)
    p_fan.add_argument("--b", required=True, type=int)
    p_fan.add_argument("--seed", help="comma-separated rationals for f(t)")
    p_fan.add_argument("--format", choices=("text", "json"), default="text")

    p_lov = sub.add_parser(
        "lovasz", help="symbolic torus-intersection consistency check")
    p_lov.add_argument("--r", required=True, type=int)
    p_lov.add_argument("--n", required=True, type=int)
    p_lov.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def config_from_args(args) -> scenarios.ScenarioConfig:
    seed = None
    if getattr(args, "seed", None):
        seed = _parse_numbers(args.seed, parse_frac)
    if args.command == "hyperplane":
        return scenarios.ScenarioConfig(
            scenarios.HYPERPLANE, _parse_numbers(args.alpha, int),
            seed_image=seed, literal_sum_row=args.literal_sum_row,
            output_format=args.format)
    if args.command == "fan":
        return scenarios.ScenarioConfig(
            scenarios.FAN, (args.a, args.b), seed_image=seed,
            output_format=args.format)
    return scenarios.ScenarioConfig(
        scenarios.LOVASZ, (args.r, args.n), output_format=args.format)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.monotonic()
    try:
        cfg = config_from_args(args)
        report = scenarios.run_scenario(cfg)
    except scenarios.ParameterError as exc:
        print("parameter error: %s" % exc, file=sys.stderr)
        return 3
    except scenarios.GeneralPositionFailure as exc:
        print("general position failure: %s" % exc, file=sys.stderr)
        return 2
    out = report.json_text() if cfg.output_format == "json" else report.text()
    print(out)
    print("elapsed: %.2f s" % (time.monotonic() - start), file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
