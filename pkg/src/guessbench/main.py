"""guessbench command line: run experiments, compare against the random guesser, emit plot data."""

import argparse
import csv
import sys
from pathlib import Path

from loguru import logger

from guessbench.__about__ import VERSION
from guessbench.analysis import top_reward_brute_force, top_reward_closed_form
from guessbench.config import load_experiment_config
from guessbench.engine.experiment import run_experiment
from guessbench.errors import EXIT_OK, GuessbenchError, UsageError, exit_code_for
from guessbench.results import (
    HistogramSpec,
    RunManifest,
    histogram_rows,
    load_results,
    save_histogram_csv,
    save_results,
    save_sessions_csv,
)
from guessbench.stats import SampleGroup, one_way_anova, pairwise_vs_control
from guessbench.wheel.presets import DEFAULT_CONVENTION, ZERO_PAYOUTS, standard_wheels

ANOVA_FIELDS = ["label", "f", "df1", "df2", "p", "degenerate"]


def configure_logging(quiet=False, verbose=False):
    """Send log records to stderr at the level the flags ask for."""
    logger.remove()
    level = "WARNING" if quiet else "DEBUG" if verbose else "INFO"
    logger.add(sys.stderr, level=level, format="<level>{level: <8}</level> {message}")


def cmd_run(args):
    """Run an experiment and write its results JSON."""
    config, checksum = load_experiment_config(args.config)
    config = config.with_overrides(base_seed=args.seed, sessions_per_policy=args.sessions)
    result = run_experiment(config, threads=args.threads, progress=not args.quiet)
    manifest = RunManifest.create(checksum, config.base_seed, config.sessions_per_policy)
    save_results(result, manifest, args.out)
    logger.info(f"Wrote results to {args.out}")
    if args.csv:
        csv_path = Path(args.out).with_suffix(".sessions.csv") if args.csv is True else args.csv
        save_sessions_csv(result, manifest, csv_path)
        logger.info(f"Wrote per-session CSV to {csv_path}")
    return EXIT_OK


def cmd_anova(args):
    """Compare every policy against the control group, pairwise and all at once."""
    result, manifest = load_results(args.results)
    groups = [
        SampleGroup(label, values) for label, values in result.metric_groups(args.metric)
    ]
    control = next((group for group in groups if group.label == args.control), None)
    if control is None:
        raise UsageError(
            f"control group {args.control!r} not in results; have {', '.join(result.labels)}"
        )
    treatments = [group for group in groups if group is not control]
    rows = [anova.to_row(label) for label, anova in pairwise_vs_control(control, treatments)]
    rows.append(one_way_anova(groups).to_row("omnibus"))

    if args.csv:
        out = open(args.csv, "w", encoding="utf-8", newline="") if args.csv is not True else sys.stdout
        try:
            out.write(manifest.comment_line() + "\n")
            writer = csv.DictWriter(out, ANOVA_FIELDS)
            writer.writeheader()
            writer.writerows(rows)
        finally:
            if out is not sys.stdout:
                out.close()
    else:
        print(manifest.comment_line())
        print(f"{'label':<16}{'F':>14}{'df1':>6}{'df2':>8}{'p':>14}  degenerate")
        for row in rows:
            print(
                f"{row['label']:<16}{row['f']:>14.6g}{row['df1']:>6}{row['df2']:>8}"
                f"{row['p']:>14.6g}  {row['degenerate']}"
            )
    return EXIT_OK


def _parse_floats(text, name):
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise UsageError(f"--{name} expects comma-separated numbers, got {text!r}")


def _parse_ints(text, name):
    values = _parse_floats(text, name)
    if any(value != int(value) for value in values):
        raise UsageError(f"--{name} expects integers, got {text!r}")
    return [int(value) for value in values]


def cmd_analyze_topreward(args):
    """Print the top-reward distribution by formula and by enumeration."""
    if args.from_wheel:
        wheels = standard_wheels(args.convention)
        if args.from_wheel not in wheels:
            raise UsageError(f"unknown wheel {args.from_wheel!r}; expected one of {sorted(wheels)}")
        wheel = wheels[args.from_wheel]
        thetas = [bet.win_prob for bet in wheel.bets]
        payouts = list(wheel.payouts)
        labels = list(wheel.labels)
    else:
        if args.theta is None or args.payout is None:
            raise UsageError("give --theta and --payout, or --from-wheel")
        thetas = _parse_floats(args.theta, "theta")
        payouts = _parse_ints(args.payout, "payout")
        labels = [f"arm{k}" for k in range(len(thetas))]

    closed = top_reward_closed_form(thetas, payouts)
    brute = top_reward_brute_force(thetas, payouts)
    print(f"{'arm':<10}{'theta':>14}{'payout':>8}{'closed_form':>16}{'brute_force':>16}")
    for label, theta, payout, p, q in zip(labels, thetas, payouts, closed, brute):
        print(f"{label:<10}{theta:>14.8f}{payout:>8}{p:>16.10f}{q:>16.10f}")
    print(f"max |closed_form - brute_force| = {closed.max_abs_difference(brute):.3e}")
    return EXIT_OK


def cmd_histogram(args):
    """Write histogram rows for external plotting."""
    edges = _parse_floats(args.edges, "edges") if args.edges else None
    spec = HistogramSpec(metric=args.metric, bins=args.bins, edges=edges)
    result, manifest = load_results(args.results)
    rows = histogram_rows(result, spec)
    save_histogram_csv(rows, manifest, args.out)
    logger.info(f"Wrote {len(rows)} histogram rows to {args.out}")
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="override the config's base seed (unsigned 64-bit)")
    common.add_argument("--threads", type=int, default=1, help="worker processes for sessions")
    common.add_argument(
        "--csv",
        nargs="?",
        const=True,
        default=None,
        help="emit CSV (optionally to the given path)",
    )
    common.add_argument("--quiet", action="store_true", help="only log warnings and errors")
    common.add_argument("--verbose", action="store_true", help="log per-session detail")

    parser = argparse.ArgumentParser(
        prog="guessbench", description="Random guesser test for bandit agents on roulette."
    )
    parser.add_argument("--version", action="version", version=f"guessbench {VERSION}")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", parents=[common], help="run an experiment")
    run.add_argument("config", help="experiment config JSON (or a bundled preset name)")
    run.add_argument("-o", "--out", required=True, help="results JSON to write")
    run.add_argument("--sessions", type=int, help="override sessions per policy")
    run.set_defaults(handler=cmd_run)

    anova = commands.add_parser("anova", parents=[common], help="ANOVA against the control group")
    anova.add_argument("results", help="results JSON written by 'run'")
    anova.add_argument("--control", default="random", help="label of the control policy")
    anova.add_argument("--metric", choices=["success", "survival"], help="metric to compare")
    anova.set_defaults(handler=cmd_anova)

    analyze = commands.add_parser("analyze", help="closed-form analyses")
    analyses = analyze.add_subparsers(dest="analysis", required=True)
    topreward = analyses.add_parser(
        "topreward", parents=[common], help="probability each arm pays the most"
    )
    topreward.add_argument("--theta", help="comma-separated win probabilities")
    topreward.add_argument("--payout", help="comma-separated net payouts")
    topreward.add_argument("--from-wheel", help="use a preset wheel: fair, skewed, nonstationary")
    topreward.add_argument(
        "--convention", choices=sorted(ZERO_PAYOUTS), default=DEFAULT_CONVENTION,
        help="zero bet payout reading for --from-wheel",
    )
    topreward.set_defaults(handler=cmd_analyze_topreward)

    histogram = commands.add_parser("histogram", parents=[common], help="plot-ready histogram CSV")
    histogram.add_argument("results", help="results JSON written by 'run'")
    histogram.add_argument("--metric", required=True, choices=["success_rate", "survival"])
    histogram.add_argument("--bins", type=int, default=20, help="equal-width bin count")
    histogram.add_argument("--edges", help="explicit comma-separated bin edges")
    histogram.add_argument("-o", "--out", required=True, help="CSV file to write")
    histogram.set_defaults(handler=cmd_histogram)
    return parser


def main(argv=None):
    """Entry point; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code
    configure_logging(quiet=args.quiet, verbose=args.verbose)
    try:
        return args.handler(args)
    except Exception as e:  # pylint: disable=broad-except
        code = exit_code_for(e)
        if isinstance(e, (GuessbenchError, OSError)):
            logger.error(str(e))
        else:
            logger.opt(exception=e).error(f"internal error: {e!r}")
        return code


if __name__ == "__main__":
    sys.exit(main())
