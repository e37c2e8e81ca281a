"""Command-line harness.

Subcommands:

    estimate   run one estimator on one generated block, print theta_hat
    metric     dump the phase metric over a grid as CSV
    plan       print the cost table and optimal stage count for a scenario
    cost       print cost-vs-stage-count curves as CSV
    sweep      run a Monte Carlo sweep described by a config file
    fig        run one of the canned presets (fig1, fig3..fig12)

Exit codes: 0 success, 1 invalid arguments or config, 2 degeneracy failure
(more than 1% of trials raised a degenerate-statistic error).
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import config, planning, presets
from .baselines import (
    DegenerateStatisticError,
    EstimatorUndefinedError,
    MdeConfig,
    mde_estimate,
    ple_estimate,
)
from .channel import SnrSpec, transmit_block
from .constellation import NAMES, by_name
from .harness import TrialFailureRateError, format_number, sweep, write_sweep_csv
from .pmm import PmmPlan, metric_profile, pmm_estimate, stage_grid

_EXIT_OK = 0
_EXIT_USAGE = 1
_EXIT_DEGENERATE = 2


class _Parser(argparse.ArgumentParser):
    # Invalid arguments exit with code 1, not argparse's default 2.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(_EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_snr_args(parser, default_db=None, required=False):
    group = parser.add_mutually_exclusive_group(required=required)
    group.add_argument(
        "--snr-db", type=float, default=default_db, help="SNR in dB", metavar="DB"
    )
    group.add_argument(
        "--noiseless", action="store_true", help="disable channel noise"
    )


def _snr_from_args(args) -> SnrSpec | None:
    if args.noiseless:
        return None
    return SnrSpec(args.snr_db)


def _cmd_estimate(args) -> int:
    c = by_name(args.constellation)
    block = transmit_block(
        c, args.n_symbols, math.radians(args.theta0_deg), _snr_from_args(args), args.seed
    )
    if args.estimator == "pmm":
        plan = PmmPlan(args.stages, args.phases, c.symmetry_order)
        result = pmm_estimate(c, block.samples, plan)
    elif args.estimator == "ple":
        result = ple_estimate(c, block.samples)
    else:
        cfg = MdeConfig(args.phases, c.symmetry_order)
        result = mde_estimate(c, block.samples, cfg)
    print(
        f"theta_hat_rad={format_number(result.theta_hat)} "
        f"theta_hat_deg={format_number(math.degrees(result.theta_hat))}"
    )
    return _EXIT_OK


def _cmd_metric(args) -> int:
    c = by_name(args.constellation)
    snr = _snr_from_args(args)
    block = transmit_block(
        c, args.n_symbols, math.radians(args.theta0_deg), snr, args.seed
    )
    n = args.phases
    if n is None:
        # Default grid: the single-stage MCRB sizing rule (needs an SNR).
        sizing_snr = snr if snr is not None else SnrSpec(20.0)
        n = planning.optimal_phase_count(c.symmetry_order, args.n_symbols, sizing_snr, 1)
    grid = stage_grid(0.0, 0.0, n, c.symmetry_order, first_stage=True)
    values = metric_profile(c, block.samples, grid.phases)
    out = open(args.out, "w", encoding="utf-8", newline="\n") if args.out else sys.stdout
    try:
        out.write(presets.METRIC_CSV_HEADER + "\n")
        for phase, value in zip(grid.phases, values):
            out.write(
                f"{c.label},{format_number(math.degrees(phase))},"
                f"{format_number(value)}\n"
            )
    finally:
        if args.out:
            out.close()
    return _EXIT_OK


def _cmd_plan(args) -> int:
    c = by_name(args.constellation)
    snr = SnrSpec(args.snr_db)
    table = planning.stage_cost_table(
        c.symmetry_order, c.size, args.n_symbols, snr, args.max_stages
    )
    best = planning.optimal_stage_count(
        c.symmetry_order, c.size, args.n_symbols, snr, args.max_stages
    )
    print("lambda,n0,cost,is_optimal")
    for entry in table:
        print(
            f"{entry.stages},{entry.phase_count},{entry.cost},"
            f"{int(entry.stages == best.stages)}"
        )
    return _EXIT_OK


def _cmd_cost(args) -> int:
    c = by_name(args.constellation)
    out = open(args.out, "w", encoding="utf-8", newline="\n") if args.out else sys.stdout
    try:
        out.write(presets.COST_CSV_HEADER + "\n")
        for n_symbols in args.n_symbols:
            for snr_db in args.snr_db:
                snr = SnrSpec(snr_db)
                table = planning.stage_cost_table(
                    c.symmetry_order, c.size, n_symbols, snr, args.max_stages
                )
                best = planning.optimal_stage_count(
                    c.symmetry_order, c.size, n_symbols, snr, args.max_stages
                )
                for entry in table:
                    out.write(
                        f"{c.label},{n_symbols},{format_number(snr_db)},"
                        f"{entry.stages},{entry.phase_count},{entry.cost},"
                        f"{int(entry.stages == best.stages)}\n"
                    )
    finally:
        if args.out:
            out.close()
    return _EXIT_OK


def _cmd_sweep(args) -> int:
    scenario = config.load_scenario(args.config)
    report = sweep(scenario, jobs=args.jobs)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            write_sweep_csv(report, fh)
        if args.plot:
            from . import plotting

            plotting.plot_sweep(report, Path(args.out).with_suffix(".png"))
    else:
        write_sweep_csv(report, sys.stdout)
    return _EXIT_OK


def _cmd_fig(args) -> int:
    written = presets.run_preset(
        args.id,
        master_seed=args.seed,
        trials=args.trials,
        out_dir=args.out,
        jobs=args.jobs,
        plot=not args.no_plot,
    )
    for path in written:
        print(path)
    return _EXIT_OK


def _build_parser() -> _Parser:
    parser = _Parser(prog="phaserec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("estimate", help="estimate the phase of one generated block")
    p.add_argument("--constellation", choices=NAMES, required=True)
    p.add_argument("--n-symbols", type=int, default=32, metavar="N")
    p.add_argument("--theta0-deg", type=float, default=30.0, metavar="DEG")
    _add_snr_args(p, required=True)
    p.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    p.add_argument("--estimator", choices=("pmm", "ple", "mde"), default="pmm")
    p.add_argument("--stages", type=int, default=2, help="pmm stage count")
    p.add_argument("--phases", type=int, default=10, help="pmm/mde phase count")
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("metric", help="dump the phase metric over a grid as CSV")
    p.add_argument("--constellation", choices=NAMES, required=True)
    p.add_argument("--n-symbols", type=int, default=64, metavar="N")
    p.add_argument("--theta0-deg", type=float, default=30.0, metavar="DEG")
    _add_snr_args(p, default_db=20.0)
    p.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    p.add_argument(
        "--phases",
        type=int,
        default=None,
        help="grid size (default: single-stage MCRB sizing)",
    )
    p.add_argument("--out", default=None, help="output CSV path (default stdout)")
    p.set_defaults(func=_cmd_metric)

    p = sub.add_parser("plan", help="print the stage-count cost table for a scenario")
    p.add_argument("--constellation", choices=NAMES, required=True)
    p.add_argument("--n-symbols", type=int, required=True, metavar="N")
    p.add_argument("--snr-db", type=float, required=True, metavar="DB")
    p.add_argument("--max-stages", type=int, default=8)
    p.set_defaults(func=_cmd_plan)

    p = sub.add_parser("cost", help="print cost-vs-stage-count curves as CSV")
    p.add_argument("--constellation", choices=NAMES, required=True)
    p.add_argument(
        "--n-symbols", type=int, nargs="+", required=True, metavar="N", dest="n_symbols"
    )
    p.add_argument("--snr-db", type=float, nargs="+", required=True, metavar="DB")
    p.add_argument("--max-stages", type=int, default=8)
    p.add_argument("--out", default=None, help="output CSV path (default stdout)")
    p.set_defaults(func=_cmd_cost)

    p = sub.add_parser("sweep", help="run a Monte Carlo sweep from a config file")
    p.add_argument("--config", required=True, help="flat key-value config file")
    p.add_argument("--out", default=None, help="output CSV path (default stdout)")
    p.add_argument(
        "--plot", action="store_true", help="also render a PNG next to --out"
    )
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("fig", help="run a canned preset and write its files")
    p.add_argument("--id", choices=presets.PRESET_IDS, required=True)
    p.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    p.add_argument("--trials", type=int, default=config.DEFAULT_TRIALS)
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--no-plot", action="store_true", help="skip PNG rendering")
    p.set_defaults(func=_cmd_fig)

    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return _EXIT_OK if exc.code in (0, None) else _EXIT_USAGE
    try:
        return args.func(args)
    except (config.ConfigError, EstimatorUndefinedError, ValueError, OSError) as exc:
        print(f"phaserec: error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    except (TrialFailureRateError, DegenerateStatisticError) as exc:
        print(f"phaserec: degenerate: {exc}", file=sys.stderr)
        return _EXIT_DEGENERATE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
