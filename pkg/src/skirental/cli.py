"""Command-line interface.

Usage:
    skirental solve --alpha 0.15 --buy-cost 10
    skirental solve --alpha 0.15 --eps 0.45 --format csv
    skirental sweep --start 0 --stop 1 --step 0.001
    skirental robustness --step 0.01 --output robustness.csv --format csv
    skirental simulate --alpha-used 0.6 --alpha-true 0.15 --trials 100000 --seed 3
    skirental table1 --trials 10000 --seed 0 --workers 4

Exit status is 0 on success, 2 on argument errors and 1 on numeric or
domain errors. Diagnostics go to standard error as a single line.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import report
from .errors import SkiRentalError
from .markers import UNBOUNDED
from .simulator import TrialConfig, run, run_table1
from .solver import Prediction, cross_expected_cr, guarantee_report, optimal_cutoff_z

__all__ = ["main", "build_parser"]

PROG = "skirental"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(2, f"{self.prog}: error: {message}\n")


def _probability(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid probability {text!r}") from None
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"invalid probability {text!r}: must lie in [0, 1]")
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number {text!r}") from None
    if not (value > 0.0 and math.isfinite(value)):
        raise argparse.ArgumentTypeError(f"invalid value {text!r}: must be positive")
    return value


def _nonnegative_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number {text!r}") from None
    if not (value >= 0.0 and math.isfinite(value)):
        raise argparse.ArgumentTypeError(f"invalid value {text!r}: must be nonnegative")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"invalid value {text!r}: must be at least 1")
    return value


def _seed(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}: must fit in 64 unsigned bits")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=PROG, description="Prediction-augmented ski rental solver.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", "-o", default=None, help="write here instead of stdout")

    def buy_cost(p):
        p.add_argument("--buy-cost", type=_positive_float, default=10.0)

    def grid(p):
        p.add_argument("--start", type=_probability, default=0.0)
        p.add_argument("--stop", type=_probability, default=1.0)
        p.add_argument("--step", type=_positive_float, default=0.001)

    def sampling(p):
        p.add_argument("--trials", type=_positive_int, default=10_000)
        p.add_argument("--seed", type=_seed, default=0)
        p.add_argument("--workers", type=_positive_int, default=1,
                       help="threads for trial blocks; output does not depend on it")

    p = sub.add_parser("solve", parents=[common], help="guarantees for one prediction")
    p.add_argument("--alpha", type=_probability, required=True)
    p.add_argument("--eps", type=_nonnegative_float, default=0.0)
    buy_cost(p)

    p = sub.add_parser("sweep", parents=[common], help="cutoff and optimal ratio over alpha")
    grid(p)
    buy_cost(p)

    p = sub.add_parser("robustness", parents=[common], help="best and worst ratio per prediction")
    grid(p)

    p = sub.add_parser("simulate", parents=[common], help="Monte-Carlo play of one pairing")
    p.add_argument("--alpha-used", type=_probability, required=True)
    p.add_argument("--alpha-true", type=_probability, required=True)
    buy_cost(p)
    sampling(p)

    p = sub.add_parser("table1", parents=[common], help="the three-arm B = 10 experiment")
    buy_cost(p)
    sampling(p)
    return parser


def _render(records, header, fmt: str, single: bool = False) -> str:
    if fmt == "csv":
        return report.records_to_csv(records, header)
    return report.records_to_json(records, header, single=single)


def _solve(args) -> str:
    result = guarantee_report(Prediction(args.alpha, args.eps), args.buy_cost)
    return _render([report.guarantee_record(result)], report.GUARANTEE_HEADER, args.format, True)


def _sweep(args) -> str:
    rows = report.emit_sweep(args.start, args.stop, args.step, args.buy_cost)
    return _render(rows, report.SWEEP_HEADER, args.format)


def _robustness(args) -> str:
    rows = report.emit_robustness(args.start, args.stop, args.step)
    return _render(rows, report.ROBUSTNESS_HEADER, args.format)


def _simulate(args) -> str:
    z = optimal_cutoff_z(args.alpha_used)
    if z is UNBOUNDED or z == 0.0:
        raise SkiRentalError(
            f"alpha-used={args.alpha_used} gives a degenerate cutoff; simulate needs 0 < alpha-used < 1"
        )
    config = TrialConfig(args.buy_cost, z, args.alpha_true, args.trials, args.seed)
    summary = run(config, workers=args.workers)
    label = f"used_{args.alpha_used!r}_true_{args.alpha_true!r}"
    record = report.simulation_record(label, summary, cross_expected_cr(args.alpha_used, args.alpha_true))
    return _render([record], report.SIMULATION_HEADER, args.format, True)


def _table1(args) -> str:
    rows = run_table1(args.buy_cost, args.trials, args.seed, workers=args.workers)
    return _render([report.table1_record(r) for r in rows], report.TABLE1_HEADER, args.format)


_COMMANDS = {
    "solve": _solve,
    "sweep": _sweep,
    "robustness": _robustness,
    "simulate": _simulate,
    "table1": _table1,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = _COMMANDS[args.command](args)
    except SkiRentalError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 1
    if args.output is None:
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
