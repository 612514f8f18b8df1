"""Command-line entry point: ``quantum-pd <subcommand> ...``.

Exit codes: 0 success, 2 invalid configuration, 3 I/O failure, 4 empty result.
"""
import argparse
import json
import math
import sys

from . import sweep
from .equilibrium import NASH_EPS, best_response, classify_region
from .errors import DomainError, EmptyResultError, ValidationError
from .game import PayoffTable, simulate_payoffs
from .oracle import grid_best_response, grid_nash_scan, scan_eps
from .strategy import format_strategy, parse_strategy
from .tensor import build_tensor, payoff_via_tensor

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_EMPTY = 4

DIMS = {"two-param": 3, "full": 4}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _common(p, gamma=False):
    p.add_argument("--payoffs", required=True, metavar="r,p,t,s",
                   help="classical payoffs, must satisfy t>r>p>s")
    p.add_argument("--degrees", action="store_true",
                   help="read gamma and angle literals in degrees")
    if gamma:
        p.add_argument("--space", choices=sweep.SPACES, default="two-param")
        p.add_argument("--gamma", type=float, required=True)


def build_parser():
    parser = _Parser(prog="quantum-pd", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sweep", help="equilibria and payoffs across a gamma range")
    _common(p)
    p.add_argument("--space", choices=sweep.SPACES, default="two-param")
    p.add_argument("--gamma-min", type=float, default=0.0)
    p.add_argument("--gamma-max", type=float, default=None, help="default pi/2")
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--format", choices=sweep.FORMATS, default="csv")
    p.add_argument("--eps", type=float, default=NASH_EPS)
    p.add_argument("--grid-n", type=int, default=None,
                   help="also compare each equilibrium with a grid oracle")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.add_argument("--plot-script", default=None,
                   help="write a matplotlib script that plots the CSV output")

    p = sub.add_parser("thresholds", help="entanglement thresholds and region layout")
    _common(p)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("tensor", help="dump nonzero payoff tensor entries as JSON")
    _common(p, gamma=True)
    p.add_argument("--out", default=None)

    p = sub.add_parser("best-response", help="eigenvector best reply to a strategy")
    _common(p, gamma=True)
    p.add_argument("--strategy", required=True)

    p = sub.add_parser("verify", help="compare the eigen best reply with a grid search")
    _common(p, gamma=True)
    p.add_argument("--strategy", required=True)
    p.add_argument("--grid-n", type=int, default=32)
    p.add_argument("--scan", action="store_true",
                   help="also run a grid scan for eps-equilibria")
    p.add_argument("--eps", type=float, default=None,
                   help="scan slack (default scales with 1/n^2)")

    p = sub.add_parser("payoff", help="payoffs for one strategy profile")
    _common(p, gamma=True)
    p.add_argument("--alice", required=True)
    p.add_argument("--bob", required=True)
    return parser


def _angle(value, degrees):
    return math.radians(value) if degrees else value


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w") as fh:
        fh.write(text)


def _vec(u):
    return [float(c) + 0.0 for c in u]


def cmd_sweep(args, table):
    gmax = math.pi / 2 if args.gamma_max is None else _angle(args.gamma_max, args.degrees)
    config = sweep.SweepConfig(
        table=table,
        space=args.space,
        gamma_min=_angle(args.gamma_min, args.degrees),
        gamma_max=min(gmax, math.pi / 2) if args.degrees else gmax,
        steps=args.steps,
        fmt=args.format,
        eps=args.eps,
        grid_n=args.grid_n,
    )
    rows = sweep.run_sweep(config)
    if not rows:
        raise EmptyResultError("sweep produced no rows")
    _emit(sweep.render(rows, config), args.out)
    if args.plot_script:
        sweep.emit_plot_script(rows, args.plot_script, csv_path=args.out or "sweep.csv",
                               table=table, space=args.space)


def cmd_thresholds(args, table):
    report = sweep.threshold_report(table)
    if args.format == "json":
        _emit(json.dumps(report, indent=2) + "\n", None)
    else:
        _emit(sweep.format_threshold_report(report), None)


def cmd_tensor(args, table):
    tensor = build_tensor(table, _angle(args.gamma, args.degrees), args.space)
    entries = [{"i": i, "j": j, "k": k, "l": l, "value": v}
               for i, j, k, l, v in tensor.nonzero_entries()]
    _emit(json.dumps(entries, indent=1) + "\n", args.out)


def cmd_best_response(args, table):
    gamma = _angle(args.gamma, args.degrees)
    tensor = build_tensor(table, gamma, args.space)
    u = parse_strategy(args.strategy, DIMS[args.space], args.degrees)
    pair = best_response(tensor, u)
    doc = {
        "gamma": gamma,
        "strategy": _vec(u),
        "best_response": _vec(pair.eigenvector),
        "best_response_literal": format_strategy(pair.eigenvector),
        "payoff": pair.eigenvalue,
        "degenerate": len(pair.eigenspace) > 1,
        "eigenspace": [_vec(v) for v in pair.eigenspace],
    }
    _emit(json.dumps(doc, indent=2) + "\n", None)


def cmd_verify(args, table):
    gamma = _angle(args.gamma, args.degrees)
    tensor = build_tensor(table, gamma, args.space)
    u = parse_strategy(args.strategy, DIMS[args.space], args.degrees)
    pair = best_response(tensor, u)
    grid_vec, grid_pay = grid_best_response(tensor, u, args.grid_n)
    doc = {
        "method_result": {"strategy": _vec(pair.eigenvector), "payoff": pair.eigenvalue},
        "oracle_result": {"strategy": _vec(grid_vec), "payoff": grid_pay, "grid_n": args.grid_n},
        "gap": pair.eigenvalue - grid_pay,
    }
    if args.scan:
        eps = scan_eps(args.grid_n) if args.eps is None else args.eps
        found = grid_nash_scan(tensor, args.grid_n, eps)
        report = classify_region(table, gamma, args.space)
        doc["scan"] = {
            "eps": eps,
            "region": report.region.value,
            "count": len(found),
            "profiles": [
                {"strategy_a": _vec(f.strategy_a), "strategy_b": _vec(f.strategy_b),
                 "payoff_a": f.payoff_a, "payoff_b": f.payoff_b,
                 "regret_a": f.regret_a, "regret_b": f.regret_b}
                for f in found
            ],
        }
    _emit(json.dumps(doc, indent=2) + "\n", None)


def cmd_payoff(args, table):
    gamma = _angle(args.gamma, args.degrees)
    dim = DIMS[args.space]
    u_a = parse_strategy(args.alice, dim, args.degrees)
    u_b = parse_strategy(args.bob, dim, args.degrees)
    via_tensor = payoff_via_tensor(build_tensor(table, gamma, args.space), u_a, u_b)
    simulated = simulate_payoffs(u_a, u_b, gamma, table)
    doc = {
        "gamma": gamma,
        "strategy_a": _vec(u_a),
        "strategy_b": _vec(u_b),
        "payoff_a": via_tensor.payoff_a,
        "payoff_b": via_tensor.payoff_b,
        "simulated": {"payoff_a": simulated.payoff_a, "payoff_b": simulated.payoff_b},
    }
    _emit(json.dumps(doc, indent=2) + "\n", None)


COMMANDS = {
    "sweep": cmd_sweep,
    "thresholds": cmd_thresholds,
    "tensor": cmd_tensor,
    "best-response": cmd_best_response,
    "verify": cmd_verify,
    "payoff": cmd_payoff,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        table = PayoffTable.parse(args.payoffs)
        COMMANDS[args.command](args, table)
    except (ValidationError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except EmptyResultError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
