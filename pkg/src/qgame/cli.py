"""Command-line front end.

Subcommands: play, surface, maximin-curve, miracle, nash, threshold,
verify.  Sweeps write CSV (or JSON) with fixed headers; identical flags
always produce byte-identical output, for any worker count.

Exit codes: 0 success, 2 usage error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import backend
from .analysis import (
    BracketError,
    StrategyGrid,
    dominant_strategy,
    find_nash,
    maximin,
    threshold_gamma,
    verify_correspondence,
)
from .game import PayoffTable, figure_path_strategy, play
from .gates import BASIS_LABELS, StrategyParams

# Angles travel as radians with 10 significant digits; payoff-valued numbers
# use the shortest round-trip representation.
_ANGLE_FMT = "{:.10g}"

SURFACE_HEADER = "t_a,t_b,payoff_a"
MAXIMIN_HEADER = "gamma,m,argmax_theta,argmax_phi"
MIRACLE_HEADER = "theta,alice_c,alice_d,alice_m,bob_vs_m"


def _angle(x: float) -> str:
    return _ANGLE_FMT.format(float(x))


def _num(x: float) -> str:
    return repr(float(x))


def _gamma_flag(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not (math.isfinite(value) and 0.0 <= value <= math.pi / 2):
        raise argparse.ArgumentTypeError(
            f"gamma must lie in [0, pi/2] (~[0, 1.5707963268]), got {text}"
        )
    return value


def _strategy_flag(text: str) -> StrategyParams:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(
            f"expected 'theta,phi' with theta in [0, pi] and phi in [0, pi/2], got {text!r}"
        )
    try:
        return StrategyParams(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _payoffs_flag(text: str) -> PayoffTable:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"expected 'r,p,t,s', got {text!r}")
    try:
        return PayoffTable(*(float(p) for p in parts))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _grid_flag(text: str) -> StrategyGrid:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'THETAxPHI' counts, got {text!r}")
    try:
        return StrategyGrid(int(parts[0]), int(parts[1]))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError(f"expected a count >= 2, got {text}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not (math.isfinite(value) and value > 0):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", newline="") as fh:
        fh.write(text)


def _emit_table(args, header: str, kinds: str, rows) -> None:
    """Write rows as CSV or a JSON array of row objects.

    ``kinds`` marks each column 'a' (angle, 10 significant digits) or
    'n' (payoff-valued, shortest round-trip).
    """
    names = header.split(",")
    if args.format == "csv":
        fmt = [_angle if k == "a" else _num for k in kinds]
        lines = [header]
        for row in rows:
            lines.append(",".join(f(v) for f, v in zip(fmt, row)))
        _write_text(args.out, "\n".join(lines) + "\n")
    else:
        payload = [dict(zip(names, (float(v) for v in row))) for row in rows]
        _write_text(args.out, json.dumps(payload, indent=2) + "\n")


def cmd_play(args) -> int:
    result = play(args.gamma, args.alice, args.bob, args.payoffs)
    lines = [
        f"gamma: {_angle(result.gamma)}",
        f"alice: {_angle(args.alice.theta)},{_angle(args.alice.phi)}",
        f"bob: {_angle(args.bob.theta)},{_angle(args.bob.phi)}",
    ]
    amp = result.final_state.amp
    probs = result.distribution.as_array()
    for idx, label in enumerate(BASIS_LABELS):
        re, im = float(amp[idx].real), float(amp[idx].imag)
        sign = "+" if im >= 0 else ""
        lines.append(f"amp_{label}: {_num(re)}{sign}{_num(im)}j")
    for idx, label in enumerate(BASIS_LABELS):
        lines.append(f"p_{label}: {_num(probs[idx])}")
    lines.append(f"payoff_alice: {_num(result.payoffs.alice)}")
    lines.append(f"payoff_bob: {_num(result.payoffs.bob)}")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def cmd_surface(args) -> int:
    ts = np.linspace(-1.0, 1.0, args.steps)
    params = [figure_path_strategy(float(t)) for t in ts]
    thetas = np.array([p.theta for p in params])
    phis = np.array([p.phi for p in params])
    pay, _ = backend.payoff_matrices(
        args.gamma, thetas, phis, thetas, phis,
        args.payoffs.alice_weights(), None, args.workers,
    )
    rows = (
        (float(ts[i]), float(ts[j]), float(pay[i, j]))
        for i in range(len(ts))
        for j in range(len(ts))
    )
    _emit_table(args, SURFACE_HEADER, "aan", rows)
    return 0


def cmd_maximin_curve(args) -> int:
    gammas = np.linspace(0.0, math.pi / 2, args.steps)
    rows = []
    for g in gammas:
        point = maximin(float(g), args.grid, args.payoffs, args.workers)
        rows.append(
            (float(g), point.m, point.argmax_strategy.theta, point.argmax_strategy.phi)
        )
    _emit_table(args, MAXIMIN_HEADER, "anaa", rows)
    return 0


def cmd_miracle(args) -> int:
    gamma = math.pi / 2
    bob_thetas = np.linspace(0.0, math.pi, args.steps)
    bob_phis = np.zeros_like(bob_thetas)
    alice_thetas = np.array([0.0, math.pi, math.pi / 2])
    alice_phis = np.array([0.0, 0.0, math.pi / 2])
    pay_a, pay_b = backend.payoff_matrices(
        gamma, alice_thetas, alice_phis, bob_thetas, bob_phis,
        args.payoffs.alice_weights(), args.payoffs.bob_weights(), args.workers,
    )
    rows = (
        (
            float(bob_thetas[j]),
            float(pay_a[0, j]),
            float(pay_a[1, j]),
            float(pay_a[2, j]),
            float(pay_b[2, j]),
        )
        for j in range(len(bob_thetas))
    )
    _emit_table(args, MIRACLE_HEADER, "annnn", rows)
    return 0


def cmd_nash(args) -> int:
    reports = find_nash(args.gamma, args.grid, args.payoffs, args.epsilon, args.workers)
    dominant = dominant_strategy(args.gamma, args.grid, args.payoffs, args.workers)

    def params_obj(p: StrategyParams):
        return {"theta": p.theta, "phi": p.phi}

    payload = {
        "gamma": float(args.gamma),
        "epsilon": float(args.epsilon),
        "grid": {
            "theta_steps": args.grid.theta_steps,
            "phi_steps": args.grid.phi_steps,
            "classical_only": args.grid.classical_only,
        },
        "payoffs": {
            "r": args.payoffs.r,
            "p": args.payoffs.p,
            "t": args.payoffs.t,
            "s": args.payoffs.s,
        },
        "equilibria": [
            {
                "alice": params_obj(r.pair[0]),
                "bob": params_obj(r.pair[1]),
                "payoff_alice": r.payoffs.alice,
                "payoff_bob": r.payoffs.bob,
                "is_nash": r.is_nash,
                "nash_slack": r.nash_slack,
                "is_pareto": r.is_pareto,
            }
            for r in reports
        ],
        "dominant": params_obj(dominant) if dominant is not None else None,
    }
    _write_text(args.out, json.dumps(payload, indent=2) + "\n")
    return 0


def cmd_threshold(args) -> int:
    value = threshold_gamma(args.payoffs, args.grid, args.tol, args.workers)
    reference = math.asin(1.0 / math.sqrt(5.0))
    sys.stdout.write(
        f"gamma_th: {_angle(value)}\n"
        f"reference: {_angle(reference)}\n"
        f"difference: {_num(value - reference)}\n"
    )
    return 0


def cmd_verify(args) -> int:
    report = verify_correspondence(args.gamma)
    residuals = {
        "commutator_dd": report.commutator_dd,
        "commutator_dc": report.commutator_dc,
        "commutator_cd": report.commutator_cd,
        "factorization_deviation": report.factorization_deviation,
    }
    lines = [f"gamma: {_angle(report.gamma)}"]
    lines += [f"{name}: {_num(value)}" for name, value in residuals.items()]
    worst = max(residuals.values())
    lines.append(f"status: {'ok' if worst <= 1e-10 else 'FAILED'}")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0 if worst <= 1e-10 else 3


def _add_common(sub, *, out: bool = True) -> None:
    sub.add_argument(
        "--payoffs", type=_payoffs_flag, default=PayoffTable.default(),
        metavar="R,P,T,S", help="payoff table values (default 3,1,5,0)",
    )
    sub.add_argument(
        "--workers", type=int, default=1, metavar="N",
        help="parallel workers for grid sweeps (output is identical for any N)",
    )
    if out:
        sub.add_argument(
            "--out", default="-", metavar="PATH",
            help="output file, '-' for stdout (default)",
        )


def _add_format(sub) -> None:
    sub.add_argument(
        "--format", choices=("csv", "json"), default="csv",
        help="output format (default csv)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qgame",
        description="Entangled two-player binary-choice games: play, sweep, analyze.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    half_pi = math.pi / 2

    p = subparsers.add_parser("play", help="play one round and print the result")
    p.add_argument("--gamma", type=_gamma_flag, default=half_pi)
    p.add_argument("--alice", type=_strategy_flag, default=StrategyParams(0, 0),
                   metavar="THETA,PHI")
    p.add_argument("--bob", type=_strategy_flag, default=StrategyParams(0, 0),
                   metavar="THETA,PHI")
    _add_common(p, out=False)
    p.set_defaults(func=cmd_play)

    p = subparsers.add_parser(
        "surface", help="payoff of the row player over the t-path square"
    )
    p.add_argument("--gamma", type=_gamma_flag, default=half_pi)
    p.add_argument("--steps", type=_positive_int, default=101,
                   help="path resolution per axis (default 101)")
    _add_format(p)
    _add_common(p)
    p.set_defaults(func=cmd_surface)

    p = subparsers.add_parser(
        "maximin-curve", help="guaranteed payoff m over the entanglement range"
    )
    p.add_argument("--steps", type=_positive_int, default=65,
                   help="number of gamma samples (default 65)")
    p.add_argument("--grid", type=_grid_flag, default=StrategyGrid(),
                   metavar="TxP", help="strategy grid (default 101x51)")
    _add_format(p)
    _add_common(p)
    p.set_defaults(func=cmd_maximin_curve)

    p = subparsers.add_parser(
        "miracle",
        help="payoffs of cooperate/defect/miracle against every classical move",
    )
    p.add_argument("--steps", type=_positive_int, default=1001,
                   help="number of opponent theta samples (default 1001)")
    _add_format(p)
    _add_common(p)
    p.set_defaults(func=cmd_miracle)

    p = subparsers.add_parser("nash", help="equilibrium report as JSON")
    p.add_argument("--gamma", type=_gamma_flag, default=half_pi)
    p.add_argument("--grid", type=_grid_flag, default=StrategyGrid(), metavar="TxP")
    p.add_argument("--epsilon", type=_positive_float, default=1e-3,
                   help="unilateral-gain tolerance (default 1e-3)")
    _add_common(p)
    p.set_defaults(func=cmd_nash)

    p = subparsers.add_parser(
        "threshold", help="entanglement level where the guaranteed strategy jumps"
    )
    p.add_argument("--tol", type=_positive_float, default=1e-4,
                   help="bisection tolerance in radians (default 1e-4)")
    p.add_argument("--grid", type=_grid_flag, default=StrategyGrid(), metavar="TxP")
    _add_common(p, out=False)
    p.set_defaults(func=cmd_threshold)

    p = subparsers.add_parser(
        "verify", help="classical-embedding residuals at one gamma"
    )
    p.add_argument("--gamma", type=_gamma_flag, default=half_pi)
    _add_common(p, out=False)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BracketError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
