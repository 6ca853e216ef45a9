"""Command-line surface: dist, sweep, equilibrium, circuit, simulate, serve."""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import io
from .engine import Strategy, detect_cheating, run_session, summarize
from .equilibrium import bob_optimal_eta, sweep_distribution, sweep_gain
from .optics import NoiseModel, angles_for, run_circuit
from .protocol import (
    GameConfig,
    PreparationChoice,
    SplittingChoice,
    outcome_distribution,
)

DEFAULT_PORT_ENV = "QGAMBLE_PORT"


def _choices(args) -> tuple[PreparationChoice, SplittingChoice]:
    return PreparationChoice(args.epsilon), SplittingChoice(args.eta)


def cmd_dist(args) -> int:
    prep, splitting = _choices(args)
    d = outcome_distribution(prep, splitting)
    print(f"p1={d.p1:.6f} p2={d.p2:.6f} p3={d.p3:.6f}")
    return 0


def cmd_sweep(args) -> int:
    if args.grid < 2:
        raise ValueError(f"grid must be at least 2, got {args.grid}")
    eps_grid = np.linspace(0.0, 0.5, args.grid)
    eta_grid = np.linspace(0.0, 1.0, args.grid)
    if args.kind == "dist":
        table = sweep_distribution(eps_grid, eta_grid)
    else:
        if args.R is None:
            raise ValueError("sweep gain needs --R")
        table = sweep_gain(GameConfig(args.R), eps_grid, eta_grid)
    out = args.out or f"sweep_{args.kind}.csv"
    io.write_sweep(table, out)
    print(f"wrote {args.grid * args.grid} rows to {out}")
    return 0


def cmd_equilibrium(args) -> int:
    result = bob_optimal_eta(GameConfig(args.R), tol=args.tol)
    print(f"eta_tilde={result.eta_tilde:.6f}")
    print(f"guaranteed_gain={result.guaranteed_gain:.6f}")
    print(f"alice_best_epsilon={result.alice_best_epsilon:.6f}")
    return 0


def cmd_circuit(args) -> int:
    prep, splitting = _choices(args)
    settings = angles_for(prep, splitting)
    d = run_circuit(settings, NoiseModel(args.error_rate))
    print(f"theta_a={math.degrees(settings.theta_a):.6f}deg")
    print(f"theta_b1={math.degrees(settings.theta_b1):.6f}deg")
    print(f"theta_b2={math.degrees(settings.theta_b2):.6f}deg")
    print(f"d1={d.d1:.6f} d2={d.d2:.6f} d3={d.d3:.6f}")
    return 0


def cmd_simulate(args) -> int:
    config = GameConfig(args.R)
    alice = Strategy.parse("alice", args.alice)
    bob = Strategy.parse("bob", args.bob)
    noise = NoiseModel(args.error_rate)
    ledger = run_session(alice, bob, config, args.rounds, args.seed, noise)
    out = args.out or "session.ledger"
    io.write_ledger(ledger, out)
    s = summarize(ledger)
    print(f"rounds={s.n_rounds} seed={args.seed}")
    print(f"p1_hat={s.p1_hat:.6f} p2_hat={s.p2_hat:.6f} p3_hat={s.p3_hat:.6f}")
    print(f"mean_gain={s.mean_gain:.6f} std_error={s.std_error:.6f}")
    print(f"bankroll={s.final_bankroll:.6f}")
    etas = {r.eta_used for r in ledger.rounds}
    if len(etas) == 1:
        test = detect_cheating(ledger, etas.pop(), noise)
        print(
            f"cheat_test: d3={test.d3_count} p_value={test.p_value:.6g} "
            f"flagged={str(test.flagged).lower()}"
        )
    print(f"ledger written to {out}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    port = args.port or int(os.environ.get(DEFAULT_PORT_ENV, "8000"))
    ui_dir = args.ui_dir or os.environ.get("QGAMBLE_UI_DIR")
    uvicorn.run(
        create_app(ui_dir=ui_dir),
        host=args.host,
        port=port,
        log_level="warning",
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qgamble",
        description="Quantum gambling: distributions, strategies, bench "
        "simulation and Monte Carlo sessions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", help="exact detector distribution")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--eta", type=float, required=True)
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("sweep", help="tabulate a parameter sweep to a file")
    p.add_argument("kind", choices=("dist", "gain"))
    p.add_argument("--grid", type=int, default=101, help="points per axis")
    p.add_argument("--R", type=float, default=None, help="punishment coins")
    p.add_argument("--out", default=None, help="output path")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("equilibrium", help="maximin splitting parameter")
    p.add_argument("--R", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-4)
    p.set_defaults(func=cmd_equilibrium)

    p = sub.add_parser("circuit", help="bench angles and detector rates")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--error-rate", type=float, default=0.0)
    p.set_defaults(func=cmd_circuit)

    p = sub.add_parser("simulate", help="run a seeded gambling session")
    p.add_argument("--alice", default="fair", help="fair|equilibrium|fixed:<v>|cheat:<v>")
    p.add_argument("--bob", default="equilibrium", help="fair|equilibrium|fixed:<v>")
    p.add_argument("--R", type=float, required=True)
    p.add_argument("--rounds", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--error-rate", type=float, default=0.0)
    p.add_argument("--out", default=None, help="ledger output path")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("serve", help="run the HTTP session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument(
        "--port",
        type=int,
        default=None,
        help=f"default from ${DEFAULT_PORT_ENV} or 8000",
    )
    p.add_argument(
        "--ui-dir",
        default=None,
        help="built web-UI assets to serve under /ui ($QGAMBLE_UI_DIR)",
    )
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
