#!/usr/bin/env python3
"""Measure how many rounds the player needs to catch a biased casino.

Sweeps the session length and reports the empirical flag rate of the
one-sided D3 test over seeded replications.
"""

import argparse

from qgamble.engine import NoiseModel, cheat_detection_power
from qgamble.protocol import GameConfig


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--epsilon", type=float, default=0.2, help="casino bias")
    ap.add_argument("--eta", type=float, default=0.27)
    ap.add_argument("--R", type=float, default=5.0)
    ap.add_argument("--error-rate", type=float, default=0.025)
    ap.add_argument("--replications", type=int, default=200)
    ap.add_argument("--seed", type=int, default=20260809)
    ap.add_argument(
        "--rounds",
        type=int,
        nargs="+",
        default=[100, 300, 1000, 3000, 10000],
    )
    args = ap.parse_args()

    config = GameConfig(args.R)
    noise = NoiseModel(args.error_rate)
    print(
        f"epsilon={args.epsilon} eta={args.eta} e={args.error_rate} "
        f"replications={args.replications}"
    )
    print("rounds,flag_rate")
    for n in args.rounds:
        power = cheat_detection_power(
            epsilon_cheat=args.epsilon,
            eta=args.eta,
            config=config,
            noise=noise,
            n_rounds=n,
            n_replications=args.replications,
            seed=args.seed,
        )
        print(f"{n},{power:.3f}")


if __name__ == "__main__":
    main()
