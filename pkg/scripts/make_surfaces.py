#!/usr/bin/env python3
"""Tabulate the outcome-probability and expected-gain surfaces.

Writes the two sweep CSVs and, with --plot, renders heatmaps of P1/P3
and of the player's gain with the maximin eta marked.
"""

import argparse
from pathlib import Path

import numpy as np

from qgamble import io
from qgamble.equilibrium import bob_optimal_eta, sweep_distribution, sweep_gain
from qgamble.protocol import GameConfig


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--grid", type=int, default=101)
    ap.add_argument("--R", type=float, default=5.0)
    ap.add_argument("--out-dir", default="surfaces")
    ap.add_argument("--plot", action="store_true")
    args = ap.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    eps = np.linspace(0.0, 0.5, args.grid)
    eta = np.linspace(0.0, 1.0, args.grid)

    dist = sweep_distribution(eps, eta)
    gain = sweep_gain(GameConfig(args.R), eps, eta)
    io.write_sweep(dist, out / "distribution.csv")
    io.write_sweep(gain, out / f"gain_R{args.R:g}.csv")
    print(f"wrote {args.grid}x{args.grid} surfaces to {out}/")

    equilibrium = bob_optimal_eta(GameConfig(args.R))
    print(
        f"R={args.R:g}: eta_tilde={equilibrium.eta_tilde:.4f} "
        f"guaranteed_gain={equilibrium.guaranteed_gain:.4f} "
        f"alice_best_epsilon={equilibrium.alice_best_epsilon:.4f}"
    )

    if not args.plot:
        return

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, 3, figsize=(15, 4))
    extent = (eta[0], eta[-1], eps[0], eps[-1])
    for ax, grid_values, title in (
        (axes[0], dist.p1, "P1 (player wins the bet)"),
        (axes[1], dist.p3, "P3 (player wins R)"),
        (axes[2], gain.gain, f"player gain, R={args.R:g}"),
    ):
        im = ax.imshow(
            grid_values, origin="lower", aspect="auto", extent=extent
        )
        ax.set_xlabel("eta")
        ax.set_ylabel("epsilon")
        ax.set_title(title)
        fig.colorbar(im, ax=ax)
    axes[2].axvline(equilibrium.eta_tilde, color="white", ls="--", lw=1)
    fig.tight_layout()
    fig.savefig(out / "surfaces.png", dpi=150)
    print(f"wrote {out}/surfaces.png")


if __name__ == "__main__":
    main()
