"""File formats: line-delimited session ledgers and delimited sweep tables.

Floats are written with ``repr``, the shortest decimal that round-trips
to the exact same double, so files are deterministic and parsing one
reproduces the in-memory values bit for bit.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .engine import RoundOutcome, SessionLedger
from .equilibrium import SweepTable

__all__ = [
    "LEDGER_HEADER",
    "write_ledger",
    "read_ledger",
    "write_sweep",
    "read_sweep",
]

LEDGER_HEADER = "index,epsilon,eta,detector,payoff,bankroll"


def _fmt(x: float) -> str:
    return repr(float(x))


def write_ledger(ledger: SessionLedger, path) -> None:
    """One round per line: index, epsilon, eta, detector, payoff, bankroll."""
    lines = [LEDGER_HEADER]
    for outcome, bank in zip(ledger.rounds, ledger.bankroll):
        lines.append(
            ",".join(
                (
                    str(outcome.round_index),
                    _fmt(outcome.epsilon_used),
                    _fmt(outcome.eta_used),
                    outcome.detector,
                    _fmt(outcome.payoff),
                    _fmt(bank),
                )
            )
        )
    Path(path).write_text("\n".join(lines) + "\n")


def read_ledger(path) -> tuple[list[RoundOutcome], list[float]]:
    """Parse a ledger file back into rounds and the bankroll series."""
    lines = Path(path).read_text().splitlines()
    if not lines or lines[0] != LEDGER_HEADER:
        raise ValueError(f"{path} is not a ledger file")
    rounds: list[RoundOutcome] = []
    bankroll: list[float] = []
    for line in lines[1:]:
        index, epsilon, eta, detector, payoff, bank = line.split(",")
        rounds.append(
            RoundOutcome(
                round_index=int(index),
                epsilon_used=float(epsilon),
                eta_used=float(eta),
                detector=detector,
                payoff=float(payoff),
            )
        )
        bankroll.append(float(bank))
    return rounds, bankroll


def write_sweep(table: SweepTable, path) -> None:
    """Header row then row-major cells over (epsilon, eta)."""
    has_gain = table.gain is not None
    header = "epsilon,eta,p1,p2,p3" + (",gain" if has_gain else "")
    lines = [header]
    for i, eps in enumerate(table.epsilon_grid):
        for j, eta in enumerate(table.eta_grid):
            cells = [
                _fmt(eps),
                _fmt(eta),
                _fmt(table.p1[i, j]),
                _fmt(table.p2[i, j]),
                _fmt(table.p3[i, j]),
            ]
            if has_gain:
                cells.append(_fmt(table.gain[i, j]))
            lines.append(",".join(cells))
    Path(path).write_text("\n".join(lines) + "\n")


def read_sweep(path) -> SweepTable:
    """Parse a sweep file back into a table (punishment is not stored)."""
    lines = Path(path).read_text().splitlines()
    if not lines:
        raise ValueError(f"{path} is empty")
    header = lines[0].split(",")
    if header[:5] != ["epsilon", "eta", "p1", "p2", "p3"]:
        raise ValueError(f"{path} is not a sweep file")
    has_gain = header[5:] == ["gain"]
    rows = [line.split(",") for line in lines[1:]]
    eps_values = [float(r[0]) for r in rows]
    eta_values = [float(r[1]) for r in rows]
    eta_grid = []
    for v in eta_values:
        if eta_grid and v == eta_grid[0]:
            break
        eta_grid.append(v)
    n_eta = len(eta_grid)
    if len(rows) % n_eta != 0:
        raise ValueError(f"{path} has a ragged grid")
    eps_grid = eps_values[::n_eta]
    shape = (len(eps_grid), n_eta)

    def column(idx: int) -> np.ndarray:
        return np.array([float(r[idx]) for r in rows]).reshape(shape)

    return SweepTable(
        epsilon_grid=np.array(eps_grid),
        eta_grid=np.array(eta_grid),
        p1=column(2),
        p2=column(3),
        p3=column(4),
        gain=column(5) if has_gain else None,
    )
