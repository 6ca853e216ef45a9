"""HTTP session service: interactive gambling tables plus analysis queries.

A session pits a human (playing either role, or neither) against machine
policies.  The machine's parameter for each round is drawn and committed
(hash published) before the human's input is read, so the house cannot
adapt to the bet; the parameter and nonce are revealed once the round
settles.  Analysis endpoints are stateless and answer exactly what the
CLI answers.
"""

from __future__ import annotations

import hashlib
import threading
import uuid
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Literal

import numpy as np
from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .engine import (
    RoundOutcome,
    SessionLedger,
    Strategy,
    detect_cheating,
    payoff_for,
    round_probabilities,
    _pick_detector,
)
from .equilibrium import bob_optimal_eta, sweep_distribution, sweep_gain
from .optics import NoiseModel, angles_for, run_circuit
from .protocol import (
    GameConfig,
    PreparationChoice,
    SplittingChoice,
    expected_gain,
    outcome_distribution,
)

__all__ = ["create_app"]

SIGNIFICANCE = 0.01


class CreateSessionRequest(BaseModel):
    R: float
    human_role: Literal["alice", "bob", "none"] = "alice"
    opponent_policy: str = "equilibrium"
    noise_e: float = 0.0
    seed: int | None = None


class RoundRequest(BaseModel):
    epsilon: float | None = None
    eta: float | None = None
    bet: bool = True


@dataclass
class _Commitment:
    round_index: int
    parameters: dict[str, float]
    nonce: str
    digest: str


@dataclass
class _Session:
    session_id: str
    config: GameConfig
    human_role: str
    opponent_policy: str
    machine: dict[str, Strategy]
    noise: NoiseModel
    seed: int
    rng: np.random.Generator
    commit_rng: np.random.Generator
    ledger: SessionLedger
    revealed: list[_Commitment] = field(default_factory=list)
    pending: _Commitment | None = None
    status: str = "open"
    lock: threading.Lock = field(default_factory=threading.Lock)


def _commit(session: _Session, round_index: int) -> _Commitment:
    parameters = {
        role: strategy.parameter(round_index, session.config)
        for role, strategy in session.machine.items()
    }
    nonce = session.commit_rng.bytes(16).hex()
    payload = ":".join(
        [str(round_index)]
        + [f"{role}={repr(v)}" for role, v in sorted(parameters.items())]
        + [nonce]
    )
    return _Commitment(
        round_index=round_index,
        parameters=parameters,
        nonce=nonce,
        digest=hashlib.sha256(payload.encode()).hexdigest(),
    )


def _machine_strategies(
    human_role: str, policy: str, config: GameConfig
) -> dict[str, Strategy]:
    if human_role == "alice":
        roles = ["bob"]
    elif human_role == "bob":
        roles = ["alice"]
    else:
        # unattended table: the policy drives the casino, the player
        # side defends with its maximin parameter
        return {
            "alice": Strategy.parse("alice", policy),
            "bob": Strategy.equilibrium("bob"),
        }
    return {role: Strategy.parse(role, policy) for role in roles}


def _cheat_status(session: _Session) -> dict | None:
    """One-sided D3 test whenever every round so far shares one eta."""
    ledger = session.ledger
    if ledger.n_rounds == 0:
        return None
    etas = {r.eta_used for r in ledger.rounds}
    if len(etas) != 1:
        return {"available": False, "reason": "eta varied across rounds"}
    test = detect_cheating(ledger, etas.pop(), session.noise, SIGNIFICANCE)
    return {
        "available": True,
        "d3_count": test.d3_count,
        "rounds_observed": test.rounds_observed,
        "expected_noise_rate": test.expected_noise_rate,
        "p_value": test.p_value,
        "significance": test.significance,
        "flagged": test.flagged,
    }


@lru_cache(maxsize=64)
def _cached_equilibrium(punishment: float, tol: float):
    return bob_optimal_eta(GameConfig(punishment), tol=tol)


def _sweep_payload(kind: str, grid: int, punishment: float | None) -> dict:
    if kind not in ("dist", "gain"):
        raise ValueError(f"kind must be dist or gain, got {kind!r}")
    if grid < 2:
        raise ValueError(f"grid must be at least 2, got {grid}")
    eps_grid = np.linspace(0.0, 0.5, grid)
    eta_grid = np.linspace(0.0, 1.0, grid)
    if kind == "gain":
        if punishment is None:
            raise ValueError("sweep gain needs R")
        table = sweep_gain(GameConfig(punishment), eps_grid, eta_grid)
    else:
        table = sweep_distribution(eps_grid, eta_grid)
    payload = {
        "kind": kind,
        "grid": grid,
        "R": punishment,
        "epsilon": table.epsilon_grid.tolist(),
        "eta": table.eta_grid.tolist(),
        "p1": table.p1.tolist(),
        "p2": table.p2.tolist(),
        "p3": table.p3.tolist(),
    }
    if table.gain is not None:
        payload["gain"] = table.gain.tolist()
    return payload


def create_app(ui_dir: str | None = None) -> FastAPI:
    """Build the service; when ui_dir points at built web-UI assets they
    are served under /ui so the table runs same-origin."""
    app = FastAPI(title="qgamble", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, _Session] = {}
    store_lock = threading.Lock()

    def get_session(session_id: str) -> _Session:
        session = sessions.get(session_id)
        if session is None:
            raise HTTPException(404, f"unknown session {session_id}")
        return session

    @app.post("/sessions")
    def create_session(request: CreateSessionRequest):
        try:
            config = GameConfig(request.R)
            noise = NoiseModel(request.noise_e)
            machine = _machine_strategies(
                request.human_role, request.opponent_policy, config
            )
        except ValueError as exc:
            raise HTTPException(400, str(exc))
        seed = (
            request.seed
            if request.seed is not None
            else int(np.random.SeedSequence().generate_state(1)[0])
        )
        rng = np.random.default_rng(seed)
        commit_rng = rng.spawn(1)[0]
        session = _Session(
            session_id=uuid.uuid4().hex,
            config=config,
            human_role=request.human_role,
            opponent_policy=request.opponent_policy,
            machine=machine,
            noise=noise,
            seed=seed,
            rng=rng,
            commit_rng=commit_rng,
            ledger=SessionLedger(config=config, seed=seed),
        )
        session.pending = _commit(session, 0)
        with store_lock:
            sessions[session.session_id] = session
        return {
            "session_id": session.session_id,
            "R": config.punishment,
            "bet": config.bet,
            "human_role": session.human_role,
            "opponent_policy": session.opponent_policy,
            "noise_e": noise.error_rate,
            "seed": seed,
            "next_commitment": session.pending.digest,
        }

    @app.post("/sessions/{session_id}/rounds")
    def play_round(session_id: str, request: RoundRequest):
        session = get_session(session_id)
        with session.lock:
            if session.status == "closed":
                raise HTTPException(409, f"session {session_id} is closed")
            if not request.bet:
                raise HTTPException(400, "bet must be confirmed")
            parameters = dict(session.pending.parameters)
            try:
                if session.human_role == "alice":
                    if request.epsilon is None:
                        raise ValueError("epsilon is required when playing alice")
                    parameters["alice"] = PreparationChoice(
                        request.epsilon
                    ).epsilon
                elif session.human_role == "bob":
                    if request.eta is None:
                        raise ValueError("eta is required when playing bob")
                    parameters["bob"] = SplittingChoice(request.eta).eta
            except ValueError as exc:
                raise HTTPException(400, str(exc))
            epsilon = parameters["alice"]
            eta = parameters["bob"]
            probs = round_probabilities(epsilon, eta, session.noise)
            detector = _pick_detector(probs[0], probs[1], session.rng.random())
            index = session.ledger.n_rounds
            outcome = RoundOutcome(
                round_index=index,
                epsilon_used=epsilon,
                eta_used=eta,
                detector=detector,
                payoff=payoff_for(detector, session.config),
            )
            session.ledger.append(outcome)
            revealed = session.pending
            session.revealed.append(revealed)
            session.pending = _commit(session, index + 1)
            return {
                "round_index": index,
                "detector": detector,
                "payoff": outcome.payoff,
                "bankroll": session.ledger.final_bankroll,
                "machine_parameters": revealed.parameters,
                "commitment": revealed.digest,
                "commitment_nonce": revealed.nonce,
                "next_commitment": session.pending.digest,
                "cheat": _cheat_status(session),
            }

    @app.get("/sessions/{session_id}")
    def session_summary(session_id: str):
        session = get_session(session_id)
        with session.lock:
            return {
                "session_id": session.session_id,
                "status": session.status,
                "R": session.config.punishment,
                "bet": session.config.bet,
                "human_role": session.human_role,
                "opponent_policy": session.opponent_policy,
                "noise_e": session.noise.error_rate,
                "seed": session.seed,
                "rounds_played": session.ledger.n_rounds,
                "bankroll": session.ledger.final_bankroll,
                "next_commitment": (
                    session.pending.digest if session.pending else None
                ),
                "cheat": _cheat_status(session),
            }

    @app.get("/sessions/{session_id}/ledger")
    def session_ledger(session_id: str):
        session = get_session(session_id)
        with session.lock:
            rounds = []
            for outcome, bank, commitment in zip(
                session.ledger.rounds,
                session.ledger.bankroll,
                session.revealed,
            ):
                rounds.append(
                    {
                        "index": outcome.round_index,
                        "epsilon": outcome.epsilon_used,
                        "eta": outcome.eta_used,
                        "detector": outcome.detector,
                        "payoff": outcome.payoff,
                        "bankroll": bank,
                        "commitment": commitment.digest,
                        "commitment_nonce": commitment.nonce,
                    }
                )
            return {"session_id": session.session_id, "rounds": rounds}

    @app.post("/sessions/{session_id}/close")
    def close_session(session_id: str):
        session = get_session(session_id)
        with session.lock:
            session.status = "closed"
            return {"session_id": session.session_id, "status": "closed"}

    @app.get("/analysis/distribution")
    def analysis_distribution(epsilon: float, eta: float):
        try:
            d = outcome_distribution(
                PreparationChoice(epsilon), SplittingChoice(eta)
            )
        except ValueError as exc:
            raise HTTPException(400, str(exc))
        return {
            "epsilon": epsilon,
            "eta": eta,
            "p1": d.p1,
            "p2": d.p2,
            "p3": d.p3,
        }

    @app.get("/analysis/gain")
    def analysis_gain(epsilon: float, eta: float, R: float):
        try:
            prep = PreparationChoice(epsilon)
            splitting = SplittingChoice(eta)
            config = GameConfig(R)
        except ValueError as exc:
            raise HTTPException(400, str(exc))
        d = outcome_distribution(prep, splitting)
        return {
            "epsilon": epsilon,
            "eta": eta,
            "R": R,
            "p1": d.p1,
            "p2": d.p2,
            "p3": d.p3,
            "gain": expected_gain(prep, splitting, config),
        }

    @app.get("/analysis/equilibrium")
    def analysis_equilibrium(R: float, tol: float = 1e-4):
        try:
            GameConfig(R)
            result = _cached_equilibrium(R, tol)
        except ValueError as exc:
            raise HTTPException(400, str(exc))
        return {
            "R": R,
            "eta_tilde": result.eta_tilde,
            "guaranteed_gain": result.guaranteed_gain,
            "alice_best_epsilon": result.alice_best_epsilon,
            "tolerance": result.tolerance,
        }

    @app.get("/analysis/sweep")
    def analysis_sweep(kind: str, grid: int = 101, R: float | None = None):
        try:
            return _sweep_payload(kind, grid, R)
        except ValueError as exc:
            raise HTTPException(400, str(exc))

    @app.get("/analysis/circuit")
    def analysis_circuit(epsilon: float, eta: float, error_rate: float = 0.0):
        try:
            settings = angles_for(
                PreparationChoice(epsilon), SplittingChoice(eta)
            )
            d = run_circuit(settings, NoiseModel(error_rate))
        except ValueError as exc:
            raise HTTPException(400, str(exc))
        return {
            "epsilon": epsilon,
            "eta": eta,
            "error_rate": error_rate,
            "theta_a": settings.theta_a,
            "theta_b1": settings.theta_b1,
            "theta_b2": settings.theta_b2,
            "d1": d.d1,
            "d2": d.d2,
            "d3": d.d3,
        }

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount(
            "/ui", StaticFiles(directory=ui_dir, html=True), name="ui"
        )

    return app
