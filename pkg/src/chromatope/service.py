"""HTTP+JSON game service for the connection game.

Sessions are in-memory; every mutation is serialized per session and bumps a
version counter, so clients poll with versioned GETs and submit moves with
an expected_version that is rejected on conflict (409).  Bot players move
automatically after each accepted human move (and on creation while it is a
bot's turn), all within the same lock.
"""

from __future__ import annotations

import random
import threading
import uuid
from typing import Optional

import numpy as np
from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from .builders import build
from .coloring import Coloring, find_coloring
from .hexgame import (
    Board,
    GameError,
    GameState,
    Move,
    apply_move,
    bot_move,
    build_board,
    legal_moves,
    new_game,
    random_sites,
    winner,
)

# fixed isometric-style projection for 3D wireframes
_PROJ = np.array([[0.866, -0.866, 0.0], [0.5, 0.5, -1.0]])


class BoardSpec(BaseModel):
    builder: str = "polygon:6"
    colors: Optional[list[int]] = None
    base_vertex: int = 0


class CreateGame(BaseModel):
    board: BoardSpec = Field(default_factory=BoardSpec)
    sites: str | list[list[float]] = "random:20:0"
    players: list[str] = Field(default_factory=lambda: ["human", "bot:uniform-random"])


class MoveRequest(BaseModel):
    player: int
    cell: int
    expected_version: int


class Session:
    def __init__(self, board: Board, players: list[str], seed: int):
        self.board = board
        self.players = players
        self.state: GameState = new_game(board)
        self.lock = threading.Lock()
        self.rng = random.Random(f"service:{seed}")

    def player_kind(self, player: int) -> str:
        return self.players[player - 1]

    def advance_bots(self):
        while self.state.status == "ongoing" and legal_moves(self.state):
            kind = self.player_kind(self.state.turn)
            if not kind.startswith("bot"):
                break
            policy = kind.partition(":")[2] or "uniform-random"
            self.state = apply_move(self.state, bot_move(self.state, policy, self.rng))


def _cell_payload(board: Board, state: GameState, index: int) -> dict:
    cell = board.cells[index]
    out = {
        "id": index,
        "owner": state.ownership[index] or None,
        "facet_contacts": sorted(cell.facet_contacts),
        "site": [float(x) for x in cell.site],
    }
    if board.polytope.dim == 2:
        out["polygon"] = [[float(x) for x in p] for p in cell.boundary.points]
    else:
        edges = []
        for face in cell.boundary.faces:
            pts = [(_PROJ @ p).tolist() for p in face]
            edges.append(pts)
        out["wireframe"] = edges
        out["site_projected"] = (_PROJ @ cell.site).tolist()
    return out


def _state_payload(session: Session) -> dict:
    board = session.board
    state = session.state
    h = board.coloring
    return {
        "version": state.version,
        "dim": board.polytope.dim,
        "polytope": board.polytope.name,
        "num_players": board.num_players,
        "players": session.players,
        "turn": state.turn if state.status == "ongoing" else None,
        "status": state.status,
        "winner": state.winner,
        "winning_component": list(state.winning_component),
        "winning_pair": list(state.winning_pair) if state.winning_pair else None,
        "facets": [
            {"id": f, "name": board.polytope.facet_names[f], "color": h(f)}
            for f in range(board.polytope.num_facets)
        ],
        "targets": {
            str(p): {"primary": primary, "others": list(others)}
            for p, (primary, others) in board.targets.items()
        },
        "cells": [
            _cell_payload(board, state, i) for i in range(board.num_cells)
        ],
    }


def create_app() -> FastAPI:
    app = FastAPI(title="chromatope game service")
    # the browser client may be served from any origin (file://, a static
    # dev server); the service is a local game backend, so allow them all
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, Session] = {}

    def get_session(game_id: str) -> Session:
        session = sessions.get(game_id)
        if session is None:
            raise HTTPException(status_code=404, detail={"code": "unknown_session",
                                                         "message": f"no game {game_id}"})
        return session

    @app.post("/games")
    def create_game(req: CreateGame):
        P = build(req.board.builder)
        if req.board.colors is not None:
            h = Coloring(tuple(req.board.colors), max(req.board.colors))
        else:
            h = find_coloring(P, P.dim)
            if h is None:
                raise HTTPException(status_code=422, detail={
                    "code": "not_colorable",
                    "message": f"{P.name} admits no {P.dim}-coloring"})
        seed = 0
        if isinstance(req.sites, str):
            parts = req.sites.split(":")
            if parts[0] != "random" or len(parts) != 3:
                raise HTTPException(status_code=422, detail={
                    "code": "bad_sites", "message": "sites must be random:<k>:<seed> or a list"})
            count, seed = int(parts[1]), int(parts[2])
            sites = random_sites(P, count, seed)
        else:
            sites = np.asarray(req.sites, dtype=float)
        if len(req.players) != P.dim:
            raise HTTPException(status_code=422, detail={
                "code": "bad_players",
                "message": f"{P.name} needs exactly {P.dim} players"})
        try:
            board = build_board(P, h, req.board.base_vertex, sites)
        except Exception as exc:
            raise HTTPException(status_code=422, detail={
                "code": "bad_board", "message": str(exc)})
        game_id = uuid.uuid4().hex[:12]
        session = Session(board, req.players, seed)
        with session.lock:
            session.advance_bots()
        sessions[game_id] = session
        return {"game_id": game_id}

    @app.get("/games/{game_id}")
    def get_state(game_id: str):
        session = get_session(game_id)
        with session.lock:
            return _state_payload(session)

    @app.post("/games/{game_id}/moves")
    def post_move(game_id: str, req: MoveRequest):
        session = get_session(game_id)
        with session.lock:
            if req.expected_version != session.state.version:
                raise HTTPException(status_code=409, detail={
                    "code": "version_conflict",
                    "message": f"expected {req.expected_version}, "
                               f"server at {session.state.version}"})
            try:
                session.state = apply_move(session.state, Move(req.player, req.cell))
            except GameError as exc:
                raise HTTPException(status_code=422, detail={
                    "code": "illegal_move", "message": str(exc)})
            session.advance_bots()
            return _state_payload(session)

    @app.get("/games/{game_id}/winner")
    def get_winner(game_id: str):
        session = get_session(game_id)
        with session.lock:
            result = winner(session.state)
            if result is None:
                return {"player": None}
            player, component = result
            return {
                "player": player,
                "component": list(component),
                "facet_pair": list(session.state.winning_pair),
            }

    return app


def serve(port: int = 8000, host: str = "127.0.0.1"):
    import uvicorn

    uvicorn.run(create_app(), host=host, port=port, log_level="warning")
