"""Local play service: sessions of human-versus-engine games over HTTP.

The engine replies synchronously inside the move submission: solver latency
at supported sizes is milliseconds, and a two-phase protocol would only
complicate clients.  Sessions live in memory and expire after an idle
timeout; there is no persistence and no authentication.  Wire shapes are
documented in API.md at the repository root.
"""

from __future__ import annotations

import threading
import time
import uuid
from typing import Any, Literal

from fastapi import Body, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import classic, core, formats, reduction
from .errors import CLAUSE_NOT_IN_O, GameError, IllegalMove

DEFAULT_TTL_SECONDS = 3600.0

Mover = Literal["human", "engine"]


class UnknownSession(Exception):
    pass


class OutOfTurn(Exception):
    pass


class _PileEngine:
    def __init__(self, variant: classic.Variant, piles: list[int]):
        if not piles:
            raise GameError("at least one pile is required")
        self.variant = variant
        try:
            self.sizes = classic._check_sizes(piles)
        except ValueError as e:
            raise GameError(str(e)) from None
        self.solver = classic.PileSolver(variant)

    def truth(self) -> int:
        return self.solver.truth(self.sizes)

    def legal_moves(self) -> list[dict]:
        return [
            {"pile": m.pile + 1, "take": m.take}
            for m in classic.pile_moves(self.variant, self.sizes)
        ]

    def apply_wire(self, move: dict) -> dict:
        pile, take = move.get("pile"), move.get("take")
        if not isinstance(pile, int) or not isinstance(take, int):
            raise IllegalMove(CLAUSE_NOT_IN_O, "pile moves need integer pile and take")
        self.sizes = classic.pile_apply(self.variant, self.sizes, classic.PileMove(pile - 1, take))
        return {"pile": pile, "take": take}

    def engine_move(self) -> dict:
        move = self.solver.best_move(self.sizes)
        if move is None:
            move = classic.pile_moves(self.variant, self.sizes)[0]
        self.sizes = classic.pile_apply(self.variant, self.sizes, move)
        return {"pile": move.pile + 1, "take": move.take}

    def state(self) -> dict:
        return {"piles": list(self.sizes)}


class _GadgetEngine:
    def __init__(self, weights: list[int], target: int):
        instance = reduction.SubsetSumInstance.of(weights, target)
        self.g = reduction.build_gadget(instance)
        self.solver = reduction.GadgetSolver(self.g)
        self.current = self.g.start()

    def truth(self) -> int:
        return self.solver.truth(self.current)

    def legal_moves(self) -> list[dict]:
        return [self._wire(m) for m in reduction.gadget_moves(self.g, self.current)]

    @staticmethod
    def _wire(m: reduction.GadgetMove) -> dict:
        if m.family == "O2":
            return {"family": "O2"}
        return {"family": "O1", "pile": m.pile, "l_take": m.l_take}

    def apply_wire(self, move: dict) -> dict:
        family = move.get("family")
        if family == "O2":
            parsed = reduction.GadgetMove("O2")
        elif family == "O1":
            pile, l_take = move.get("pile"), move.get("l_take")
            if not isinstance(pile, int) or not isinstance(l_take, int):
                raise IllegalMove(CLAUSE_NOT_IN_O, "O1 moves need integer pile and l_take")
            parsed = reduction.GadgetMove("O1", pile, l_take)
        else:
            raise IllegalMove(CLAUSE_NOT_IN_O, "gadget moves need family O1 or O2")
        self.current = reduction.gadget_apply(self.g, self.current, parsed)
        return self._wire(parsed)

    def engine_move(self) -> dict:
        move = self.solver.best_move(self.current)
        if move is None:
            move = reduction.gadget_moves(self.g, self.current)[0]
        self.current = reduction._apply_unchecked(self.g, self.current, move)
        return self._wire(move)

    def state(self) -> dict:
        return {
            "v": self.current.v,
            "w": self.current.w,
            "l": self.current.l,
            "piles_present": reduction._piles_in(self.current.mask),
            "weights": list(self.g.weights),
            "target": self.g.target,
        }


class _ExplicitEngine:
    def __init__(self, doc: dict):
        self.game = formats.game_from_document(doc)
        self.solver = core.Solver(self.game)
        self.position = self.game.start

    def truth(self) -> int:
        return self.solver.truth(self.position)

    def legal_moves(self) -> list[dict]:
        return [
            {"elements": list(m.labels)}
            for m in core.admissible_moves(self.game, self.position)
        ]

    def apply_wire(self, move: dict) -> dict:
        elements = move.get("elements")
        if not isinstance(elements, list) or not all(isinstance(x, str) for x in elements):
            raise IllegalMove(CLAUSE_NOT_IN_O, "explicit moves need an elements list")
        try:
            mask = self.game.ground.mask_of(elements)
        except ValueError as e:
            raise IllegalMove(CLAUSE_NOT_IN_O, str(e)) from None
        if mask not in core._admissible_masks(self.game, self.position.mask):
            raise IllegalMove(
                core._illegal_clause(self.game, self.position.mask, mask),
                f"move {elements} is not admissible",
            )
        self.position = core.PositionSet(self.game.ground, self.position.mask & ~mask)
        return {"elements": list(self.game.ground.labels_of(mask))}

    def engine_move(self) -> dict:
        move = self.solver.best_move(self.position)
        if move is None:
            legal = core._admissible_masks(self.game, self.position.mask)
            move = core.MoveSet(self.game.ground, legal[0])
        self.position = self.position.difference(move)
        return {"elements": list(move.labels)}

    def state(self) -> dict:
        return {
            "position": list(self.position.labels),
            "elements": list(self.game.ground.labels),
        }


class Session:
    def __init__(self, engine, variant: str, first: Mover):
        self.id = uuid.uuid4().hex
        self.engine = engine
        self.variant = variant
        self.first_mover: Mover = first
        self.truth_start = engine.truth()
        self.to_move: Mover = first
        self.history: list[dict] = []
        self.last_access = time.monotonic()
        self.lock = threading.Lock()

    @property
    def status(self) -> str:
        if self.engine.legal_moves():
            return "in_progress"
        return "human_lost" if self.to_move == "human" else "human_won"

    def view(self) -> dict:
        return {
            "id": self.id,
            "variant": self.variant,
            "status": self.status,
            "to_move": self.to_move,
            "first_mover": self.first_mover,
            "truth_start": self.truth_start,
            "state": self.engine.state(),
            "legal_moves": self.engine.legal_moves(),
            "history": list(self.history),
        }

    def play_engine_turn(self) -> dict | None:
        """Engine moves if the game is still open; returns its wire move."""
        if self.status != "in_progress":
            return None
        move = self.engine.engine_move()
        self.history.append({"by": "engine", "move": move})
        self.to_move = "human"
        return move


class SessionStore:
    """In-memory sessions with idle expiry; one lock per session."""

    def __init__(self, ttl_seconds: float = DEFAULT_TTL_SECONDS):
        self.ttl = ttl_seconds
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def _purge(self) -> None:
        now = time.monotonic()
        with self._lock:
            stale = [sid for sid, s in self._sessions.items() if now - s.last_access > self.ttl]
            for sid in stale:
                del self._sessions[sid]

    def _get(self, session_id: str) -> Session:
        self._purge()
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise UnknownSession(session_id)
        session.last_access = time.monotonic()
        return session

    def create(
        self,
        variant: str,
        *,
        piles: list[int] | None = None,
        weights: list[int] | None = None,
        target: int | None = None,
        game: dict | None = None,
        first: Mover = "human",
    ) -> Session:
        if variant in ("nim", "subtraction"):
            if piles is None:
                raise GameError(f"{variant} sessions need piles")
            engine = _PileEngine(variant, piles)
        elif variant == "gadget":
            if weights is None or target is None:
                raise GameError("gadget sessions need weights and a target")
            engine = _GadgetEngine(weights, target)
        elif variant == "explicit":
            if game is None:
                raise GameError("explicit sessions need a game document")
            engine = _ExplicitEngine(game)
        else:
            raise GameError(f"unknown variant {variant!r}")
        session = Session(engine, variant, first)
        if first == "engine":
            session.play_engine_turn()
        with self._lock:
            self._sessions[session.id] = session
        return session

    def view(self, session_id: str) -> dict:
        session = self._get(session_id)
        with session.lock:
            return session.view()

    def submit(self, session_id: str, move: dict) -> dict:
        session = self._get(session_id)
        with session.lock:
            if session.status != "in_progress":
                raise OutOfTurn("session is finished")
            if session.to_move != "human":
                raise OutOfTurn("it is not the human's turn")
            applied = session.engine.apply_wire(move)
            session.history.append({"by": "human", "move": applied})
            session.to_move = "engine"
            reply = session.play_engine_turn()
            view = session.view()
            view["engine_reply"] = reply
            return view

    def delete(self, session_id: str) -> None:
        self._purge()
        with self._lock:
            if session_id not in self._sessions:
                raise UnknownSession(session_id)
            del self._sessions[session_id]


class CreateSessionRequest(BaseModel):
    variant: Literal["nim", "subtraction", "gadget", "explicit"]
    piles: list[int] | None = None
    weights: list[int] | None = None
    target: int | None = None
    game: dict | None = None
    first: Mover = "human"


def create_app(store: SessionStore | None = None) -> FastAPI:
    store = store if store is not None else SessionStore()
    app = FastAPI(title="occupation play service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.store = store

    @app.exception_handler(RequestValidationError)
    async def malformed(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": "malformed request"})

    @app.exception_handler(UnknownSession)
    async def unknown(request: Request, exc: UnknownSession):
        return JSONResponse(status_code=404, content={"detail": "unknown session"})

    @app.exception_handler(OutOfTurn)
    async def out_of_turn(request: Request, exc: OutOfTurn):
        return JSONResponse(status_code=409, content={"detail": str(exc)})

    @app.exception_handler(IllegalMove)
    async def inadmissible(request: Request, exc: IllegalMove):
        return JSONResponse(
            status_code=422,
            content={"detail": {"error": "inadmissible move", "clause": exc.clause,
                                "message": str(exc)}},
        )

    @app.exception_handler(GameError)
    async def bad_parameters(request: Request, exc: GameError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.post("/sessions", status_code=201)
    def create_session(request: CreateSessionRequest) -> dict:
        session = store.create(
            request.variant,
            piles=request.piles,
            weights=request.weights,
            target=request.target,
            game=request.game,
            first=request.first,
        )
        return store.view(session.id)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str) -> dict:
        return store.view(session_id)

    @app.post("/sessions/{session_id}/moves")
    def submit_move(session_id: str, move: dict[str, Any] = Body(...)) -> dict:
        return store.submit(session_id, move)

    @app.delete("/sessions/{session_id}")
    def delete_session(session_id: str) -> dict:
        store.delete(session_id)
        return {"deleted": session_id}

    return app


app = create_app()
