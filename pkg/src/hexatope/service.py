"""Game sessions over HTTP: create, move, inspect, analyze.

One session is one human against one engine.  Sessions persist as JSON
lines, one file per session, append only: the first line records the
setup, each further line one move.  Replaying the file rebuilds the
position exactly, which is also how sessions are loaded after a restart.

Engine replies are computed synchronously inside the move request.  A per
session lock serializes moves while distinct sessions run concurrently;
nothing mutable is shared between sessions.

The storage root comes from the HEXATOPE_DATA_DIR environment variable,
falling back to a directory under the system temp path.
"""
from __future__ import annotations

import json
import os
import random
import tempfile
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from .hexboard import BLACK, GREY, WHITE, Coloring2D, HexBoard2D, winner_2d
from .hexsolve import CapExceeded, Position, pairing_move, solve

EXACT = "exact"
PAIRING = "pairing"
RANDOM = "random"
ENGINES = (EXACT, PAIRING, RANDOM)

PLAY_CAP = 64
EXACT_CAP = 16

_COLOR_NAMES = {"white": WHITE, "black": BLACK, "w": WHITE, "b": BLACK}
_ENGINE_ALIASES = {"exact-solver": EXACT}


class ServiceError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def _bad(message: str) -> ServiceError:
    return ServiceError(400, "bad-request", message)


def _missing(game_id: str) -> ServiceError:
    return ServiceError(404, "not-found", f"no session {game_id}")


def _conflict(code: str, message: str) -> ServiceError:
    return ServiceError(409, code, message)


def _crosses(coloring: Coloring2D, color: str) -> bool:
    """Does this color already join its two sides of the board?

    White joins the columns j=0 and j=cols-1, Black the rows i=0 and
    i=rows-1, matching the full board winner rules.
    """
    board = coloring.board
    if color == WHITE:
        starts = [(i, 0) for i in range(board.rows)]
        done = lambda i, j: j == board.cols - 1
    else:
        starts = [(0, j) for j in range(board.cols)]
        done = lambda i, j: i == board.rows - 1
    frontier = [t for t in starts if coloring.color(*t) == color]
    seen = set(frontier)
    while frontier:
        i, j = frontier.pop()
        if done(i, j):
            return True
        for t in board.neighbors(i, j):
            if t not in seen and coloring.color(*t) == color:
                seen.add(t)
                frontier.append(t)
    return False


def _certified_win(coloring: Coloring2D, mover: str):
    """Winner and path after the mover crossed, possibly mid game.

    The certificate machinery wants a full board, so the remaining grey
    tiles are given to the opponent: that cannot disturb an existing
    crossing, and the returned path then lies in the mover's real stones.
    """
    board = coloring.board
    other = BLACK if mover == WHITE else WHITE
    grid = [[coloring.color(i, j) if coloring.color(i, j) != GREY else other
             for j in range(board.cols)] for i in range(board.rows)]
    win = winner_2d(board, Coloring2D(board, grid))
    assert win.winner == mover
    return win


@dataclass
class GameSession:
    id: str
    board: HexBoard2D
    engine: str
    human: str
    seed: int
    created: float
    position: Position = None
    history: list[tuple[str, int, int]] = field(default_factory=list)
    winner: str | None = None
    path: list[tuple[int, int]] | None = None
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self):
        if self.position is None:
            self.position = Position.empty(self.board)

    @property
    def engine_color(self) -> str:
        return BLACK if self.human == WHITE else WHITE

    @property
    def finished(self) -> bool:
        return self.winner is not None

    def last_move_by(self, color: str) -> tuple[int, int] | None:
        for mover, i, j in reversed(self.history):
            if mover == color:
                return (i, j)
        return None

    def encode_grid(self) -> list[str]:
        c = self.position.coloring
        return ["".join(c.color(i, j) for j in range(self.board.cols))
                for i in range(self.board.rows)]

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "rows": self.board.rows,
            "cols": self.board.cols,
            "engine": self.engine,
            "humanColor": self.human,
            "toMove": self.position.to_move,
            "status": "finished" if self.finished else "ongoing",
            "winner": self.winner,
            "winningPath": [list(t) for t in self.path] if self.path else None,
            "grid": self.encode_grid(),
            "history": [{"mover": m, "row": i, "col": j}
                        for m, i, j in self.history],
            "created": self.created,
        }


class SessionStore:
    """Append-only JSON lines, one file per session."""

    def __init__(self, root: str | Path | None = None):
        if root is None:
            root = os.environ.get("HEXATOPE_DATA_DIR") or (
                Path(tempfile.gettempdir()) / "hexatope-sessions")
        self.root = Path(root)

    def _path(self, game_id: str) -> Path:
        return self.root / f"{game_id}.jsonl"

    def append_setup(self, session: GameSession) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        record = {"id": session.id, "rows": session.board.rows,
                  "cols": session.board.cols, "engine": session.engine,
                  "human": session.human, "seed": session.seed,
                  "created": session.created}
        with open(self._path(session.id), "a") as fh:
            fh.write(json.dumps(record) + "\n")

    def append_move(self, session: GameSession, mover: str, i: int, j: int) -> None:
        with open(self._path(session.id), "a") as fh:
            fh.write(json.dumps({"mover": mover, "row": i, "col": j}) + "\n")

    def load(self, game_id: str) -> GameSession | None:
        path = self._path(game_id)
        if not path.exists():
            return None
        lines = [json.loads(ln) for ln in path.read_text().splitlines() if ln]
        setup, moves = lines[0], lines[1:]
        session = GameSession(
            id=setup["id"], board=HexBoard2D(setup["rows"], setup["cols"]),
            engine=setup["engine"], human=setup["human"],
            seed=setup["seed"], created=setup["created"])
        for mv in moves:
            _apply(session, mv["mover"], mv["row"], mv["col"])
        return session


def _apply(session: GameSession, mover: str, i: int, j: int) -> None:
    """Replay one move onto the session, updating winner and path."""
    assert session.position.to_move == mover
    session.position = session.position.after(i, j)
    session.history.append((mover, i, j))
    if _crosses(session.position.coloring, mover):
        win = _certified_win(session.position.coloring, mover)
        session.winner = win.winner
        session.path = [tuple(t) for t in win.path]


def _engine_move(session: GameSession) -> tuple[int, int]:
    pos = session.position
    if session.engine == EXACT:
        result = solve(pos)
        if result.move is not None:
            return result.move
        # lost position: no winning move exists, any legal tile does
        return pos.coloring.grey_tiles()[0]
    if session.engine == PAIRING:
        return pairing_move(session.board, pos, session.last_move_by(session.human))
    rng = random.Random(f"{session.seed}:{len(session.history)}")
    return rng.choice(pos.coloring.grey_tiles())


def create_game(rows: int, cols: int, engine: str, human: str, *,
                store: SessionStore, seed: int | None = None) -> GameSession:
    if not (isinstance(rows, int) and isinstance(cols, int)):
        raise _bad("rows and cols must be integers")
    if rows < 1 or cols < 1:
        raise _bad("rows and cols must be positive")
    if rows * cols > PLAY_CAP:
        raise _bad(f"{rows}x{cols} exceeds the {PLAY_CAP} tile play cap")
    engine = _ENGINE_ALIASES.get(engine, engine)
    if engine not in ENGINES:
        raise _bad(f"engine must be one of {', '.join(ENGINES)}")
    if engine == EXACT and rows * cols > EXACT_CAP:
        raise _bad(f"the exact engine is capped at {EXACT_CAP} tiles")
    human_color = _COLOR_NAMES.get(str(human).lower())
    if human_color is None:
        raise _bad("humanColor must be White or Black")
    if engine == PAIRING:
        if human_color != WHITE:
            raise _bad("the pairing engine plays Black, so the human "
                       "must take White")
        if cols != rows + 1:
            raise _bad("the pairing engine wants one more column than rows")
    session = GameSession(
        id=uuid.uuid4().hex[:12], board=HexBoard2D(rows, cols),
        engine=engine, human=human_color,
        seed=seed if seed is not None else random.randrange(1 << 30),
        created=time.time())
    store.append_setup(session)
    if session.engine_color == WHITE:
        move = _engine_move(session)
        _apply(session, WHITE, *move)
        store.append_move(session, WHITE, *move)
    return session


def play_move(session: GameSession, i: int, j: int, *,
              store: SessionStore) -> GameSession:
    if session.finished:
        raise _conflict("game-over", f"the game is over, {session.winner} won")
    if not session.board.in_range(i, j):
        raise _bad(f"tile ({i},{j}) is outside the {session.board.rows}x"
                   f"{session.board.cols} board")
    if session.position.to_move != session.human:
        raise _conflict("not-your-turn", "the engine is to move")
    if session.position.coloring.color(i, j) != GREY:
        raise _conflict("tile-taken", f"tile ({i},{j}) is already colored")
    _apply(session, session.human, i, j)
    store.append_move(session, session.human, i, j)
    if not session.finished:
        move = _engine_move(session)
        _apply(session, session.engine_color, *move)
        store.append_move(session, session.engine_color, *move)
    return session


def analyze(session: GameSession) -> dict:
    if session.engine != EXACT:
        raise _conflict("analysis-unavailable",
                        f"analysis needs the exact engine, this session "
                        f"uses {session.engine}")
    tiles = session.board.rows * session.board.cols
    if tiles > EXACT_CAP:
        raise _conflict("analysis-unavailable",
                        f"{tiles} tiles exceed the {EXACT_CAP} tile cap")
    try:
        result = solve(session.position)
    except CapExceeded as exc:  # pragma: no cover - guarded above
        raise _conflict("analysis-unavailable", str(exc))
    return {
        "winnerWithOptimalPlay": result.winner,
        "bestMove": list(result.move) if result.move is not None else None,
        "nodes": result.nodes,
    }


class _Registry:
    """Sessions live in memory; misses fall back to the store."""

    def __init__(self, store: SessionStore):
        self.store = store
        self._sessions: dict[str, GameSession] = {}
        self._guard = threading.Lock()

    def add(self, session: GameSession) -> None:
        with self._guard:
            self._sessions[session.id] = session

    def get(self, game_id: str) -> GameSession:
        with self._guard:
            session = self._sessions.get(game_id)
            if session is None:
                session = self.store.load(game_id)
                if session is None:
                    raise _missing(game_id)
                self._sessions[game_id] = session
            return session


def create_app(data_dir: str | Path | None = None) -> FastAPI:
    store = SessionStore(data_dir)
    registry = _Registry(store)
    app = FastAPI(title="hexatope", docs_url=None, redoc_url=None)

    @app.exception_handler(ServiceError)
    async def service_error(request: Request, exc: ServiceError):
        return JSONResponse(status_code=exc.status,
                            content={"code": exc.code, "message": exc.message})

    @app.exception_handler(RequestValidationError)
    async def validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400,
                            content={"code": "bad-request", "message": str(exc)})

    @app.post("/games", status_code=201)
    def post_game(body: dict):
        rows = body.get("rows")
        cols = body.get("cols")
        engine = body.get("engine", EXACT)
        human = body.get("humanColor", "White")
        seed = body.get("seed")
        if seed is not None and not isinstance(seed, int):
            raise _bad("seed must be an integer")
        session = create_game(rows, cols, engine, human,
                              store=store, seed=seed)
        registry.add(session)
        return session.to_json()

    @app.post("/games/{game_id}/moves")
    def post_move(game_id: str, body: dict):
        session = registry.get(game_id)
        row, col = body.get("row"), body.get("col")
        if not (isinstance(row, int) and isinstance(col, int)):
            raise _bad("row and col must be integers")
        with session.lock:
            play_move(session, row, col, store=store)
            return session.to_json()

    @app.get("/games/{game_id}")
    def get_game(game_id: str):
        session = registry.get(game_id)
        with session.lock:
            return session.to_json()

    @app.get("/games/{game_id}/analysis")
    def get_analysis(game_id: str):
        session = registry.get(game_id)
        with session.lock:
            return analyze(session)

    return app


app = create_app()
