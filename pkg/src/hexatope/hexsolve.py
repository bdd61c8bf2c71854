"""Exact solving of 2-D HEX positions, and a pairing strategy for uneven boards.

The solver is a retrograde minimax over bitboards with a shared
transposition table: a position is winning for the side to move iff some
move leads to a position losing for the opponent.  Crossings are detected
as soon as they appear, so the search rarely reaches full boards; full
boards handed to solve() directly are delegated to the winner detector.

On a board one column wider than tall, the second player (Black, who
bridges the short way between the two long sides) wins outright by a
pairing strategy: answer every White move on its partner tile.  The
partner map used here pairs the staircase dominoes (i,i)-(i,i+1) and
reflects everything else across that staircase, (i,j) <-> (j-1,i).  It is
the unique sound pairing of its shape on small boards; soundness is
re-verified exhaustively in the test suite rather than taken on faith.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .hexboard import BLACK, GREY, WHITE, Coloring2D, HexBoard2D, winner_2d

# 16 tiles = 4x4; larger boards need an explicit cap (and patience)
DEFAULT_CAP = 16

# enumeration of whole position trees stops being printable past 3x3
TREE_SIZE_LIMIT = 3


class IllegalPosition(ValueError):
    pass


class CapExceeded(RuntimeError):
    pass


class Position:
    """A partially colored board plus the side to move.

    Legality ties the mover to the tile counts: White moves on balanced
    boards, Black when White is one tile ahead.  Full boards keep the
    mover implied by the counts even though no move remains.
    """

    __slots__ = ("board", "coloring", "to_move")

    def __init__(self, board: HexBoard2D, coloring: Coloring2D, to_move: str):
        if coloring.board != board:
            raise IllegalPosition("coloring belongs to a different board")
        if to_move not in (WHITE, BLACK):
            raise IllegalPosition(f"unknown side to move {to_move!r}")
        whites = sum(row.count(WHITE) for row in coloring.grid)
        blacks = sum(row.count(BLACK) for row in coloring.grid)
        if to_move == WHITE and whites != blacks:
            raise IllegalPosition(
                f"White to move needs equal counts, got {whites}W/{blacks}B")
        if to_move == BLACK and whites != blacks + 1:
            raise IllegalPosition(
                f"Black to move needs one extra White tile, got {whites}W/{blacks}B")
        self.board = board
        self.coloring = coloring
        self.to_move = to_move

    @classmethod
    def from_coloring(cls, board: HexBoard2D, coloring: Coloring2D) -> "Position":
        """Infer the mover from the counts; raises when neither side fits."""
        whites = sum(row.count(WHITE) for row in coloring.grid)
        blacks = sum(row.count(BLACK) for row in coloring.grid)
        if whites == blacks:
            return cls(board, coloring, WHITE)
        if whites == blacks + 1:
            return cls(board, coloring, BLACK)
        raise IllegalPosition(f"counts {whites}W/{blacks}B fit no mover")

    @classmethod
    def empty(cls, board: HexBoard2D) -> "Position":
        return cls(board, Coloring2D.blank(board), WHITE)

    def after(self, i: int, j: int) -> "Position":
        """The position reached by the mover coloring tile (i, j)."""
        if self.coloring.color(i, j) != GREY:
            raise IllegalPosition(f"tile ({i},{j}) is already colored")
        nxt = WHITE if self.to_move == BLACK else BLACK
        return Position(self.board, self.coloring.with_tile(i, j, self.to_move), nxt)

    def __repr__(self):
        return f"Position({self.board!r}, to_move={self.to_move})"


@dataclass
class SolveResult:
    winner: str
    move: tuple | None
    nodes: int


class _Bitboard:
    """Shift masks and flood-fill crossing tests for one board shape."""

    __slots__ = ("rows", "cols", "full", "not_left", "not_right",
                 "edges", "order")

    def __init__(self, rows: int, cols: int):
        self.rows = rows
        self.cols = cols
        self.full = (1 << (rows * cols)) - 1
        left = sum(1 << (i * cols) for i in range(rows))
        right = left << (cols - 1)
        self.not_left = self.full & ~left
        self.not_right = self.full & ~right
        top = (1 << cols) - 1
        bottom = top << ((rows - 1) * cols)
        # (start edge, goal edge) per color
        self.edges = {WHITE: (left, right), BLACK: (top, bottom)}
        center = ((rows - 1) / 2, (cols - 1) / 2)
        tiles = sorted(
            ((i, j) for i in range(rows) for j in range(cols)),
            key=lambda t: ((t[0] - center[0]) ** 2 + (t[1] - center[1]) ** 2,
                           t[0], t[1]))
        self.order = tuple(1 << (i * cols + j) for i, j in tiles)

    def bit(self, i: int, j: int) -> int:
        return 1 << (i * self.cols + j)

    def tile(self, bit: int) -> tuple:
        idx = bit.bit_length() - 1
        return divmod(idx, self.cols)

    def grow(self, s: int) -> int:
        # the six hex directions as shifts, masked against row wraparound
        c = self.cols
        return (s | (s << c) | (s >> c)
                | ((s & self.not_right) << 1) | ((s & self.not_left) >> 1)
                | ((s & self.not_left) << (c - 1))
                | ((s & self.not_right) >> (c - 1))) & self.full

    def crosses(self, stones: int, color: str) -> bool:
        start, goal = self.edges[color]
        flood = stones & start
        while flood:
            if flood & goal:
                return True
            grown = self.grow(flood) & stones
            if grown == flood:
                return False
            flood = grown
        return False


_BITBOARDS: dict[tuple, _Bitboard] = {}


def _bitboard(board: HexBoard2D) -> _Bitboard:
    key = (board.rows, board.cols)
    if key not in _BITBOARDS:
        _BITBOARDS[key] = _Bitboard(*key)
    return _BITBOARDS[key]


def _masks(coloring: Coloring2D) -> tuple[int, int]:
    white = black = 0
    cols = coloring.board.cols
    for i, row in enumerate(coloring.grid):
        for j, ch in enumerate(row):
            if ch == WHITE:
                white |= 1 << (i * cols + j)
            elif ch == BLACK:
                black |= 1 << (i * cols + j)
    return white, black


class _Search:
    """Negamax with a transposition table shared across root positions.

    wins() assumes the side to move has no crossing yet; the player who
    just moved is checked on entry, so wins caused by the last move are
    seen before any expansion.  Callers must screen the mover's own
    crossing at the root (it can only exist in doctored positions).
    """

    __slots__ = ("bb", "memo", "nodes", "budget", "order")

    def __init__(self, bb: _Bitboard, budget: int | None = None,
                 order: Sequence[int] | None = None):
        self.bb = bb
        self.memo: dict[int, bool] = {}
        self.nodes = 0
        self.budget = budget
        self.order = tuple(order) if order is not None else bb.order

    def wins(self, white: int, black: int, white_to_move: bool) -> bool:
        key = (white << (self.bb.rows * self.bb.cols + 1)) | (black << 1) | white_to_move
        memo = self.memo
        hit = memo.get(key)
        if hit is not None:
            return hit
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise CapExceeded(f"node budget {self.budget} exhausted")
        # the player who just moved may have completed a crossing
        just_moved = black if white_to_move else white
        if self.bb.crosses(just_moved, BLACK if white_to_move else WHITE):
            memo[key] = False
            return False
        free = self.bb.full & ~(white | black)
        if free == 0:
            raise AssertionError("full board without a crossing")
        value = False
        for bit in self.order:
            if free & bit:
                if white_to_move:
                    child = self.wins(white | bit, black, False)
                else:
                    child = self.wins(white, black | bit, True)
                if not child:
                    value = True
                    break
        memo[key] = value
        return value

    def value(self, white: int, black: int, white_to_move: bool) -> str:
        """Winner of an arbitrary position, crossings allowed on entry."""
        mover = WHITE if white_to_move else BLACK
        other = BLACK if white_to_move else WHITE
        if self.bb.crosses(white if white_to_move else black, mover):
            return mover
        if self.bb.crosses(black if white_to_move else white, other):
            return other
        return mover if self.wins(white, black, white_to_move) else other


def solve(p: Position, *, cap: int = DEFAULT_CAP,
          node_budget: int | None = None,
          order: Sequence[tuple] | None = None) -> SolveResult:
    """Winner under optimal play, a winning move when the mover has one.

    The cap refuses boards with more tiles than requested (default 4x4);
    raise it explicitly for 5x5, ideally together with a node budget.
    A custom move order must be a permutation of the board's tiles; the
    winner never depends on it.
    """
    board = p.board
    ntiles = board.rows * board.cols
    if ntiles > cap:
        raise CapExceeded(f"board has {ntiles} tiles, cap is {cap}")
    if p.coloring.is_full():
        return SolveResult(winner_2d(board, p.coloring).winner, None, 0)
    bb = _bitboard(board)
    bit_order = None
    if order is not None:
        tiles = [(i, j) for i in range(board.rows) for j in range(board.cols)]
        if sorted(order) != tiles:
            raise ValueError("order must be a permutation of the board tiles")
        bit_order = [1 << (i * board.cols + j) for i, j in order]
    search = _Search(bb, budget=node_budget, order=bit_order)
    white, black = _masks(p.coloring)
    white_to_move = p.to_move == WHITE
    mover_stones = white if white_to_move else black
    other_stones = black if white_to_move else white
    other = BLACK if white_to_move else WHITE
    if bb.crosses(mover_stones, p.to_move):
        return SolveResult(p.to_move, None, search.nodes)
    if bb.crosses(other_stones, other):
        return SolveResult(other, None, search.nodes)
    if not search.wins(white, black, white_to_move):
        return SolveResult(other, None, search.nodes)
    free = bb.full & ~(white | black)
    for bit in search.order:
        if free & bit:
            if white_to_move:
                child = search.wins(white | bit, black, False)
            else:
                child = search.wins(white, black | bit, True)
            if not child:
                return SolveResult(p.to_move, bb.tile(bit), search.nodes)
    raise AssertionError("winning position with no winning move")


def tree_size(n: int) -> int:
    """Number of distinct legal positions of the n x n game, empty board down
    to the full colorings, counting each position once.

    Play runs until the board is full, so every count-legal position is
    reachable.  Enumeration is exact DFS; boards beyond 3x3 are refused
    because the count grows with the central binomials.
    """
    if n < 1:
        raise ValueError("board must be at least 1x1")
    if n > TREE_SIZE_LIMIT:
        raise ValueError(f"tree enumeration is capped at {TREE_SIZE_LIMIT}x{TREE_SIZE_LIMIT}")
    ntiles = n * n
    full = (1 << ntiles) - 1
    seen = {(0, 0)}
    stack = [(0, 0)]
    while stack:
        white, black = stack.pop()
        free = full & ~(white | black)
        white_to_move = white.bit_count() == black.bit_count()
        b = 1
        while b <= free:
            if free & b:
                child = (white | b, black) if white_to_move else (white, black | b)
                if child not in seen:
                    seen.add(child)
                    stack.append(child)
            b <<= 1
    return len(seen)


def pairing_partner(i: int, j: int) -> tuple:
    """Partner tile under the staircase pairing.

    Dominoes (i,i)-(i,i+1) cover the diagonal strip; tiles above it are
    reflected to tiles below by (i,j) <-> (j-1,i).  The map is an
    involution without fixed points and lands on the board whenever the
    board has one more column than rows.
    """
    if i < 0 or j < 0:
        raise ValueError("tile coordinates must be nonnegative")
    if j == i:
        return (i, j + 1)
    if j == i + 1:
        return (i, j - 1)
    if j >= i + 2:
        return (j - 1, i)
    return (j, i + 1)


def pairing_move(board: HexBoard2D, p: Position, last: tuple | None) -> tuple:
    """Black's reply under the pairing strategy: the partner of White's
    last move, or the first free tile when the partner is already colored
    (possible only when the strategy joins a game it did not start).
    """
    if board.cols != board.rows + 1:
        raise ValueError("pairing strategy wants one more column than rows")
    if p.board != board:
        raise ValueError("position belongs to a different board")
    if p.to_move != BLACK:
        raise IllegalPosition("pairing strategy plays Black, and Black is not to move")
    if last is None:
        raise ValueError("no last White move: Black never opens")
    if not board.in_range(*last):
        raise ValueError(f"tile {last} outside the board")
    if p.coloring.color(*last) != WHITE:
        raise ValueError(f"last move {last} is not a White tile")
    partner = pairing_partner(*last)
    assert board.in_range(*partner)
    if p.coloring.color(*partner) == GREY:
        return partner
    for t in board.tiles():
        if p.coloring.color(*t) == GREY:
            return t
    raise IllegalPosition("no free tile left for Black")


@dataclass
class StealReport:
    """Evidence behind the strategy-stealing argument at one board size."""

    n: int
    empty_winner: str
    exhaustive: bool
    positions_checked: int
    recolorings_checked: int
    violations: int

    @property
    def holds(self) -> bool:
        return self.empty_winner == WHITE and self.violations == 0


def _legal_mask_pairs(ntiles: int):
    # every disjoint (white, black) pair with counts fitting some mover
    for white in range(1 << ntiles):
        w = white.bit_count()
        rest = ((1 << ntiles) - 1) & ~white
        black = rest
        while True:
            b = black.bit_count()
            if b == w or b == w - 1:
                yield white, black, b == w
            if black == 0:
                break
            black = (black - 1) & rest

def strategy_stealing_report(n: int, *, sample: int = 100,
                             seed: int = 0) -> StealReport:
    """Check the two pillars of the stealing argument on the n x n board:
    the empty board is White-winning, and granting White one extra tile
    never flips a White win to Black.  Exhaustive through 3x3; the 4x4
    board gets the empty-board solve plus sampled playout positions.
    """
    if not 1 <= n <= 4:
        raise ValueError("stealing evidence covers 1 <= n <= 4")
    board = HexBoard2D(n, n)
    bb = _bitboard(board)
    search = _Search(bb)
    empty_winner = search.value(0, 0, True)
    ntiles = n * n
    positions = 0
    recolorings = 0
    violations = 0

    def check(white: int, black: int, white_to_move: bool) -> int:
        nonlocal recolorings, violations
        before = search.value(white, black, white_to_move)
        free = bb.full & ~(white | black)
        bad = 0
        bit = 1
        while bit <= free:
            if free & bit:
                recolorings += 1
                after = search.value(white | bit, black, white_to_move)
                if before == WHITE and after == BLACK:
                    bad += 1
            bit <<= 1
        return bad

    if n <= 3:
        for white, black, white_to_move in _legal_mask_pairs(ntiles):
            positions += 1
            violations += check(white, black, white_to_move)
        exhaustive = True
    else:
        rng = random.Random(seed)
        tiles = list(bb.order)
        for _ in range(sample):
            rng.shuffle(tiles)
            depth = rng.randrange(ntiles + 1)
            white = black = 0
            for k in range(depth):
                if k % 2 == 0:
                    white |= tiles[k]
                else:
                    black |= tiles[k]
            positions += 1
            violations += check(white, black, depth % 2 == 0)
        exhaustive = False
    return StealReport(n, empty_winner, exhaustive, positions,
                       recolorings, violations)
