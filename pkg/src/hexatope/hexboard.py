"""HEX boards in two and d dimensions, and constructive winner detection.

The 2-D board is the classical rhombus of hexagonal tiles.  The
d-dimensional board is the grid graph on {-1..n+1}^d whose edges join
vertices differing by a 0/1 vector, with forced colors on the boundary.
Winner detection walks a chain of completely colored simplices of the
staircase triangulation; in 2-D the result is cross-checked against a
plain connectivity search on the tile graph.

Colors: 2-D tiles are 'W', 'B' or '.' (grey); d-dimensional colors are the
integers 1..d, with 1 = white and 2 = black under the dual correspondence.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

WHITE = "W"
BLACK = "B"
GREY = "."

# six tile neighbors: the rhombus is sheared so that (i+1,j-1) and
# (i-1,j+1) touch, while (i+1,j+1) and (i-1,j-1) do not
STENCIL_2D = ((1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1))


class HexBoard2D:
    __slots__ = ("rows", "cols", "_nbrs")

    def __init__(self, rows: int, cols: int):
        if rows < 1 or cols < 1:
            raise ValueError("board must be at least 1x1")
        self.rows = rows
        self.cols = cols
        self._nbrs: dict[tuple, tuple] | None = None

    def tiles(self):
        return itertools.product(range(self.rows), range(self.cols))

    def in_range(self, i: int, j: int) -> bool:
        return 0 <= i < self.rows and 0 <= j < self.cols

    def neighbors(self, i: int, j: int) -> tuple:
        if self._nbrs is None:
            self._nbrs = {
                (a, b): tuple(
                    (a + di, b + dj) for di, dj in STENCIL_2D
                    if self.in_range(a + di, b + dj))
                for a, b in self.tiles()
            }
        return self._nbrs[(i, j)]

    def __eq__(self, other):
        return (isinstance(other, HexBoard2D)
                and (self.rows, self.cols) == (other.rows, other.cols))

    def __hash__(self):
        return hash((self.rows, self.cols))

    def __repr__(self):
        return f"HexBoard2D({self.rows}x{self.cols})"


class Coloring2D:
    """Total assignment of W/B/. to the tiles of a 2-D board."""

    __slots__ = ("board", "grid")

    def __init__(self, board: HexBoard2D, grid: Sequence[Sequence[str]]):
        rows = tuple("".join(row) for row in grid)
        if len(rows) != board.rows or any(len(r) != board.cols for r in rows):
            raise ValueError("grid shape does not match the board")
        for r in rows:
            for ch in r:
                if ch not in (WHITE, BLACK, GREY):
                    raise ValueError(f"unknown tile color {ch!r}")
        self.board = board
        self.grid = rows

    @staticmethod
    def blank(board: HexBoard2D) -> "Coloring2D":
        return Coloring2D(board, [GREY * board.cols] * board.rows)

    def color(self, i: int, j: int) -> str:
        return self.grid[i][j]

    def with_tile(self, i: int, j: int, color: str) -> "Coloring2D":
        if not self.board.in_range(i, j):
            raise ValueError(f"tile ({i},{j}) outside the board")
        row = self.grid[i]
        grid = list(self.grid)
        grid[i] = row[:j] + color + row[j + 1:]
        return Coloring2D(self.board, grid)

    def is_full(self) -> bool:
        return all(GREY not in row for row in self.grid)

    def grey_tiles(self):
        return [(i, j) for i, j in self.board.tiles() if self.grid[i][j] == GREY]

    def __eq__(self, other):
        return (isinstance(other, Coloring2D) and self.board == other.board
                and self.grid == other.grid)

    def __hash__(self):
        return hash((self.board, self.grid))


def coloring_to_text(col: Coloring2D) -> str:
    lines = [f"hex {col.board.rows} {col.board.cols}"]
    lines.extend(col.grid)
    return "\n".join(lines) + "\n"


def coloring_from_text(text: str) -> Coloring2D:
    lines = [ln.rstrip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("hex "):
        raise ValueError("expected 'hex <rows> <cols>' header")
    parts = lines[0].split()
    if len(parts) != 3:
        raise ValueError("malformed hex header")
    rows, cols = int(parts[1]), int(parts[2])
    board = HexBoard2D(rows, cols)
    if len(lines) - 1 != rows:
        raise ValueError(f"expected {rows} grid lines, found {len(lines) - 1}")
    return Coloring2D(board, lines[1:])


# ---------------------------------------------------------------------------
# d-dimensional boards


class DBoard:
    """Box {-1..n_i+1}^d with forced boundary colors.

    The cube of the definition has all n_i equal; rectangular 2-D boards
    need distinct extents, so the sizes are kept per axis.
    """

    __slots__ = ("sizes", "d")

    def __init__(self, n: int | Sequence[int], d: int | None = None):
        if isinstance(n, int):
            if d is None:
                raise ValueError("cube form needs both n and d")
            if n < 0 or d < 1:
                raise ValueError("need n >= 0 and d >= 1")
            self.sizes = (n,) * d
        else:
            self.sizes = tuple(n)
            if d is not None and d != len(self.sizes):
                raise ValueError("d does not match the sizes tuple")
            if not self.sizes or any(s < 0 for s in self.sizes):
                raise ValueError("sizes must be nonnegative and nonempty")
        self.d = len(self.sizes)

    def contains(self, v: Sequence[int]) -> bool:
        return len(v) == self.d and all(
            -1 <= v[i] <= self.sizes[i] + 1 for i in range(self.d))

    def is_interior(self, v: Sequence[int]) -> bool:
        return all(0 <= v[i] <= self.sizes[i] for i in range(self.d))

    def interior(self):
        return itertools.product(*(range(0, s + 1) for s in self.sizes))

    def kappa(self, v: Sequence[int]) -> int:
        """Forced color of a boundary vertex, 1-based."""
        for i in range(self.d):
            if v[i] == -1:
                return i + 1
        for i in range(self.d):
            if v[i] == self.sizes[i] + 1:
                return i + 1
        raise ValueError(f"{tuple(v)} is an interior vertex")

    def adjacent(self, u: Sequence[int], v: Sequence[int]) -> bool:
        diffs = {u[i] - v[i] for i in range(self.d)}
        return u != v and (diffs <= {0, 1} or diffs <= {0, -1})

    def __eq__(self, other):
        return isinstance(other, DBoard) and self.sizes == other.sizes

    def __hash__(self):
        return hash(self.sizes)

    def __repr__(self):
        return f"DBoard(sizes={self.sizes})"


class UncoloredVertex(ValueError):
    pass


class DColoring:
    """Interior colors on a DBoard; boundary queries fall through to kappa.

    The interior source is a mapping, or a callable for colorings that are
    expensive to enumerate and should be evaluated on demand.
    """

    __slots__ = ("board", "_source", "_cache")

    def __init__(self, board: DBoard,
                 interior: Mapping[tuple, int] | Callable[[tuple], int]):
        self.board = board
        self._source = interior
        self._cache: dict[tuple, int] = {}

    def color(self, v: Sequence[int]) -> int:
        v = tuple(v)
        if not self.board.contains(v):
            raise ValueError(f"{v} outside the board")
        if not self.board.is_interior(v):
            return self.board.kappa(v)
        got = self._cache.get(v)
        if got is None:
            if callable(self._source):
                got = self._source(v)
            else:
                got = self._source.get(v)
                if got is None:
                    raise UncoloredVertex(f"interior vertex {v} has no color")
            if not 1 <= got <= self.board.d:
                raise ValueError(f"color {got} at {v} outside 1..{self.board.d}")
            self._cache[v] = got
        return got

    def validate_full(self):
        if callable(self._source):
            return
        for v in self.board.interior():
            if v not in self._source:
                raise UncoloredVertex(f"interior vertex {v} has no color")


def dcoloring_to_text(col: DColoring) -> str:
    board = col.board
    if len(set(board.sizes)) != 1:
        raise ValueError("text format covers cubical boards only")
    lines = [f"dhex {board.sizes[0]} {board.d}"]
    for v in board.interior():
        lines.append(" ".join(map(str, v)) + f" : {col.color(v)}")
    return "\n".join(lines) + "\n"


def dcoloring_from_text(text: str) -> DColoring:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("dhex "):
        raise ValueError("expected 'dhex <n> <d>' header")
    _, n, d = lines[0].split()
    board = DBoard(int(n), int(d))
    interior: dict[tuple, int] = {}
    for ln in lines[1:]:
        left, _, right = ln.partition(":")
        v = tuple(int(t) for t in left.split())
        if not board.is_interior(v):
            raise ValueError(f"{v} is not interior")
        interior[v] = int(right)
    col = DColoring(board, interior)
    col.validate_full()
    return col


# ---------------------------------------------------------------------------
# staircase triangulation geometry

_GEOMETRY_CACHE: dict[tuple, dict] = {}
_KAPPA_CACHE: dict[tuple, dict] = {}


def _kappa_map(sizes: tuple) -> dict:
    """Forced colors of every boundary vertex, precomputed per board shape."""
    table = _KAPPA_CACHE.get(sizes)
    if table is None:
        board = DBoard(sizes)
        table = {}
        for v in itertools.product(*(range(-1, s + 2) for s in sizes)):
            if not board.is_interior(v):
                table[v] = board.kappa(v)
        _KAPPA_CACHE[sizes] = table
    return table


def _color_lookup(board: DBoard, coloring: DColoring) -> Callable[[tuple], int]:
    """Resolve a coloring into a plain lookup for the walk's inner loop."""
    src = coloring._source
    if callable(src):
        return coloring.color
    table = dict(_kappa_map(board.sizes))
    d = board.d
    for v, c in src.items():
        if not 1 <= c <= d:
            raise ValueError(f"color {c} at {v} outside 1..{d}")
        table[tuple(v)] = c
    return table.__getitem__


def full_simplices(sizes: Sequence[int]):
    """All full-dimensional simplices, as vertex chains z = v0 < ... < vd.

    Each is a staircase: v_{k+1} = v_k + e_{pi(k)} for a permutation pi.
    """
    d = len(sizes)
    bases = itertools.product(*(range(-1, s + 1) for s in sizes))
    for z in bases:
        for pi in itertools.permutations(range(d)):
            chain = [z]
            v = z
            for axis in pi:
                v = v[:axis] + (v[axis] + 1,) + v[axis + 1:]
                chain.append(v)
            yield tuple(chain)


def _geometry(sizes: tuple) -> dict:
    """facet (frozenset of d vertices) -> list of containing full simplices."""
    geo = _GEOMETRY_CACHE.get(sizes)
    if geo is None:
        geo = {}
        for chain in full_simplices(sizes):
            for skip in range(len(chain)):
                facet = frozenset(chain[:skip] + chain[skip + 1:])
                geo.setdefault(facet, []).append(chain)
        for facet, sims in geo.items():
            assert len(sims) <= 2, "facet in more than two full simplices"
        _GEOMETRY_CACHE[sizes] = geo
    return geo


# precompute the facet table only while it stays this many chains small;
# past that, facets are completed locally so fine grids cost no memory
GEOMETRY_LIMIT = 10_000


def _facet_chains(sizes: tuple, facet: frozenset) -> list[tuple]:
    """The one or two full simplices containing a facet, found locally.

    Chain vertices have strictly increasing coordinate sums, so sorting
    the facet exposes the single missing step: either an interior gap of
    two (filled by the two pivot orders) or a missing endpoint (extended
    by the one unused axis, kept when it stays inside the box).
    """
    d = len(sizes)
    vs = sorted(facet, key=sum)
    gap = None
    used = set()
    for t, (u, v) in enumerate(zip(vs, vs[1:])):
        step = tuple(b - a for a, b in zip(u, v))
        assert all(c in (0, 1) for c in step)
        axes = [k for k, c in enumerate(step) if c]
        if len(axes) == 1:
            used.add(axes[0])
        else:
            assert len(axes) == 2 and gap is None, "not a staircase facet"
            gap = (t, axes)

    def chain_through(verts):
        return tuple(verts)

    if gap is not None:
        t, (a, b) = gap
        mids = []
        for axis in (a, b):
            mid = tuple(c + (1 if k == axis else 0)
                        for k, c in enumerate(vs[t]))
            mids.append(chain_through(vs[:t + 1] + [mid] + vs[t + 1:]))
        return mids
    missing = next(k for k in range(d) if k not in used) if d > 1 else 0
    out = []
    low = tuple(c - (1 if k == missing else 0) for k, c in enumerate(vs[0]))
    if all(-1 <= c <= sizes[k] + 1 for k, c in enumerate(low)):
        out.append(chain_through([low] + vs))
    high = tuple(c + (1 if k == missing else 0) for k, c in enumerate(vs[-1]))
    if all(-1 <= c <= sizes[k] + 1 for k, c in enumerate(high)):
        out.append(chain_through(vs + [high]))
    return out


def _chain_lookup(sizes: tuple) -> Callable[[frozenset], list]:
    d = len(sizes)
    count = math.factorial(d)
    for s in sizes:
        count *= s + 2
    if count <= GEOMETRY_LIMIT:
        return _geometry(sizes).__getitem__
    return lambda facet: _facet_chains(sizes, facet)


def delta0_chain(board: DBoard) -> tuple:
    """Starting simplex: -1, -1+e1, -1+e1+e2, ..., 0."""
    d = board.d
    chain = []
    for k in range(d + 1):
        chain.append(tuple(0 if i < k else -1 for i in range(d)))
    return tuple(chain)


@dataclass
class DWinner:
    color: int
    path: list[tuple]
    chain: list[tuple]
    terminal_facet: frozenset


def _second_complete_facet(chain: tuple, in_facet: frozenset,
                           color_of: Callable[[tuple], int]) -> frozenset:
    colors = [color_of(v) for v in chain]
    seen: dict[int, int] = {}
    dup: list[int] = []
    for idx, c in enumerate(colors):
        if c in seen:
            dup = [seen[c], idx]
        seen[c] = idx
    assert len(set(colors)) == len(chain) - 1 and dup, \
        "simplex in the chain is not completely colored"
    f_a = frozenset(chain[:dup[0]] + chain[dup[0] + 1:])
    f_b = frozenset(chain[:dup[1]] + chain[dup[1] + 1:])
    assert in_facet in (f_a, f_b), "entering facet is not completely colored"
    return f_b if in_facet == f_a else f_a


def _boundary_axis(board: DBoard, facet: frozenset) -> tuple[int, int]:
    """(axis, shared value) of the hyperplane containing a boundary facet."""
    vs = list(facet)
    for i in range(board.d):
        vals = {v[i] for v in vs}
        if len(vals) == 1:
            val = vals.pop()
            if val in (-1, board.sizes[i] + 1):
                return i, val
    raise AssertionError("boundary facet lies in no bounding hyperplane")


def chain_walk(board: DBoard, coloring: DColoring) -> DWinner:
    """Walk completely colored simplices from the corner to a winning facet."""
    color_of = _color_lookup(board, coloring)
    lookup = _chain_lookup(board.sizes)
    start = delta0_chain(board)
    start_facet = frozenset(start[:-1])
    current, in_facet = start, start_facet
    simplices = [current]
    facets = [in_facet]
    visited = {current}
    while True:
        out = _second_complete_facet(current, in_facet, color_of)
        facets.append(out)
        containing = lookup(out)
        if len(containing) == 1:
            assert containing[0] == current
            axis, value = _boundary_axis(board, out)
            # only the starting facet may sit at -1; the walk never returns
            # to it, so the terminal hyperplane is on the +side
            assert value == board.sizes[axis] + 1, \
                "chain terminated on a -1 hyperplane"
            winner = axis + 1
            break
        nxt = containing[1] if containing[0] == current else containing[0]
        assert nxt not in visited, "chain revisited a simplex"
        visited.add(nxt)
        simplices.append(nxt)
        current, in_facet = nxt, out

    path: list[tuple] = []
    for facet in facets:
        pts = [v for v in facet if color_of(v) == winner]
        assert len(pts) == 1
        if not path or path[-1] != pts[0]:
            path.append(pts[0])
    # the raw vertex sequence may brush the bounding hyperplanes of the
    # winning axis more than once (those are the only boundary vertices a
    # winner-colored path can contain); keep the last crossing
    ax = winner - 1
    low = max(t for t, v in enumerate(path) if v[ax] == -1)
    high = next(t for t in range(low, len(path)) if path[t][ax] == board.sizes[ax] + 1)
    path = path[low:high + 1]
    assert path[0][ax] == -1 and path[-1][ax] == board.sizes[ax] + 1
    assert all(board.is_interior(v) for v in path[1:-1])
    for u, v in zip(path, path[1:]):
        assert board.adjacent(u, v), "extracted path is not connected"
    return DWinner(winner, path, simplices, facets[-1])


def winner_ddim(board: DBoard, coloring: DColoring) -> DWinner:
    """Winner of a fully colored d-dimensional board, with certificate."""
    coloring.validate_full()
    return chain_walk(board, coloring)


# ---------------------------------------------------------------------------
# 2-D winner via the dual walk, cross-checked by connectivity


def _tile_to_dual(board: HexBoard2D, i: int, j: int) -> tuple:
    return (j, board.rows - 1 - i)


def _dual_to_tile(board: HexBoard2D, v: tuple) -> tuple:
    return (board.rows - 1 - v[1], v[0])


@dataclass
class Winner2D:
    winner: str
    path: list[tuple]


def _connectivity_winner(coloring: Coloring2D) -> str:
    board = coloring.board
    winners = []
    for color, starts, accept in (
        (WHITE, [(i, 0) for i in range(board.rows)], lambda i, j: j == board.cols - 1),
        (BLACK, [(0, j) for j in range(board.cols)], lambda i, j: i == board.rows - 1),
    ):
        frontier = [t for t in starts if coloring.color(*t) == color]
        seen = set(frontier)
        won = False
        while frontier:
            i, j = frontier.pop()
            if accept(i, j):
                won = True
                break
            for t in board.neighbors(i, j):
                if t not in seen and coloring.color(*t) == color:
                    seen.add(t)
                    frontier.append(t)
        if won:
            winners.append(color)
    assert len(winners) == 1, f"connectivity found winners {winners}"
    return winners[0]


def winner_2d(board: HexBoard2D, coloring: Coloring2D) -> Winner2D:
    """Winner of a full 2-D coloring: White joins the columns j=0 and
    j=cols-1, Black joins the rows i=0 and i=rows-1.

    The certificate path comes from a chain walk on the dual grid; the
    verdict is cross-checked against a connectivity search before returning.
    """
    if coloring.board != board:
        raise ValueError("coloring belongs to a different board")
    if not coloring.is_full():
        raise ValueError(f"grey tiles present: {coloring.grey_tiles()[:4]}")
    dual = DBoard((board.cols - 1, board.rows - 1))
    interior = {}
    for i, j in board.tiles():
        interior[_tile_to_dual(board, i, j)] = 1 if coloring.color(i, j) == WHITE else 2
    result = chain_walk(dual, DColoring(dual, interior))
    winner = WHITE if result.color == 1 else BLACK

    tiles = [_dual_to_tile(board, v) for v in result.path[1:-1]]
    for a, b in zip(tiles, tiles[1:]):
        assert b in board.neighbors(*a), "tile path disconnected"
    assert all(coloring.color(*t) == winner for t in tiles)
    if winner == WHITE:
        assert tiles[0][1] == 0 and tiles[-1][1] == board.cols - 1
    else:
        # the dual flips the vertical axis, so Black's walk runs bottom-up
        assert tiles[0][0] == board.rows - 1 and tiles[-1][0] == 0

    check = _connectivity_winner(coloring)
    assert check == winner, f"walk says {winner}, connectivity says {check}"
    return Winner2D(winner, tiles)


# ---------------------------------------------------------------------------
# triangulation validity


def simplex_of_point(board: DBoard, x: Sequence) -> frozenset:
    """Vertex set of the unique simplex whose relative interior contains x.

    Exact over the rationals; floats are converted via Fraction, so snap
    inputs to a sensible precision before calling if they came from
    measurements.
    """
    d = board.d
    xs = [Fraction(t) if not isinstance(t, Fraction) else t for t in x]
    if len(xs) != d:
        raise ValueError("point dimension mismatch")
    for i, t in enumerate(xs):
        if not -1 <= t <= board.sizes[i] + 1:
            raise ValueError(f"coordinate {i} of {tuple(map(str, xs))} outside the box")

    def floor(f: Fraction) -> int:
        return f.numerator // f.denominator

    def ceil(f: Fraction) -> int:
        return -((-f.numerator) // f.denominator)

    ranges = [range(floor(t), ceil(t) + 1) for t in xs]
    out = []
    for v in itertools.product(*ranges):
        ok = True
        for i in range(d):
            if not ok:
                break
            for j in range(d):
                if i == j:
                    continue
                diff = xs[i] - xs[j]
                if not floor(diff) <= v[i] - v[j] <= ceil(diff):
                    ok = False
                    break
        if ok:
            out.append(v)
    result = frozenset(out)
    for u, v in itertools.combinations(result, 2):
        assert board.adjacent(u, v), "simplex vertices not pairwise adjacent"
    return result


def simplex_volume(chain: Sequence[tuple]) -> Fraction:
    """Exact volume of a lattice simplex given by its vertex chain."""
    base = chain[0]
    rows = [[Fraction(v[i] - base[i]) for i in range(len(base))] for v in chain[1:]]
    det = _det(rows)
    fact = 1
    for k in range(2, len(base) + 1):
        fact *= k
    return abs(det) / fact


def _det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    mat = [row[:] for row in rows]
    det = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if mat[r][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            mat[c], mat[pivot] = mat[pivot], mat[c]
            det = -det
        det *= mat[c][c]
        for r in range(c + 1, n):
            f = mat[r][c] / mat[c][c]
            if f:
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[c])]
    return det


def triangulation_check(n: int, d: int, samples: int = 40, seed: int = 0) -> bool:
    """The staircase simplices tile the cube and points land in cliques.

    Checks: simplex count is (n+2)^d d!, volumes are each 1/d! and sum to
    (n+2)^d exactly, and simplex_of_point returns a clique containing each
    sampled point's coordinates within floor/ceil bounds.
    """
    import random as _random

    board = DBoard(n, d)
    count = 0
    total = Fraction(0)
    fact = 1
    for k in range(2, d + 1):
        fact *= k
    for chain in full_simplices(board.sizes):
        count += 1
        vol = simplex_volume(chain)
        if vol != Fraction(1, fact):
            return False
        total += vol
    if count != (n + 2) ** d * fact or total != (n + 2) ** d:
        return False
    rng = _random.Random(seed)
    for _ in range(samples):
        x = [Fraction(rng.randint(-4 * (n + 2), 4 * (n + 2)), 4) for _ in range(d)]
        x = [max(Fraction(-1), min(Fraction(n + 1), t)) for t in x]
        verts = simplex_of_point(board, x)  # adjacency asserted inside
        if not 1 <= len(verts) <= d + 1:
            return False
    return True
