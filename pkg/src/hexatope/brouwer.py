"""Approximate fixed points of cube self-maps via HEX colorings.

A self-map of [0,1]^d with no eps-fixed point colors every interior grid
vertex of H(n,d) by the first coordinate whose residual f_i(v/n) - v_i/n
reaches eps in absolute value.  The winner chain of such a coloring must
contain two adjacent vertices whose i-th residuals carry opposite signs,
and for continuous f that pair cannot survive arbitrarily fine grids.
Run forward, this is an algorithm: double n until either some grid
vertex is an eps-witness or bisection along a sign-change edge yields
one.  No modulus of continuity is asked from the caller; the doubling
replaces it.

The reverse direction lives here too: a coloring is turned into the
displacement assignment v -> v +- e_i (plus direction when a same-color
path reaches the zero side), which stays inside the cube precisely when
the coloring has no winner, and is orthant-consistent on every staircase
simplex regardless.  Corrupting the assignment is the intended way to
see the consistency check fail.

Finally, a damped-projection solver drives face-respecting self-maps of
products of simplices to interior target values; existence of solutions
is the polytope surjectivity lemma, the iteration is plain numerics.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import exact
from .hexboard import DBoard, DColoring, chain_walk

# slack for "is the output still in the cube": maps defined by exact
# formulas stay well inside, honest float noise does not reach 1e-9
CUBE_SLACK = 1e-9


class BudgetExceeded(RuntimeError):
    """Search ran out of evaluations; carries the best point seen."""

    def __init__(self, message: str, best_point=None, best_residual=None):
        super().__init__(message)
        self.best_point = best_point
        self.best_residual = best_residual


@dataclass
class Residual:
    point: tuple
    value: float

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("a max-norm residual cannot be negative")


class CubeMap:
    """A black-box self-map of [0,1]^d, outputs validated and clamped.

    The optional modulus is informational only (a callable eps -> delta
    declared by whoever built the map); nothing here requires it.
    """

    __slots__ = ("d", "_fn", "modulus")

    def __init__(self, d: int, fn: Callable[[tuple], Sequence[float]],
                 modulus: Callable[[float], float] | None = None):
        if d < 1:
            raise ValueError("dimension must be at least 1")
        self.d = d
        self._fn = fn
        self.modulus = modulus

    def __call__(self, x: Sequence[float]) -> tuple:
        x = tuple(float(c) for c in x)
        if len(x) != self.d:
            raise ValueError(f"point has {len(x)} coordinates, map wants {self.d}")
        if any(c < -CUBE_SLACK or c > 1 + CUBE_SLACK for c in x):
            raise ValueError(f"point {x} outside the cube")
        y = tuple(float(c) for c in self._fn(x))
        if len(y) != self.d:
            raise ValueError("map returned a point of the wrong dimension")
        if any(c < -CUBE_SLACK or c > 1 + CUBE_SLACK for c in y):
            raise ValueError(f"map left the cube at {x}: {y}")
        return tuple(min(1.0, max(0.0, c)) for c in y)

    def residual(self, x: Sequence[float]) -> Residual:
        """|f(x) - x|_infinity, packaged with the point."""
        x = tuple(float(c) for c in x)
        y = self(x)
        return Residual(x, max(abs(a - b) for a, b in zip(y, x)))


def identity_map(d: int) -> CubeMap:
    return CubeMap(d, lambda x: x)


def reflection_map(d: int) -> CubeMap:
    """x -> 1 - x in every coordinate; unique fixed point at the center."""
    return CubeMap(d, lambda x: tuple(1 - c for c in x))


def rotation_map() -> CubeMap:
    """Quarter turn of the unit square about its center."""
    return CubeMap(2, lambda x: (x[1], 1 - x[0]))


def translation_map(shift: Sequence[float]) -> CubeMap:
    """x -> x + shift, clipped to the cube; fixed points sit on the walls."""
    shift = tuple(float(s) for s in shift)
    return CubeMap(len(shift), lambda x: tuple(
        min(1.0, max(0.0, c + s)) for c, s in zip(x, shift)))


def affine_map(matrix: Sequence[Sequence], offset: Sequence) -> CubeMap:
    """x -> A x + b.  Leaving the cube is reported on evaluation, not here."""
    a = [tuple(Fraction(e) for e in row) for row in matrix]
    b = tuple(Fraction(e) for e in offset)
    d = len(b)
    if len(a) != d or any(len(row) != d for row in a):
        raise ValueError("matrix shape does not match the offset")

    def fn(x):
        return tuple(float(sum(row[j] * x[j] for j in range(d)) + b[i])
                     for i, row in enumerate(a))

    return CubeMap(d, fn)


BUILTIN_MAPS = {
    "identity": identity_map,
    "reflection": reflection_map,
    "rotation": lambda d: rotation_map() if d == 2 else _wrong_dim(),
}


def _wrong_dim():
    raise ValueError("the rotation map lives on the square, use --dim 2")


@dataclass
class ColoredGrid:
    """The coloring a map induces on H(n,d), minus the eps-witnesses."""

    board: DBoard
    coloring: DColoring
    witnesses: list[Residual]
    epsilon: float


def coloring_from_map(f: CubeMap, n: int, eps: float) -> ColoredGrid:
    """Color interior vertices v by min{i : |f_i(v/n) - v_i/n| >= eps}.

    Vertices where no coordinate qualifies have residual below eps and
    are collected as witnesses instead of colored.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if n < 1:
        raise ValueError("grid parameter n must be at least 1")
    board = DBoard(n, f.d)
    colors: dict[tuple, int] = {}
    witnesses: list[Residual] = []
    for v in board.interior():
        x = tuple(c / n for c in v)
        y = f(x)
        color = None
        for i in range(f.d):
            if abs(y[i] - x[i]) >= eps:
                color = i + 1
                break
        if color is None:
            witnesses.append(Residual(x, max(abs(a - b) for a, b in zip(y, x))))
        else:
            colors[v] = color
    return ColoredGrid(board, DColoring(board, colors), witnesses, eps)


class _WitnessFound(Exception):
    def __init__(self, residual: Residual):
        self.residual = residual


def approx_fixed_point(f: CubeMap, eps: float, *, start_n: int = 2,
                       max_n: int = 1 << 16,
                       bisect_steps: int = 64,
                       max_evals: int = 200_000) -> tuple:
    """A point x with |f(x) - x|_infinity < eps, for continuous f.

    Grids are doubled; on each grid the winner chain is walked with
    colors computed on demand, so only vertices the chain touches cost
    an evaluation.  A vertex with residual below eps ends the search at
    once; otherwise the chain's sign-change edge is bisected and every
    midpoint is tried.  The returned point's residual is re-checked
    independently before returning.  Exhausting the budgets says the map
    was too wild for them, not that no fixed point exists.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    used = 0
    best: Residual | None = None

    def consider(x) -> Residual:
        nonlocal best, used
        r = f.residual(x)
        if best is None or r.value < best.value:
            best = r
        used += 1
        if used > max_evals:
            raise BudgetExceeded(
                f"evaluation budget {max_evals} exhausted",
                best_point=best.point, best_residual=best.value)
        return r

    n = start_n
    while n <= max_n:
        board = DBoard(n, f.d)

        def color(v, n=n):
            x = tuple(c / n for c in v)
            r = consider(x)
            if r.value < eps:
                raise _WitnessFound(r)
            y = f(x)
            for i in range(f.d):
                if abs(y[i] - x[i]) >= eps:
                    return i + 1
            raise AssertionError("residual >= eps with no qualifying axis")

        try:
            win = chain_walk(board, DColoring(board, color))
        except _WitnessFound as w:
            check = f.residual(w.residual.point)
            assert check.value < eps
            return w.residual.point
        # every chain vertex has |f_i - x_i| >= eps; the zero side forces
        # the positive sign and the far side the negative one
        ax = win.color - 1
        chain = win.path[1:-1]
        vals = []
        for v in chain:
            x = tuple(c / n for c in v)
            vals.append((x, f(x)[ax] - x[ax]))
        assert vals[0][1] >= eps and vals[-1][1] <= -eps
        k = next(t for t in range(1, len(vals)) if vals[t][1] < 0)
        lo, hi = list(vals[k - 1][0]), list(vals[k][0])
        for _ in range(bisect_steps):
            mid = [(a + b) / 2 for a, b in zip(lo, hi)]
            r = consider(mid)
            if r.value < eps:
                check = f.residual(r.point)
                assert check.value < eps
                return r.point
            if f(mid)[ax] - mid[ax] > 0:
                lo = mid
            else:
                hi = mid
        n *= 2
    raise BudgetExceeded(
        f"no point with residual below {eps} up to n={max_n}; "
        f"best residual {best.value if best else 'none'}",
        best_point=best.point if best else None,
        best_residual=best.value if best else None)


# ------------------------------------------------------ displacement check


def _interior_offsets(d: int):
    offs = []
    for signs in ((1, 0), (-1, 0)):
        for delta in itertools.product(signs, repeat=d):
            if any(delta):
                offs.append(delta)
    return tuple(set(offs))


def displacement_map(coloring: DColoring) -> dict:
    """v -> +e_i when a path of color-i vertices joins v to the w_i = 0
    hyperplane, else -e_i; colors and paths live on the interior grid.
    """
    board = coloring.board
    d = board.d
    offsets = _interior_offsets(d)
    by_color: dict[int, set] = {i: set() for i in range(1, d + 1)}
    for v in board.interior():
        by_color[coloring.color(v)].add(v)
    out = {}
    for i, nodes in by_color.items():
        reached = {v for v in nodes if v[i - 1] == 0}
        frontier = list(reached)
        while frontier:
            v = frontier.pop()
            for off in offsets:
                w = tuple(a + b for a, b in zip(v, off))
                if w in nodes and w not in reached:
                    reached.add(w)
                    frontier.append(w)
        plus = tuple(1 if k == i - 1 else 0 for k in range(d))
        minus = tuple(-1 if k == i - 1 else 0 for k in range(d))
        for v in nodes:
            out[v] = plus if v in reached else minus
    return out


def _interior_chains(sizes: Sequence[int]):
    # staircase triangulation of the solid grid {0..n_1} x ... x {0..n_d}
    d = len(sizes)
    for z in itertools.product(*(range(s) for s in sizes)):
        for perm in itertools.permutations(range(d)):
            chain = [z]
            for axis in perm:
                prev = chain[-1]
                chain.append(tuple(c + (1 if k == axis else 0)
                                   for k, c in enumerate(prev)))
            yield tuple(chain)


def _zero_in_hull(vectors: Sequence[tuple]) -> bool:
    """Exact test for 0 in conv(vectors) via a small phase-one LP."""
    d = len(vectors[0])
    m = len(vectors)
    rows = []
    rhs = []
    for a in range(d):
        row = [Fraction(v[a]) for v in vectors]
        rows.append(row)
        rhs.append(Fraction(0))
        rows.append([-e for e in row])
        rhs.append(Fraction(0))
    rows.append([Fraction(1)] * m)
    rhs.append(Fraction(1))
    value, _, _ = exact.simplex_max([Fraction(1)] * m, rows, rhs)
    return value == 1


@dataclass
class DisplacementReport:
    escapes: list = field(default_factory=list)
    orthant_violations: list = field(default_factory=list)
    hull_violations: list = field(default_factory=list)

    @property
    def winner_detected(self) -> bool:
        # a vertex pushed off the grid is exactly a winning chain's far end
        return bool(self.escapes)

    @property
    def consistent(self) -> bool:
        return not self.orthant_violations and not self.hull_violations


def displacement_consistency_check(coloring: DColoring,
                                   displacements: dict | None = None
                                   ) -> DisplacementReport:
    """Audit the no-winner construction on an actual coloring.

    Escapes (vertices mapped outside the grid) witness winning chains, so
    genuine colorings always produce some.  Orthant consistency and the
    zero-not-in-hull condition hold for every honest displacement map;
    pass a corrupted assignment to watch them fail.
    """
    board = coloring.board
    if displacements is None:
        displacements = displacement_map(coloring)
    report = DisplacementReport()
    for v in board.interior():
        w = displacements[v]
        tgt = tuple(a + b for a, b in zip(v, w))
        if any(not 0 <= c <= board.sizes[k] for k, c in enumerate(tgt)):
            report.escapes.append(v)
    for chain in _interior_chains(board.sizes):
        ws = [displacements[v] for v in chain]
        clean = True
        for axis in range(board.d):
            seen = {w[axis] for w in ws}
            if 1 in seen and -1 in seen:
                report.orthant_violations.append((chain, axis))
                clean = False
        if not clean and _zero_in_hull(ws):
            report.hull_violations.append(chain)
    return report


# --------------------------------------------- targets on simplex products


def project_to_simplex(u: Sequence[float]) -> list[float]:
    """Euclidean projection onto {x >= 0, sum x = 1}."""
    s = sorted(u, reverse=True)
    cum = 0.0
    rho = -1
    theta = 0.0
    for k, val in enumerate(s):
        cum += val
        t = (cum - 1.0) / (k + 1)
        if val - t > 0:
            rho, theta = k, t
    assert rho >= 0
    return [max(0.0, val - theta) for val in u]


def _check_blocks(blocks: Sequence[int], total: int):
    if any(b < 1 for b in blocks):
        raise ValueError("block sizes must be positive")
    if sum(blocks) != total:
        raise ValueError("block sizes do not add up to the point length")


def _block_slices(blocks):
    out = []
    start = 0
    for b in blocks:
        out.append(slice(start, start + b))
        start += b
    return out


def _random_interior(blocks, rng):
    x = []
    for b in blocks:
        raw = [rng.random() + 0.05 for _ in range(b)]
        s = sum(raw)
        x.extend(c / s for c in raw)
    return x


def solve_to_target(g: Callable[[Sequence[float]], Sequence[float]],
                    blocks: Sequence[int], y: Sequence[float], *,
                    tol: float = 1e-9, budget: int = 50_000,
                    damping: float = 0.5, seed: int = 0,
                    face_samples: int = 3) -> tuple:
    """Find x on the product of simplices with |g(x) - y|_infinity <= tol.

    g must map each face of the product into itself (checked here by
    sampling points with zeroed coordinates) and y must be an interior
    point; under those hypotheses a solution exists, and the damped
    projected iteration x <- P(x + lam (y - g(x))) with restarts is sent
    to find it.  Budget counts evaluations of g; exhausting it raises
    with the best point attached.
    """
    blocks = tuple(int(b) for b in blocks)
    y = [float(c) for c in y]
    _check_blocks(blocks, len(y))
    slices = _block_slices(blocks)
    for sl in slices:
        blockvals = y[sl]
        if abs(sum(blockvals) - 1.0) > 1e-9:
            raise ValueError("target block does not sum to one")
        if min(blockvals) <= 0:
            raise ValueError("target must be interior to every simplex block")
    rng = random.Random(seed)

    evals = 0

    def call(x):
        nonlocal evals
        evals += 1
        out = [float(c) for c in g(x)]
        if len(out) != len(y):
            raise ValueError("g returned a point of the wrong length")
        return out

    # face respect: points with a zeroed coordinate must keep it zeroed
    for sl, b in zip(slices, blocks):
        if b < 2:
            continue
        for _ in range(face_samples):
            x = _random_interior(blocks, rng)
            dead = rng.randrange(b)
            live = [k for k in range(b) if k != dead]
            raw = [rng.random() + 0.05 for _ in live]
            s = sum(raw)
            block = [0.0] * b
            for k, r in zip(live, raw):
                block[k] = r / s
            x[sl] = block
            gx = call(x)
            for osl in slices:
                if abs(sum(gx[osl]) - 1.0) > 1e-7:
                    raise ValueError("g does not preserve the block sums")
            if abs(gx[sl][dead]) > 1e-9:
                raise ValueError("g does not map faces into themselves")

    best_x = None
    best_r = float("inf")
    x = list(y)
    lam = damping
    prev = float("inf")
    while evals < budget:
        gx = call(x)
        r = max(abs(a - b) for a, b in zip(gx, y))
        if r < best_r:
            best_x, best_r = list(x), r
        if r <= tol:
            return tuple(x)
        if r > prev:
            lam *= 0.5
        prev = r
        if lam < 1e-13:
            x = _random_interior(blocks, rng)
            lam = damping
            prev = float("inf")
            continue
        stepped = [c + lam * (t - v) for c, t, v in zip(x, y, gx)]
        nxt = []
        for sl in slices:
            nxt.extend(project_to_simplex(stepped[sl]))
        x = nxt
    raise BudgetExceeded(
        f"target not reached within {budget} evaluations; "
        f"best residual {best_r}", best_point=tuple(best_x or []),
        best_residual=best_r)
