"""Packing and piercing for families of d-intervals.

A d-interval occupies up to d parallel unit segments (the partite mode,
one component per line) or is a union of up to d closed intervals on a
single line (the homogeneous mode).  The exact routines compute the
packing number nu, the piercing number tau, and the common fractional
optimum nu* = tau* by rational pivoting over the endpoint incidence
matrix; everything is branch-and-bound or LP at desk scale, capped.

The transversal construction works by trap equalization.  A trap puts t
points on every line, cutting each into t+1 open holes; members that
avoid all trap points escape through a d-hole, one hole per line, by a
positive margin.  Margins induce weights on the complete d-partite
hypergraph of hole types, and a trap whose vertex weights all agree is
either a transversal outright or certifies a large fractional matching
among the escapers.  Equal weights always exist; we hunt them with the
damped target solver on a product of simplices and re-verify every
claimed trap in exact arithmetic, so numeric failure can cost time but
never correctness.

Hypergraph vertices are pairs (line, hole) numbered from 1 on both
coordinates, matching the usual hole numbering; component slots and
piercing points stay 0-based like everything else in the package.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import networkx as nx

from . import exact
from .brouwer import BudgetExceeded, solve_to_target

PARTITE = "partite"
HOMOGENEOUS = "homogeneous"

# exact nu/tau/LP all enumerate or pivot over member subsets; past this
# size the guarantees turn into waiting, so refuse instead
EXACT_CAP = 24

# expander verification walks all pairs of disjoint b-sets
VERIFY_LIMIT = 2_000_000


class CapExceeded(RuntimeError):
    """An exact routine was asked for more members than it can afford."""


class DInterval:
    """One member: a tuple of component slots, each None or [lo, hi]."""

    __slots__ = ("components",)

    def __init__(self, components: Iterable):
        comps = []
        for entry in components:
            if entry is None:
                comps.append(None)
                continue
            lo, hi = entry
            lo, hi = Fraction(lo), Fraction(hi)
            if not 0 <= lo <= hi <= 1:
                raise ValueError(f"component [{lo}, {hi}] is not a closed "
                                 "subinterval of [0, 1]")
            comps.append((lo, hi))
        if not comps:
            raise ValueError("a d-interval needs at least one slot")
        if all(c is None for c in comps):
            raise ValueError("a d-interval needs at least one component")
        self.components = tuple(comps)

    @property
    def d(self) -> int:
        return len(self.components)

    @property
    def present(self) -> tuple:
        return tuple(i for i, c in enumerate(self.components)
                     if c is not None)

    def __repr__(self):
        parts = [f"{i}:[{c[0]},{c[1]}]" for i, c in
                 enumerate(self.components) if c is not None]
        return f"DInterval({' '.join(parts)})"

    def __eq__(self, other):
        return (isinstance(other, DInterval)
                and self.components == other.components)

    def __hash__(self):
        return hash(self.components)


def _overlap(p, q) -> bool:
    return p[0] <= q[1] and q[0] <= p[1]


class DIntervalFamily:
    """An immutable family of d-intervals sharing d and a mode."""

    __slots__ = ("members", "mode", "d")

    def __init__(self, members: Iterable[DInterval], mode: str = PARTITE,
                 d: int | None = None):
        if mode not in (PARTITE, HOMOGENEOUS):
            raise ValueError(f"unknown mode {mode!r}")
        members = tuple(members)
        if members:
            width = members[0].d
            if any(m.d != width for m in members):
                raise ValueError("members disagree on d")
            if d is not None and d != width:
                raise ValueError("declared d does not match the members")
            d = width
        elif d is None:
            raise ValueError("an empty family needs an explicit d")
        elif d < 1:
            raise ValueError("d must be at least 1")
        self.members = members
        self.mode = mode
        self.d = d

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, idx):
        return self.members[idx]

    def meets(self, i: int, j: int) -> bool:
        a, b = self.members[i], self.members[j]
        if self.mode == PARTITE:
            return any(p is not None and q is not None and _overlap(p, q)
                       for p, q in zip(a.components, b.components))
        return any(_overlap(p, q)
                   for p in a.components if p is not None
                   for q in b.components if q is not None)

    def pierced(self, idx: int, point: tuple) -> bool:
        """Whether member idx contains the point (line, x).

        Homogeneous members live on one line, so the line entry is
        ignored there (piercing points carry line 0 by convention).
        """
        line, x = point
        member = self.members[idx]
        if self.mode == PARTITE:
            comp = member.components[line]
            return comp is not None and comp[0] <= x <= comp[1]
        return any(c is not None and c[0] <= x <= c[1]
                   for c in member.components)


def is_transversal(family: DIntervalFamily, points: Sequence[tuple]) -> bool:
    return all(any(family.pierced(i, p) for p in points)
               for i in range(len(family)))


def gap_family() -> DIntervalFamily:
    """Three 2-intervals that pairwise meet but need two piercing points.

    The smallest family separating packing from piercing: nu = 1,
    tau = 2, and the fractional optimum sits exactly between at 3/2.
    """
    half = Fraction(1, 2)
    a = DInterval([(0, half), (half, 1)])
    b = DInterval([(half, 1), (0, half)])
    c = DInterval([(Fraction(1, 5), Fraction(3, 10)),
                   (Fraction(1, 5), Fraction(3, 10))])
    return DIntervalFamily([a, b, c])


def gap_copies(k: int) -> DIntervalFamily:
    """k disjoint shrunken translates of gap_family: nu = k, tau = 2k."""
    if k < 1:
        raise ValueError("need at least one copy")
    base = gap_family()
    members = []
    for copy in range(k):
        lo = Fraction(2 * copy, 2 * k)
        scale = Fraction(1, 2 * k)
        for m in base:
            members.append(DInterval([
                None if c is None else (lo + c[0] * scale, lo + c[1] * scale)
                for c in m.components]))
    return DIntervalFamily(members)


# ------------------------------------------------------------ exact nu, tau


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _conflict_masks(family: DIntervalFamily) -> list[int]:
    n = len(family)
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if family.meets(i, j):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


def _check_cap(family: DIntervalFamily, cap: int):
    if len(family) > cap:
        raise CapExceeded(f"{len(family)} members exceed the exact cap {cap}")


def nu(family: DIntervalFamily, cap: int = EXACT_CAP) -> tuple:
    """Maximum number of pairwise disjoint members, with a witness.

    Branch and bound over the conflict graph: branch on the most
    conflicted candidate, include-first, pruned by the candidate count.
    """
    _check_cap(family, cap)
    adj = _conflict_masks(family)
    n = len(family)
    best_size = 0
    best_set = 0

    def grab(cand: int, chosen: int, size: int):
        nonlocal best_size, best_set
        if size > best_size:
            best_size, best_set = size, chosen
        if not cand or size + cand.bit_count() <= best_size:
            return
        v = max(_bits(cand), key=lambda u: (adj[u] & cand).bit_count())
        grab(cand & ~(adj[v] | (1 << v)), chosen | (1 << v), size + 1)
        grab(cand & ~(1 << v), chosen, size)

    grab((1 << n) - 1, 0, 0)
    return best_size, tuple(_bits(best_set))


def _piercing_candidates(family: DIntervalFamily) -> tuple:
    """Endpoint piercing candidates with their member coverage masks.

    A minimum transversal can always be slid onto component endpoints:
    move any piercing point right until it first hits an endpoint; every
    member it pierced has its right endpoint at or beyond that stop, and
    its left one at or before, so nothing is lost.  The same slide shows
    the endpoint incidence rows dominate all fractional constraints.
    Dominated candidates (coverage a subset of another's) are dropped.
    """
    per_line: dict[int, set] = {}
    for member in family:
        for slot, comp in enumerate(member.components):
            if comp is None:
                continue
            line = slot if family.mode == PARTITE else 0
            per_line.setdefault(line, set()).update(comp)
    points = [(line, x) for line in sorted(per_line)
              for x in sorted(per_line[line])]
    masks = []
    for p in points:
        m = 0
        for i in range(len(family)):
            if family.pierced(i, p):
                m |= 1 << i
        masks.append(m)
    keep_points, keep_masks = [], []
    for i, m in enumerate(masks):
        if not m:
            continue
        dominated = any(j != i and (m | masks[j]) == masks[j]
                        and (masks[j] != m or j < i)
                        for j in range(len(masks)))
        if not dominated:
            keep_points.append(points[i])
            keep_masks.append(m)
    return keep_points, keep_masks


def tau(family: DIntervalFamily, cap: int = EXACT_CAP) -> tuple:
    """Minimum piercing set, with the witness points."""
    _check_cap(family, cap)
    if not family.members:
        return 0, ()
    points, masks = _piercing_candidates(family)
    full = (1 << len(family)) - 1
    covers = max(m.bit_count() for m in masks)

    greedy = []
    left = full
    while left:
        i = max(range(len(masks)), key=lambda j: (masks[j] & left).bit_count())
        greedy.append(i)
        left &= ~masks[i]
    best = greedy

    by_member = [[i for i, m in enumerate(masks) if m >> j & 1]
                 for j in range(len(family))]

    def descend(left: int, chosen: list):
        nonlocal best
        need = -(-left.bit_count() // covers)
        if len(chosen) + need >= len(best):
            return
        if not left:
            best = list(chosen)
            return
        j = min(_bits(left), key=lambda u: len(by_member[u]))
        for i in sorted(by_member[j],
                        key=lambda u: -(masks[u] & left).bit_count()):
            chosen.append(i)
            descend(left & ~masks[i], chosen)
            chosen.pop()

    descend(full, [])
    return len(best), tuple(points[i] for i in best)


@dataclass(frozen=True)
class FractionalSolution:
    """The common optimum of fractional packing and piercing.

    packing weights one entry per member; transversal weights one entry
    per candidate point, against the points tuple.
    """

    value: Fraction
    packing: tuple
    points: tuple
    transversal: tuple


def nu_star_tau_star(family: DIntervalFamily,
                     cap: int = EXACT_CAP) -> FractionalSolution:
    """Exact fractional packing = fractional piercing, by one LP.

    The packing LP is solved over the endpoint incidence rows; the dual
    read off the slack costs is a fractional transversal, and the two
    objective values are checked equal before returning.
    """
    _check_cap(family, cap)
    n = len(family)
    if n == 0:
        return FractionalSolution(Fraction(0), (), (), ())
    points, masks = _piercing_candidates(family)
    rows = [[Fraction(1) if m >> j & 1 else Fraction(0) for j in range(n)]
            for m in masks]
    ones = [Fraction(1)] * n
    value, x, y = exact.simplex_max(ones, rows, [Fraction(1)] * len(rows))
    assert sum(y) == value, "fractional piercing disagrees with packing"
    for j in range(n):
        assert sum(y[i] * rows[i][j] for i in range(len(rows))) >= 1
    return FractionalSolution(value, tuple(x), tuple(points), tuple(y))


# ----------------------------------------------------------- traps and holes


class Trap:
    """t candidate piercing points on each line, holes open between them."""

    __slots__ = ("points",)

    def __init__(self, points: Iterable[Iterable]):
        rows = []
        for line in points:
            vals = tuple(Fraction(p) for p in line)
            if any(not 0 <= p <= 1 for p in vals):
                raise ValueError("trap points live in [0, 1]")
            if any(a > b for a, b in zip(vals, vals[1:])):
                raise ValueError("trap points must be sorted per line")
            rows.append(vals)
        if not rows or not rows[0]:
            raise ValueError("a trap needs at least one point per line")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("every line carries the same number of points")
        self.points = tuple(rows)

    @property
    def d(self) -> int:
        return len(self.points)

    @property
    def t(self) -> int:
        return len(self.points[0])

    def holes(self, line: int) -> tuple:
        """The t+1 open gaps on a line, walls included, some possibly empty."""
        z = self.points[line]
        bounds = (Fraction(0),) + z + (Fraction(1),)
        return tuple(zip(bounds, bounds[1:]))

    def piercing_points(self) -> tuple:
        """The trap as a deduplicated, sorted set of (line, x) points."""
        return tuple(sorted({(i, x) for i, row in enumerate(self.points)
                             for x in row}))

    def __repr__(self):
        rows = ["{" + ", ".join(str(p) for p in row) + "}"
                for row in self.points]
        return f"Trap({'; '.join(rows)})"


def trap_from_simplex(x: Sequence, d: int, t: int) -> Trap:
    """Decode a point of the d-fold product of t-simplices into a trap.

    Each block of t+1 coordinates is renormalized exactly and turned
    into cumulative sums; the final coordinate is the slack to 1.
    """
    if len(x) != d * (t + 1):
        raise ValueError("point length does not match d and t")
    rows = []
    for i in range(d):
        block = [Fraction(c) for c in x[i * (t + 1):(i + 1) * (t + 1)]]
        if any(c < 0 for c in block):
            raise ValueError("simplex coordinates must be nonnegative")
        s = sum(block)
        if s == 0:
            raise ValueError("a simplex block summed to zero")
        block = [c / s for c in block]
        rows.append(_cumulative(block))
    return Trap(rows)


def simplex_from_trap(trap: Trap) -> tuple:
    """Inverse of trap_from_simplex: consecutive gaps plus the slack."""
    out = []
    for row in trap.points:
        prev = Fraction(0)
        for z in row:
            out.append(z - prev)
            prev = z
        out.append(Fraction(1) - prev)
    return tuple(out)


def _cumulative(block: Sequence) -> tuple:
    acc = block[0] * 0
    z = []
    for val in block[:-1]:
        acc = acc + val
        z.append(acc)
    return tuple(z)


def _escape_types(member: DInterval, points: Sequence[Sequence]):
    """Hole choices per line and the escape margin, or None if trapped.

    points holds one sorted sequence per line, floats or Fractions.
    A present component must sit strictly inside a single hole; absent
    components fit through any hole.  The margin is the largest of the
    per-line distances to the nearest trap point.
    """
    t = len(points[0])
    choices = []
    dist = None
    for slot, comp in enumerate(member.components):
        if comp is None:
            choices.append(tuple(range(1, t + 2)))
            continue
        lo, hi = comp
        below = 0
        nearest = None
        for p in points[slot]:
            if lo <= p <= hi:
                return None
            gap = lo - p if p < lo else p - hi
            if p < lo:
                below += 1
            if nearest is None or gap < nearest:
                nearest = gap
        choices.append((below + 1,))
        if dist is None or nearest > dist:
            dist = nearest
    return choices, dist


@dataclass(frozen=True)
class EscapeHypergraph:
    """Positive-margin hole types of a trap, as a weighted hypergraph.

    Vertices are (line, hole), both 1-based; every edge picks exactly
    one hole on every line, so the hypergraph is d-partite d-uniform.
    """

    d: int
    t: int
    weights: dict

    def __post_init__(self):
        for edge, q in self.weights.items():
            lines = sorted(i for i, _ in edge)
            if lines != list(range(1, self.d + 1)):
                raise ValueError(f"edge {set(edge)} is not one hole per line")
            if any(not 1 <= j <= self.t + 1 for _, j in edge):
                raise ValueError("hole number out of range")
            if q <= 0:
                raise ValueError("edges carry positive weight")

    def vertices(self) -> tuple:
        return tuple((i, j) for i in range(1, self.d + 1)
                     for j in range(1, self.t + 2))

    def vertex_weights(self) -> dict:
        w = {v: Fraction(0) for v in self.vertices()}
        for edge, q in self.weights.items():
            for v in edge:
                w[v] += q
        return w


def escape_hypergraph(family: DIntervalFamily, trap: Trap) -> EscapeHypergraph:
    """Exact escape margins of a family against a trap.

    Members with absent components escape through every compatible hole
    type at once, so they can contribute to many edges.
    """
    if family.mode != PARTITE:
        raise ValueError("traps cut parallel lines; use a partite family")
    if trap.d != family.d:
        raise ValueError("trap and family disagree on d")
    weights: dict = {}
    for member in family:
        res = _escape_types(member, trap.points)
        if res is None:
            continue
        choices, dist = res
        for combo in itertools.product(*choices):
            edge = frozenset((slot + 1, j) for slot, j in enumerate(combo))
            if edge not in weights or weights[edge] < dist:
                weights[edge] = dist
    return EscapeHypergraph(family.d, trap.t, weights)


# ------------------------------------------------------- trap equalization


class _Trapped(Exception):
    """Raised inside the numeric map when nothing escapes at all."""

    def __init__(self, x):
        self.x = x


def _needs_trap(family: DIntervalFamily):
    if family.mode != PARTITE:
        raise ValueError("traps cut parallel lines; use a partite family")
    for idx, member in enumerate(family):
        if any(c is None for c in member.components):
            raise ValueError(
                f"member {idx} has an absent component; equalization "
                "needs every line occupied, or empty holes gain weight")


@dataclass(frozen=True)
class TrapResult:
    """A trap with its exactly recomputed vertex weights."""

    trap: Trap
    hypergraph: EscapeHypergraph
    weights: dict
    scale: Fraction
    spread: Fraction
    equalized: bool
    residual: float | None

    @property
    def transversal(self):
        """The trap's points when nothing escapes, else None."""
        if self.scale == 0:
            return self.trap.piercing_points()
        return None


def equalize_trap(family: DIntervalFamily, t: int, *, tol: float = 1e-6,
                  budget: int = 50_000, seed: int = 0) -> TrapResult:
    """Hunt a trap of t points per line with equal vertex weights.

    The trap is encoded as a point on a product of t-simplices and the
    weight profile, normalized by the total edge weight, is driven to
    the barycenter.  Normalization keeps every block a probability
    vector, and empty holes carry weight zero, so faces map into
    themselves and a solution exists; the damped solver merely has to
    find one.  Whatever comes back, weights are recomputed in exact
    arithmetic; equalized means the exact spread is within tol of the
    largest weight (or every weight is zero, which is a transversal).
    """
    _needs_trap(family)
    if t < 1:
        raise ValueError("a trap needs at least one point per line")
    d = family.d
    width = t + 1
    barycenter = [1.0 / width] * (d * width)
    residual: float | None = None

    if not family.members:
        xs = [Fraction(1, width)] * (d * width)
        return _verified(family, xs, d, t, tol, residual=0.0)

    def g(xs):
        pts = [_cumulative(xs[i * width:(i + 1) * width]) for i in range(d)]
        margins: dict = {}
        for member in family:
            res = _escape_types(member, pts)
            if res is None:
                continue
            choices, dist = res
            combo = tuple(j for (j,) in choices)
            if combo not in margins or margins[combo] < dist:
                margins[combo] = dist
        if not margins:
            raise _Trapped(tuple(xs))
        total = 0.0
        w = [[0.0] * width for _ in range(d)]
        for combo, val in margins.items():
            total += val
            for slot, j in enumerate(combo):
                w[slot][j - 1] += val
        return [w[i][j] / total for i in range(d) for j in range(width)]

    try:
        xs = solve_to_target(g, (width,) * d, barycenter,
                             tol=1e-10, budget=budget, seed=seed)
        gx = g(xs)
        residual = max(abs(a - b) for a, b in zip(gx, barycenter))
    except _Trapped as hit:
        xs = hit.x
        residual = 0.0
    except BudgetExceeded as stop:
        xs = stop.best_point
        residual = stop.best_residual
    return _verified(family, xs, d, t, tol, residual)


def _verified(family, xs, d, t, tol, residual) -> TrapResult:
    trap = trap_from_simplex(xs, d, t)
    hyper = escape_hypergraph(family, trap)
    weights = hyper.vertex_weights()
    scale = max(weights.values(), default=Fraction(0))
    spread = scale - min(weights.values(), default=Fraction(0))
    equalized = scale == 0 or spread <= Fraction(tol) * max(scale, Fraction(1))
    return TrapResult(trap, hyper, weights, scale, spread, equalized,
                      residual)


@dataclass(frozen=True)
class KaiserResult:
    """A verified transversal sized against the packing number."""

    transversal: tuple
    size: int
    nu: int
    bound: int
    fallback: bool
    trap: Trap | None


def kaiser_transversal(family: DIntervalFamily, *, tol: float = 1e-6,
                       budget: int = 50_000, seed: int = 0,
                       retries: int = 2) -> KaiserResult:
    """A transversal of at most d * t points from a weightless trap.

    At t = d * nu an equalized trap must have weight zero, so the trap
    itself pierces the family.  Each attempt is re-verified exactly; if
    equalization keeps missing, the exact minimum transversal is
    returned instead, flagged as the fallback.
    """
    _needs_trap(family)
    k, _ = nu(family)
    d = family.d
    bound = (d * d - d) * k if d >= 2 else k
    if not family.members:
        return KaiserResult((), 0, 0, bound, False, None)
    t = d * k
    for attempt in range(retries + 1):
        res = equalize_trap(family, t, tol=tol,
                            budget=budget << (2 * attempt),
                            seed=seed + attempt)
        points = res.transversal
        if points is not None:
            assert is_transversal(family, points)
            return KaiserResult(points, len(points), k, bound, False,
                                res.trap)
    size, points = tau(family)
    return KaiserResult(points, size, k, bound, True, None)


@dataclass(frozen=True)
class MultipointResult:
    """One-point-per-line piercing attempt plus the Helly-style check."""

    points: tuple | None
    hypothesis: bool
    k: int


def multipoint_search(family: DIntervalFamily, *, tol: float = 1e-6,
                      budget: int = 50_000, seed: int = 0,
                      retries: int = 2) -> MultipointResult:
    """Try to pierce the family with a single point on every line.

    Runs trap equalization at t = 1; zero weights hand over the d
    points, verified exactly.  Also reports whether every ceil(log2(d+2))
    or fewer members share a common point, the hypothesis under which a
    multipoint is guaranteed to exist.  Its failure makes an absent
    multipoint unremarkable rather than an error.
    """
    _needs_trap(family)
    d = family.d
    k = math.ceil(math.log2(d + 2))
    hypothesis = _small_subfamilies_meet(family, k)
    points = None
    for attempt in range(retries + 1):
        res = equalize_trap(family, 1, tol=tol,
                            budget=budget << (2 * attempt),
                            seed=seed + attempt)
        if res.transversal is not None:
            points = res.transversal
            assert is_transversal(family, points)
            assert len(points) == d
            break
    return MultipointResult(points, hypothesis, k)


def _small_subfamilies_meet(family: DIntervalFamily, k: int) -> bool:
    members = list(range(len(family)))
    for size in range(1, min(k, len(members)) + 1):
        for combo in itertools.combinations(members, size):
            if not _common_point(family, combo):
                return False
    return True


def _common_point(family: DIntervalFamily, combo) -> bool:
    for line in range(family.d):
        comps = [family.members[i].components[line] for i in combo]
        if any(c is None for c in comps):
            continue
        if max(c[0] for c in comps) <= min(c[1] for c in comps):
            return True
    return False


# ------------------------------------------------ matchings in the hypergraph


def greedy_matching(hyper: EscapeHypergraph,
                    weights: dict | None = None) -> tuple:
    """Disjoint edges grabbed by descending weight, with the size bound.

    Without explicit weights the hypergraph must come from an equalized
    trap: all vertex weights equal and positive.  Dividing by the common
    value makes the edge weights a tight fractional matching whose total
    is t+1 by double counting, and greedy picking discards at most d
    units of weight per step, so the matching has at least
    ceil(total / d) edges; that bound is asserted on the way out.
    Explicit weights must form a fractional matching themselves.
    """
    if weights is None:
        if not hyper.weights:
            return ()
        vertex = hyper.vertex_weights()
        common = set(vertex.values())
        if len(common) != 1:
            raise ValueError("vertex weights differ; equalize the trap "
                             "first or pass explicit weights")
        scale = common.pop()
        weights = {edge: q / scale for edge, q in hyper.weights.items()}
        assert sum(weights.values()) == hyper.t + 1
    else:
        if any(edge not in hyper.weights for edge in weights):
            raise ValueError("weights mention an edge outside the hypergraph")
        if any(q < 0 for q in weights.values()):
            raise ValueError("weights must be nonnegative")
        sums: dict = {}
        for edge, q in weights.items():
            for v in edge:
                sums[v] = sums.get(v, Fraction(0)) + q
        if any(s > 1 for s in sums.values()):
            raise ValueError("weights overload a vertex; not a fractional "
                             "matching")
    total = sum(weights.values())
    order = sorted(weights, key=lambda e: (-weights[e], sorted(e)))
    chosen: list = []
    used: set = set()
    for edge in order:
        if used.isdisjoint(edge):
            chosen.append(edge)
            used.update(edge)
    assert len(chosen) >= math.ceil(total / hyper.d)
    return tuple(chosen)


def lift_matching(family: DIntervalFamily, trap: Trap,
                  edges: Sequence[frozenset]) -> tuple:
    """Turn disjoint hole types into disjoint members that use them.

    Disjoint edges put their escapers into different holes on every
    line, so the chosen members are pairwise disjoint; that is asserted,
    not assumed.
    """
    for a, b in itertools.combinations(edges, 2):
        if a & b:
            raise ValueError("edges must be pairwise disjoint")
    picked = []
    for edge in edges:
        wanted = {i - 1: j for i, j in edge}
        found = None
        for idx, member in enumerate(family):
            res = _escape_types(member, trap.points)
            if res is None:
                continue
            choices, _ = res
            if all(wanted[slot] in choices[slot]
                   for slot in range(family.d)):
                found = idx
                break
        if found is None:
            raise ValueError(f"no member escapes through {set(edge)}")
        picked.append(found)
    for a, b in itertools.combinations(picked, 2):
        assert not family.meets(a, b)
    return tuple(picked)


# --------------------------------------------------- lower bound construction


def sgall_expander(n: int, b: int, *, seed: int = 0, attempts: int = 200,
                   c: float = 1.0) -> nx.Graph:
    """A graph of max degree b meeting every pair of disjoint b-sets.

    Random generation with exhaustive verification; n is capped near
    c * b^2 / log b, where such graphs exist.  For b = 1 the property
    demands a complete graph, which the degree bound caps at n = 2.
    """
    if n < 1 or b < 1:
        raise ValueError("need n >= 1 and b >= 1")
    if b == 1:
        if n > 2:
            raise ValueError("b = 1 forces a complete graph; n <= 2 only")
    else:
        limit = c * b * b / math.log(b)
        if n > limit:
            raise ValueError(f"n = {n} exceeds the guarantee range "
                             f"{limit:.2f} for b = {b}")
    count = math.comb(n, b)
    if count * count > VERIFY_LIMIT:
        raise CapExceeded("too many b-set pairs to verify exhaustively")
    rng = random.Random(seed)
    all_edges = list(itertools.combinations(range(n), 2))
    for _ in range(attempts):
        graph = nx.empty_graph(n)
        rng.shuffle(all_edges)
        for u, v in all_edges:
            if graph.degree(u) < b and graph.degree(v) < b:
                graph.add_edge(u, v)
        if _meets_all_pairs(graph, n, b):
            return graph
    raise RuntimeError(f"no such graph found in {attempts} attempts")


def _meets_all_pairs(graph: nx.Graph, n: int, b: int) -> bool:
    if n < 2 * b:
        return True
    nbrs = {v: set(graph[v]) for v in range(n)}
    for a_set in itertools.combinations(range(n), b):
        rest = [v for v in range(n) if v not in a_set]
        reach = set().union(*(nbrs[v] for v in a_set))
        for b_set in itertools.combinations(rest, b):
            if not reach.intersection(b_set):
                return False
    return True


def sgall_sets(b_list: Sequence[Iterable], graph: nx.Graph,
               size_cap: int | None = None) -> list:
    """Grow each b-set into a superset meeting every other one.

    A_i takes B_i, the neighbors of its least element, and everything
    the whole of B_i cannot see.  The pairwise condition (one of the
    two supersets hits the other base set) then holds for any graph;
    only the size bound needs expansion, and both are verified here.
    """
    bases = [frozenset(x) for x in b_list]
    if not bases:
        return []
    b = len(bases[0])
    if b == 0 or any(len(x) != b for x in bases):
        raise ValueError("base sets must share one positive size")
    nodes = set(graph.nodes)
    if any(not x <= nodes for x in bases):
        raise ValueError("base sets must live on the graph's vertices")
    cap = 3 * b if size_cap is None else size_cap
    grown = []
    for base in bases:
        seen = set().union(*(set(graph[u]) for u in base))
        a_set = base | set(graph[min(base)]) | (nodes - seen)
        if len(a_set) > cap:
            raise ValueError(f"grown set has {len(a_set)} elements, "
                             f"over the cap {cap}")
        grown.append(frozenset(a_set))
    for i, j in itertools.combinations(range(len(bases)), 2):
        if not (grown[i] & bases[j]) and not (grown[j] & bases[i]):
            raise ValueError(f"sets {i} and {j} would give disjoint members")
    return grown


@dataclass(frozen=True)
class LowerBoundFamily:
    """A homogeneous family whose piercing number is measured exactly."""

    family: DIntervalFamily
    nu: int
    tau: int | None
    tau_points: tuple | None


def lower_bound_family(d: int, k: int = 1) -> LowerBoundFamily:
    """Pairwise-meeting homogeneous d-intervals forcing a large transversal.

    Each member owns one private unit cell plus single points planted in
    the other members' cells, so any piercing point serves at most two
    members; k disjoint copies multiply both numbers.  At this scale the
    base sets are singletons, which makes the grown sets the whole
    vertex set and the expander graph irrelevant; the size cap d is
    checked directly instead of the asymptotic 3b.
    """
    if not 3 <= d <= 5:
        raise ValueError("the construction is built for 3 <= d <= 5")
    if k < 1:
        raise ValueError("need at least one copy")
    b = d // 3
    n = d
    graph = nx.empty_graph(n)
    bases = [frozenset({v}) for v in range(n)]
    assert b == 1 and len(bases) == math.comb(n, b)
    grown = sgall_sets(bases, graph, size_cap=d)
    cells = k * n
    members = []
    for copy in range(k):
        for i in range(n):
            base = bases[i]
            comps = []
            for v in sorted(base):
                cell = copy * n + v
                comps.append((Fraction(2 * cell, 2 * cells),
                              Fraction(2 * cell + 1, 2 * cells)))
            for u in sorted(grown[i] - base):
                cell = copy * n + u
                lo = Fraction(2 * cell, 2 * cells)
                x = lo + Fraction(i + 1, n + 1) * Fraction(1, 2 * cells)
                comps.append((x, x))
            comps += [None] * (d - len(comps))
            members.append(DInterval(comps))
    family = DIntervalFamily(members, HOMOGENEOUS)
    for copy in range(k):
        lo, hi = copy * n, (copy + 1) * n
        for i, j in itertools.combinations(range(lo, hi), 2):
            assert family.meets(i, j)
        for j in range(hi, len(members)):
            assert not family.meets(lo, j)
    if len(family) <= EXACT_CAP:
        size, points = tau(family)
        return LowerBoundFamily(family, k, size, points)
    return LowerBoundFamily(family, k, None, None)


# ------------------------------------------------------------ serialization


def format_family(family: DIntervalFamily) -> str:
    """Render a family in the line-per-member text format."""
    lines = [f"dint {family.d} {family.mode}"]
    for member in family:
        entries = [f"{i}:{c[0]},{c[1]}"
                   for i, c in enumerate(member.components) if c is not None]
        lines.append(" ".join(entries))
    return "\n".join(lines) + "\n"


def parse_family(text: str) -> DIntervalFamily:
    """Parse the text format: a 'dint d mode' header, one member per line.

    Components are slot:lo,hi with rational or decimal endpoints; slots
    not mentioned stay absent.
    """
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty family file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "dint":
        raise ValueError("header must read: dint <d> <mode>")
    d = int(head[1])
    mode = head[2]
    members = []
    for ln in lines[1:]:
        comps: list = [None] * d
        for token in ln.split():
            slot_text, _, span = token.partition(":")
            lo_text, _, hi_text = span.partition(",")
            if not span or not hi_text:
                raise ValueError(f"malformed component {token!r}")
            slot = int(slot_text)
            if not 0 <= slot < d:
                raise ValueError(f"slot {slot} out of range for d = {d}")
            if comps[slot] is not None:
                raise ValueError(f"slot {slot} listed twice")
            comps[slot] = (Fraction(lo_text), Fraction(hi_text))
        members.append(DInterval(comps))
    return DIntervalFamily(members, mode, d=d)
