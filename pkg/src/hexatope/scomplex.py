"""Finite simplicial complexes: evasiveness-style recursions, exact homology,
group actions, quotients and Lefschetz numbers.

Faces are frozensets of integer vertex labels.  A nonempty complex always
contains the empty face; the complex with no faces at all is "void" and by
convention has Euler characteristic 0 and is not a simplex.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import exact
from .setfam import SetFamily

Face = frozenset
CLOSURE_CAP = 10080
CANONICAL_VERTEX_LIMIT = 8


class NotAComplex(ValueError):
    pass


class ClosureCapExceeded(RuntimeError):
    pass


class SimplicialComplex:
    __slots__ = ("faces", "_vertices", "_maximal", "vertex_names")

    def __init__(self, faces: Iterable[Iterable[int]], *, vertex_names: dict | None = None):
        fs = {Face(f) for f in faces}
        if fs:
            fs.add(Face())
        for f in fs:
            for v in f:
                if Face([v]) not in fs:
                    raise NotAComplex(f"face {set(f)} present but vertex {v} is not")
            # downward closure beyond vertices
            for w in f:
                sub = f - {w}
                if sub not in fs:
                    raise NotAComplex(f"face {set(f)} present but subface {set(sub)} is not")
        self.faces: frozenset[Face] = frozenset(fs)
        self._vertices: tuple[int, ...] | None = None
        self._maximal: frozenset[Face] | None = None
        self.vertex_names = vertex_names or {}

    @staticmethod
    def from_maximal(facets: Iterable[Iterable[int]]) -> "SimplicialComplex":
        faces: set[Face] = set()
        for f in facets:
            f = tuple(f)
            for k in range(len(f) + 1):
                faces.update(Face(c) for c in itertools.combinations(f, k))
        out = SimplicialComplex.__new__(SimplicialComplex)
        if faces:
            faces.add(Face())
        out.faces = frozenset(faces)
        out._vertices = None
        out._maximal = None
        out.vertex_names = {}
        return out

    @staticmethod
    def void() -> "SimplicialComplex":
        return SimplicialComplex([])

    @staticmethod
    def simplex(k: int) -> "SimplicialComplex":
        """The full simplex on k+1 vertices (k = -1 gives {{}})."""
        if k < -1:
            raise ValueError("dimension below -1")
        if k == -1:
            out = SimplicialComplex.__new__(SimplicialComplex)
            out.faces = frozenset({Face()})
            out._vertices = None
            out._maximal = None
            out.vertex_names = {}
            return out
        return SimplicialComplex.from_maximal([range(k + 1)])

    @staticmethod
    def from_setfamily(fam: SetFamily) -> "SimplicialComplex":
        faces = []
        for mask in fam.members:
            faces.append([e for e in range(fam.m) if mask >> e & 1])
        return SimplicialComplex(faces)

    def to_setfamily(self, m: int | None = None) -> SetFamily:
        verts = self.vertices()
        index = {v: i for i, v in enumerate(verts)}
        if m is None:
            m = len(verts)
        masks = set()
        for f in self.faces:
            mask = 0
            for v in f:
                mask |= 1 << index[v]
            masks.add(mask)
        return SetFamily(m, frozenset(masks))

    # -- basic structure ---------------------------------------------------

    def vertices(self) -> tuple[int, ...]:
        if self._vertices is None:
            vs = sorted({v for f in self.faces for v in f})
            self._vertices = tuple(vs)
        return self._vertices

    def maximal_faces(self) -> frozenset[Face]:
        if self._maximal is None:
            self._maximal = frozenset(
                f for f in self.faces if not any(f < g for g in self.faces)
            )
        return self._maximal

    def dim(self) -> int:
        if not self.faces:
            return -2  # void; one less than the (-1)-simplex
        return max(len(f) for f in self.faces) - 1

    def f_vector(self) -> list[int]:
        out = [0] * (self.dim() + 1 if self.dim() >= 0 else 0)
        for f in self.faces:
            if f:
                out[len(f) - 1] += 1
        return out

    def faces_of_dim(self, k: int) -> list[Face]:
        return sorted((f for f in self.faces if len(f) == k + 1), key=sorted)

    def euler_characteristic(self) -> int:
        chi = 0
        for f in self.faces:
            if f:
                chi += (-1) ** (len(f) - 1)
        return chi

    def is_simplex(self) -> bool:
        if not self.faces:
            return False
        return len(self.faces) == 1 << len(self.vertices())

    def is_empty(self) -> bool:
        return not self.faces

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self.faces == other.faces

    def __hash__(self) -> int:
        return hash(self.faces)

    def __repr__(self) -> str:
        return f"SimplicialComplex({len(self.vertices())} vertices, {len(self.faces)} faces)"

    # -- local operations ---------------------------------------------------

    def link(self, v: int) -> "SimplicialComplex":
        if Face([v]) not in self.faces:
            raise ValueError(f"{v} is not a vertex")
        out = SimplicialComplex.__new__(SimplicialComplex)
        out.faces = frozenset(f for f in self.faces if v not in f and f | {v} in self.faces)
        out._vertices = None
        out._maximal = None
        out.vertex_names = {}
        return out

    def deletion(self, v: int) -> "SimplicialComplex":
        if Face([v]) not in self.faces:
            raise ValueError(f"{v} is not a vertex")
        out = SimplicialComplex.__new__(SimplicialComplex)
        out.faces = frozenset(f for f in self.faces if v not in f)
        out._vertices = None
        out._maximal = None
        out.vertex_names = {}
        return out

    def is_cone(self) -> int | None:
        """A vertex contained in every maximal face, or None."""
        if not self.faces or not self.vertices():
            return None
        apex_candidates = set(self.vertices())
        for f in self.maximal_faces():
            apex_candidates &= f
            if not apex_candidates:
                return None
        return min(apex_candidates)

    def star_cone(self, apex: int) -> "SimplicialComplex":
        """Cone over this complex with a fresh apex vertex."""
        faces = set(self.faces) or {Face()}
        coned = set(faces)
        for f in faces:
            coned.add(f | {apex})
        return SimplicialComplex(coned)

    # -- subdivision ---------------------------------------------------------

    def barycentric_subdivision(self) -> "SimplicialComplex":
        """Order complex of the nonempty-face poset.

        New vertex i corresponds to vertex_names[i], a face of self.
        """
        nonempty = sorted((f for f in self.faces if f), key=lambda f: (len(f), sorted(f)))
        index = {f: i for i, f in enumerate(nonempty)}
        chains: set[Face] = {Face()} if nonempty else set()
        # DFS over strictly increasing chains in the containment order
        sups: dict[Face, list[Face]] = {f: [] for f in nonempty}
        for f in nonempty:
            for g in nonempty:
                if len(g) > len(f) and f < g:
                    sups[f].append(g)

        def grow(chain: tuple[Face, ...]):
            chains.add(Face(index[f] for f in chain))
            for g in sups[chain[-1]]:
                grow(chain + (g,))

        for f in nonempty:
            grow((f,))
        out = SimplicialComplex.__new__(SimplicialComplex)
        out.faces = frozenset(chains)
        out._vertices = None
        out._maximal = None
        out.vertex_names = {i: f for f, i in index.items()}
        return out


# ---------------------------------------------------------------------------
# non-evasiveness and collapsibility


def _canonical_key(K: SimplicialComplex):
    """Isomorphism-invariant key for small complexes, identity key otherwise.

    Vertices are split into classes by the multiset of incident face sizes;
    each class is relabelled onto a consecutive block (class order fixed by
    the profile), and the minimum mask multiset over in-class permutations
    is taken.  For n <= CANONICAL_VERTEX_LIMIT the product of class
    factorials is at most n! = 40320.
    """
    verts = K.vertices()
    n = len(verts)
    index = {v: i for i, v in enumerate(verts)}
    masks = sorted(sum(1 << index[v] for v in f) for f in K.faces)
    if n > CANONICAL_VERTEX_LIMIT:
        return (n, tuple(masks))
    profile: dict[tuple, list[int]] = {}
    for v in verts:
        sizes = tuple(sorted(len(f) for f in K.faces if v in f))
        profile.setdefault(sizes, []).append(index[v])
    classes = [profile[k] for k in sorted(profile)]
    blocks = []
    start = 0
    for c in classes:
        blocks.append(range(start, start + len(c)))
        start += len(c)
    best = None
    for parts in itertools.product(*(itertools.permutations(c) for c in classes)):
        relabel = [0] * n
        for part, block in zip(parts, blocks):
            for old, new in zip(part, block):
                relabel[old] = new
        cand = tuple(sorted(
            sum(1 << relabel[i] for i in range(n) if mask >> i & 1) for mask in masks
        ))
        if best is None or cand < best:
            best = cand
    return (n, best)


class NonevasiveSolver:
    def __init__(self):
        self.raw: dict[frozenset, bool] = {}
        self.canon: dict[object, bool] = {}

    def __call__(self, K: SimplicialComplex) -> bool:
        key = K.faces
        if key in self.raw:
            return self.raw[key]
        if not K.vertices():
            # void complex, or the bare empty face: both evasive.  The
            # latter shows up as the link of an isolated vertex and stands
            # for a family that forces every remaining question.
            self.raw[key] = False
            return False
        if K.is_simplex():
            self.raw[key] = True
            return True
        ck = _canonical_key(K)
        if ck in self.canon:
            self.raw[key] = self.canon[ck]
            return self.canon[ck]
        result = False
        for v in K.vertices():
            if self(K.deletion(v)) and self(K.link(v)):
                result = True
                break
        self.raw[key] = result
        self.canon[ck] = result
        return result


_default_nonevasive = NonevasiveSolver()
NONEVASIVE_VERTEX_CAP = 14


def is_nonevasive(K: SimplicialComplex, solver: NonevasiveSolver | None = None,
                  *, vertex_cap: int = NONEVASIVE_VERTEX_CAP) -> bool:
    """K is a nonempty simplex, or some vertex has non-evasive deletion and link.

    The recursion treats the bare empty face as evasive: it stands for the
    family {emptyset}, whose membership needs every remaining question.
    """
    if len(K.vertices()) > vertex_cap:
        raise ValueError(f"complex has {len(K.vertices())} vertices, cap is {vertex_cap}")
    return (solver or _default_nonevasive)(K)


@dataclass
class CollapseResult:
    status: str  # "collapsible" | "not_collapsible" | "unknown"
    sequence: list[tuple[frozenset, frozenset]] | None
    states_visited: int


def _free_pairs(faces: frozenset[Face]) -> list[tuple[Face, Face]]:
    maximal = [f for f in faces if not any(f < g for g in faces)]
    pairs = []
    for a in faces:
        if not a:
            continue
        sups = [mval for mval in maximal if a <= mval]
        if len(sups) == 1 and sups[0] != a:
            pairs.append((a, sups[0]))
    return pairs


def _collapse(faces: frozenset[Face], a: Face, b: Face) -> frozenset[Face]:
    return frozenset(f for f in faces if not (a <= f and f <= b))


def is_collapsible(K: SimplicialComplex, *, budget: int = 100_000) -> CollapseResult:
    """Exhaustive backtracking over elementary collapses.

    "unknown" is reported only when the budget ran out; "not_collapsible"
    means the whole search space was exhausted.
    """
    if not K.vertices():
        return CollapseResult("not_collapsible", None, 0)
    seen_failed: set[frozenset] = set()
    visited = 0
    budget_hit = False

    def to_point_sequence(faces: frozenset[Face]) -> list[tuple[Face, Face]]:
        # canonical collapse of a full simplex down to a single vertex
        seq = []
        verts = sorted({v for f in faces for v in f})
        while len(verts) > 1:
            apex = verts[0]
            top = Face(verts)
            seq.append((Face([apex]), top))
            verts = verts[1:]
        return seq

    def dfs(faces: frozenset[Face]) -> list[tuple[Face, Face]] | None:
        nonlocal visited, budget_hit
        vs = {v for f in faces for v in f}
        if len(faces) == 1 << len(vs):  # a simplex collapses to a point
            return to_point_sequence(faces)
        if faces in seen_failed:
            return None
        visited += 1
        if visited > budget:
            budget_hit = True
            return None
        pairs = _free_pairs(faces)
        # larger removed intervals first: fewer faces left, smaller subtree
        pairs.sort(key=lambda ab: -(len(ab[1]) - len(ab[0])))
        for a, b in pairs:
            rest = dfs(_collapse(faces, a, b))
            if budget_hit:
                return None
            if rest is not None:
                return [(a, b)] + rest
        seen_failed.add(faces)
        return None

    seq = dfs(K.faces)
    if seq is not None:
        return CollapseResult("collapsible", seq, visited)
    return CollapseResult("unknown" if budget_hit else "not_collapsible", None, visited)


def replay_collapses(K: SimplicialComplex, sequence: Sequence[tuple[frozenset, frozenset]]) -> SimplicialComplex:
    faces = K.faces
    for a, b in sequence:
        a, b = Face(a), Face(b)
        if a not in faces or b not in faces:
            raise ValueError("collapse pair not in current complex")
        maximal_over = [f for f in faces if a <= f and not any(f < g for g in faces)]
        if maximal_over != [b]:
            raise ValueError(f"{set(a)} is not free with top {set(b)}")
        faces = _collapse(faces, a, b)
    out = SimplicialComplex.__new__(SimplicialComplex)
    out.faces = faces
    out._vertices = None
    out._maximal = None
    out.vertex_names = {}
    return out


# ---------------------------------------------------------------------------
# exact homology


def boundary_matrix(K: SimplicialComplex, k: int) -> list[list[int]]:
    """Matrix of the boundary map C_k -> C_{k-1}, rows indexed by (k-1)-faces."""
    rows_faces = K.faces_of_dim(k - 1)
    cols_faces = K.faces_of_dim(k)
    row_index = {f: i for i, f in enumerate(rows_faces)}
    mat = [[0] * len(cols_faces) for _ in rows_faces]
    for j, f in enumerate(cols_faces):
        vs = sorted(f)
        for pos, v in enumerate(vs):
            sub = Face(vs[:pos] + vs[pos + 1:])
            mat[row_index[sub]][j] = (-1) ** pos
    return mat


def rational_betti(K: SimplicialComplex) -> list[int]:
    """Reduced Betti numbers over Q, dimensions 0..dim(K)."""
    if K.is_empty() or K.faces == frozenset({Face()}):
        return []
    d = K.dim()
    f_counts = [len(K.faces_of_dim(k)) for k in range(d + 1)]
    ranks = []
    # augmented boundary in dim 0: the all-ones row; rank 1 for nonempty K
    ranks.append(1)
    for k in range(1, d + 1):
        ranks.append(exact.rank(boundary_matrix(K, k)))
    ranks.append(0)
    betti = []
    for k in range(d + 1):
        betti.append(f_counts[k] - ranks[k] - ranks[k + 1])
    return betti


def is_q_acyclic(K: SimplicialComplex) -> bool:
    """Reduced rational homology of a point."""
    if K.is_empty() or K.faces == frozenset({Face()}):
        return False
    return all(b == 0 for b in rational_betti(K))


def mod_p_acyclic(K: SimplicialComplex, p: int) -> bool:
    """All reduced Betti numbers over GF(p) vanish."""
    if K.is_empty() or K.faces == frozenset({Face()}):
        return False
    d = K.dim()
    f_counts = [len(K.faces_of_dim(k)) for k in range(d + 1)]
    ranks = [1]
    for k in range(1, d + 1):
        ranks.append(exact.rank_mod_p(boundary_matrix(K, k), p))
    ranks.append(0)
    return all(f_counts[k] - ranks[k] - ranks[k + 1] == 0 for k in range(d + 1))


# ---------------------------------------------------------------------------
# group actions


class GroupAction:
    """A permutation group acting simplicially on a complex."""

    def __init__(self, K: SimplicialComplex, generators: Iterable[dict[int, int]]):
        self.K = K
        verts = K.vertices()
        self.domain = verts
        gens = []
        for g in generators:
            img = tuple(g.get(v, v) for v in verts)
            if sorted(img) != sorted(verts):
                raise ValueError(f"not a permutation of the vertex set: {g}")
            gens.append(img)
        self.generators = tuple(gens)
        self._pos = {v: i for i, v in enumerate(verts)}
        for g in self.generators:
            for f in K.faces:
                if self.apply_tuple(g, f) not in K.faces:
                    raise ValueError(f"generator does not preserve face {set(f)}")
        self._elements: tuple[tuple[int, ...], ...] | None = None

    def apply_tuple(self, g: tuple[int, ...], face: Face) -> Face:
        return Face(g[self._pos[v]] for v in face)

    def identity(self) -> tuple[int, ...]:
        return self.domain

    def compose(self, g: tuple[int, ...], h: tuple[int, ...]) -> tuple[int, ...]:
        # (g h)(v) = g(h(v))
        return tuple(g[self._pos[h[i]]] for i in range(len(h)))

    def elements(self) -> tuple[tuple[int, ...], ...]:
        if self._elements is None:
            seen = {self.identity()}
            frontier = [self.identity()]
            while frontier:
                cur = frontier.pop()
                for g in self.generators:
                    nxt = self.compose(g, cur)
                    if nxt not in seen:
                        if len(seen) >= CLOSURE_CAP:
                            raise ClosureCapExceeded(f"group closure exceeds {CLOSURE_CAP}")
                        seen.add(nxt)
                        frontier.append(nxt)
            self._elements = tuple(sorted(seen))
        return self._elements

    def order(self) -> int:
        return len(self.elements())

    def vertex_orbits(self) -> list[frozenset[int]]:
        seen: set[int] = set()
        orbits = []
        for v in self.domain:
            if v in seen:
                continue
            orb = {g[self._pos[v]] for g in self.elements()}
            orbits.append(frozenset(orb))
            seen |= orb
        return orbits

    def is_vertex_transitive(self) -> bool:
        return len(self.vertex_orbits()) <= 1

    def invariant_faces(self) -> list[Face]:
        out = []
        for f in self.K.faces:
            if f and all(self.apply_tuple(g, f) == f for g in self.generators):
                out.append(f)
        return sorted(out, key=lambda f: (len(f), sorted(f)))

    def face_orbit_map(self, faces: Iterable[Face]) -> dict[Face, int]:
        """Face -> orbit id under the full group."""
        ids: dict[Face, int] = {}
        next_id = 0
        for f in faces:
            if f in ids:
                continue
            orb = {self.apply_tuple(g, f) for g in self.elements()}
            for h in orb:
                ids[h] = next_id
            next_id += 1
        return ids


def parse_permutation(line: str, domain: Sequence[int]) -> dict[int, int]:
    """One-line cycle notation, e.g. "(0 1 2)(3 4)"."""
    mapping = {v: v for v in domain}
    line = line.strip()
    if line in ("", "()", "id"):
        return mapping
    depth = 0
    cycles: list[list[int]] = []
    cur: list[int] = []
    tok = ""
    for ch in line:
        if ch == "(":
            if depth:
                raise ValueError("nested parenthesis in cycle notation")
            depth = 1
            cur = []
            tok = ""
        elif ch == ")":
            if tok:
                cur.append(int(tok))
                tok = ""
            cycles.append(cur)
            depth = 0
        elif ch in " ,\t":
            if tok:
                cur.append(int(tok))
                tok = ""
        else:
            if not depth:
                raise ValueError(f"unexpected character {ch!r} outside cycles")
            tok += ch
    if depth:
        raise ValueError("unbalanced parenthesis")
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            if a not in mapping:
                raise ValueError(f"cycle entry {a} outside the domain")
            mapping[a] = b
    return mapping


def format_permutation(mapping: dict[int, int]) -> str:
    seen = set()
    cycles = []
    for v in sorted(mapping):
        if v in seen or mapping[v] == v:
            continue
        cyc = [v]
        seen.add(v)
        w = mapping[v]
        while w != v:
            cyc.append(w)
            seen.add(w)
            w = mapping[w]
        cycles.append(cyc)
    if not cycles:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


# ---------------------------------------------------------------------------
# fixed complexes, quotients, Floyd


def fixed_subcomplex(K: SimplicialComplex, action: GroupAction) -> SimplicialComplex:
    """Chains of setwise-invariant faces: the fixed complex inside sd(K)."""
    inv = action.invariant_faces()
    index = {f: i for i, f in enumerate(inv)}
    chains: set[Face] = {Face()} if inv else set()
    sups = {f: [g for g in inv if len(g) > len(f) and f < g] for f in inv}

    def grow(chain):
        chains.add(Face(index[f] for f in chain))
        for g in sups[chain[-1]]:
            grow(chain + (g,))

    for f in inv:
        grow((f,))
    if not inv:
        return SimplicialComplex.void()
    out = SimplicialComplex.__new__(SimplicialComplex)
    out.faces = frozenset(chains)
    out._vertices = None
    out._maximal = None
    out.vertex_names = {i: f for f, i in index.items()}
    return out


def _push_action(action_gens: list[dict[int, int]], sd: SimplicialComplex,
                 pos_of_name: dict[Face, int]) -> list[dict[int, int]]:
    out = []
    for g in action_gens:
        newmap = {}
        for i, name in sd.vertex_names.items():
            img = Face(g.get(v, v) for v in name)
            newmap[i] = pos_of_name[img]
        out.append(newmap)
    return out


def quotient_complex(K: SimplicialComplex, action: GroupAction) -> SimplicialComplex:
    """Orbit complex of the second barycentric subdivision.

    Two rounds of subdivision make the orbit map simplicial, so faces of the
    quotient are just orbit-label images of faces.
    """
    gens = [dict(zip(action.domain, g)) for g in action.generators]
    K1 = K.barycentric_subdivision()
    pos1 = {f: i for i, f in K1.vertex_names.items()}
    gens1 = _push_action(gens, K1, pos1)
    K2 = K1.barycentric_subdivision()
    pos2 = {f: i for i, f in K2.vertex_names.items()}
    gens2 = _push_action(gens1, K2, pos2)
    act2 = GroupAction(K2, gens2)
    vert_orbit: dict[int, int] = {}
    next_id = 0
    for v in K2.vertices():
        if v in vert_orbit:
            continue
        orb = {g[act2._pos[v]] for g in act2.elements()}
        for w in orb:
            vert_orbit[w] = next_id
        next_id += 1
    faces = {Face(vert_orbit[v] for v in f) for f in K2.faces}
    return SimplicialComplex(faces)


@dataclass
class FloydReport:
    p: int
    chi: int
    chi_fixed: int
    chi_quotient: int

    @property
    def holds(self) -> bool:
        return self.chi + (self.p - 1) * self.chi_fixed == self.p * self.chi_quotient


def floyd_check(K: SimplicialComplex, generator: dict[int, int], p: int) -> FloydReport:
    """chi(K) + (p-1) chi(K^G) = p chi(K/G) for the cyclic group <generator>."""
    if p < 2 or any(p % q == 0 for q in range(2, p)):
        raise ValueError(f"p={p} is not prime")
    action = GroupAction(K, [generator])
    if action.order() not in (1, p):
        raise ValueError(f"generator has order {action.order()}, not 1 or {p}")
    fixed = fixed_subcomplex(K, action)
    quot = quotient_complex(K, action)
    return FloydReport(p, K.euler_characteristic(), fixed.euler_characteristic(),
                       quot.euler_characteristic())


def vertex_transitive_fixed_point_check(K: SimplicialComplex, action: GroupAction) -> bool:
    """Oracle for: transitive action with a fixed point forces a simplex.

    Returns True when the implication pattern holds on this instance.
    """
    hypothesis = action.is_vertex_transitive() and not fixed_subcomplex(K, action).is_empty()
    if not hypothesis:
        return True
    return K.is_simplex()


# ---------------------------------------------------------------------------
# chain maps and Lefschetz numbers


class ChainMap:
    """Chain map induced by a simplicial vertex map f: K -> K."""

    def __init__(self, K: SimplicialComplex, vertex_map: dict[int, int]):
        self.K = K
        self.vertex_map = dict(vertex_map)
        for f in K.faces:
            img = Face(self.vertex_map.get(v, v) for v in f)
            if img not in K.faces:
                raise ValueError(f"image of face {set(f)} is not a face")
        self.matrices: list[list[list[int]]] = []
        for k in range(K.dim() + 1):
            rows = K.faces_of_dim(k)
            index = {f: i for i, f in enumerate(rows)}
            mat = [[0] * len(rows) for _ in rows]
            for j, f in enumerate(rows):
                vs = sorted(f)
                imgs = [self.vertex_map.get(v, v) for v in vs]
                if len(set(imgs)) < len(imgs):
                    continue  # degenerate: zero in the chain complex
                sign = _sort_sign(imgs)
                mat[index[Face(imgs)]][j] = sign
            self.matrices.append(mat)

    def verify_boundary_commutes(self) -> bool:
        for k in range(1, self.K.dim() + 1):
            dk = boundary_matrix(self.K, k)
            lhs = exact.matmul(dk, self.matrices[k])
            rhs = exact.matmul(self.matrices[k - 1], dk)
            if lhs != rhs:
                return False
        return True

    def chain_trace(self, k: int) -> int:
        mat = self.matrices[k]
        return sum(mat[i][i] for i in range(len(mat)))

    def homology_trace(self, k: int) -> Fraction:
        """Trace of the induced map on H_k(K; Q) (unreduced)."""
        f_k = self.matrices[k]
        n_k = len(f_k)
        if n_k == 0:
            return Fraction(0)
        if k == 0:
            kernel = [[Fraction(1 if i == j else 0) for j in range(n_k)] for i in range(n_k)]
            kernel_cols = n_k
        else:
            basis = exact.nullspace(boundary_matrix(self.K, k))
            kernel_cols = len(basis)
            if kernel_cols == 0:
                return Fraction(0)
            kernel = [[basis[j][i] for j in range(kernel_cols)] for i in range(n_k)]
        if k < self.K.dim():
            bdry = boundary_matrix(self.K, k + 1)
            _, piv = exact.rref(bdry)
            img_basis = [[Fraction(bdry[i][j]) for i in range(n_k)] for j in piv]
        else:
            img_basis = []
        # extend img_basis by kernel columns to a basis of ker; quotient trace
        chosen: list[int] = []
        span = [list(v) for v in img_basis]
        for j in range(kernel_cols):
            vec = [kernel[i][j] for i in range(n_k)]
            if _independent(span, vec):
                span.append(vec)
                chosen.append(j)
        # matrix M = [img | kernel_chosen]; solve M a = f(kernel_chosen_j)
        mcols = list(img_basis) + [[kernel[i][j] for i in range(n_k)] for j in chosen]
        trace = Fraction(0)
        for t_pos, j in enumerate(chosen):
            vec = [kernel[i][j] for i in range(n_k)]
            img = [sum(Fraction(f_k[i][l]) * vec[l] for l in range(n_k)) for i in range(n_k)]
            sol = exact.solve_linear(_transpose_to_rows(mcols, n_k), img)
            if sol is None:
                raise AssertionError("chain image left the cycle space")
            trace += sol[len(img_basis) + t_pos]
        return trace


def _transpose_to_rows(cols: list[list], n: int) -> list[list]:
    # columns given as vectors of length n -> row-major matrix n x len(cols)
    return [[col[i] for col in cols] for i in range(n)]


def _independent(span: list[list[Fraction]], vec: list[Fraction]) -> bool:
    if not span:
        return any(x != 0 for x in vec)
    rows = [list(v) for v in span] + [list(vec)]
    return exact.rank(rows) == len(span) + 1


def _sort_sign(seq: list[int]) -> int:
    sign = 1
    arr = list(seq)
    for i in range(len(arr)):
        for j in range(len(arr) - 1 - i):
            if arr[j] > arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
                sign = -sign
    return sign


def lefschetz_number(K: SimplicialComplex, vertex_map: dict[int, int]) -> Fraction:
    """Alternating sum of homology traces of the induced map."""
    cm = ChainMap(K, vertex_map)
    if not cm.verify_boundary_commutes():
        raise AssertionError("chain map does not commute with the boundary")
    total = Fraction(0)
    for k in range(K.dim() + 1):
        total += (-1) ** k * cm.homology_trace(k)
    return total


@dataclass
class HopfReport:
    chain_side: int
    homology_side: Fraction

    @property
    def holds(self) -> bool:
        return self.chain_side == self.homology_side


def hopf_trace_check(K: SimplicialComplex, vertex_map: dict[int, int]) -> HopfReport:
    cm = ChainMap(K, vertex_map)
    if not cm.verify_boundary_commutes():
        raise AssertionError("chain map does not commute with the boundary")
    chain_side = sum((-1) ** k * cm.chain_trace(k) for k in range(K.dim() + 1))
    hom_side = sum(((-1) ** k * cm.homology_trace(k) for k in range(K.dim() + 1)), Fraction(0))
    return HopfReport(chain_side, hom_side)


# ---------------------------------------------------------------------------
# named complexes


def projective_plane_rp2() -> SimplicialComplex:
    """The 6-vertex triangulation (antipodal icosahedron quotient)."""
    return SimplicialComplex.from_maximal([
        (1, 2, 4), (1, 2, 6), (1, 3, 4), (1, 3, 5), (1, 5, 6),
        (2, 3, 5), (2, 3, 6), (2, 4, 5), (3, 4, 6), (4, 5, 6),
    ])


def dunce_hat() -> SimplicialComplex:
    """8-vertex dunce hat: contractible but without any free face.

    Built from a 9-gon disk whose boundary wraps three times around the
    triangle 1-2-3 (two forward runs and one reversed).
    """
    return SimplicialComplex.from_maximal([
        (1, 2, 4), (2, 3, 4), (1, 3, 5), (1, 2, 5), (2, 3, 6), (1, 3, 6),
        (1, 3, 7), (2, 3, 7), (1, 2, 8),
        (3, 4, 5), (2, 5, 6), (1, 6, 7), (2, 7, 8), (1, 4, 8),
        (4, 5, 6), (4, 6, 7), (4, 7, 8),
    ])


# ---------------------------------------------------------------------------
# text format


def complex_to_text(K: SimplicialComplex) -> str:
    verts = K.vertices()
    lines = [f"complex m={len(verts)}"]
    index = {v: i for i, v in enumerate(verts)}
    for f in sorted(K.faces, key=lambda f: (len(f), sorted(f))):
        if not f:
            lines.append("-")
        else:
            lines.append(" ".join(str(index[v]) for v in sorted(f)))
    return "\n".join(lines) + "\n"


def complex_from_text(text: str) -> SimplicialComplex:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("complex"):
        raise ValueError("expected 'complex m=<int>' header")
    faces = []
    for ln in lines[1:]:
        if ln == "-":
            faces.append([])
        else:
            faces.append([int(t) for t in ln.split()])
    return SimplicialComplex(faces)
