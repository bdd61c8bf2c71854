"""Set systems over a finite ground set and their query complexity.

A family is stored as the set of member subsets, each subset encoded as an
m-bit mask.  The central quantity is the argument complexity c(F): the number
of membership questions "is element e in the hidden set A?" that an optimal
decision tree needs in the worst case.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator

MAX_GROUND = 24
EXACT_DEFAULT_LIMIT = 15  # exact c(F) beyond this needs an explicit cap raise
DEFAULT_STATE_CAP = 14_348_907  # 3**15


class BudgetExceeded(RuntimeError):
    """The exact search hit its state cap before finishing."""


class MalformedTree(ValueError):
    pass


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class SetFamily:
    """A family F of subsets of {0,...,m-1}."""

    m: int
    members: frozenset[int]

    def __post_init__(self):
        if not (0 <= self.m <= MAX_GROUND):
            raise ValueError(f"ground set size {self.m} out of range (0..{MAX_GROUND})")
        full = (1 << self.m) - 1
        for a in self.members:
            if a & ~full:
                raise ValueError(f"member {bin(a)} uses elements outside the ground set")

    @staticmethod
    def from_sets(m: int, sets: Iterable[Iterable[int]]) -> "SetFamily":
        masks = set()
        for s in sets:
            mask = 0
            for e in s:
                mask |= 1 << e
            masks.add(mask)
        return SetFamily(m, frozenset(masks))

    @staticmethod
    def from_masks(m: int, masks: Iterable[int]) -> "SetFamily":
        return SetFamily(m, frozenset(masks))

    @staticmethod
    def empty(m: int) -> "SetFamily":
        return SetFamily(m, frozenset())

    @staticmethod
    def full(m: int) -> "SetFamily":
        return SetFamily(m, frozenset(range(1 << m)))

    @staticmethod
    def empty_set_only(m: int) -> "SetFamily":
        return SetFamily(m, frozenset({0}))

    def __contains__(self, mask: int) -> bool:
        return mask in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def is_trivial(self) -> bool:
        return len(self.members) == 0 or len(self.members) == 1 << self.m

    def complement(self) -> "SetFamily":
        all_masks = range(1 << self.m)
        return SetFamily(self.m, frozenset(a for a in all_masks if a not in self.members))

    def restrict(self, e: int, answer: bool) -> "SetFamily":
        """Family on m-1 elements after learning "e in A" = answer.

        Element indices above e shift down by one.
        """
        if not 0 <= e < self.m:
            raise ValueError(f"element {e} not in ground set")
        bit = 1 << e
        low = bit - 1
        out = set()
        for a in self.members:
            if bool(a & bit) != answer:
                continue
            out.add((a & low) | ((a >> 1) & ~low))
        return SetFamily(self.m - 1, frozenset(out))

    def generating_polynomial(self) -> list[int]:
        """Coefficients of p_F(t) = sum over members of t^|A|, degree order."""
        coeffs = [0] * (self.m + 1)
        for a in self.members:
            coeffs[_popcount(a)] += 1
        return coeffs

    def euler_count(self) -> int:
        """p_F(-1): members of even size minus members of odd size."""
        s = 0
        for a in self.members:
            s += 1 if _popcount(a) % 2 == 0 else -1
        return s

    def to_text(self) -> str:
        lines = [f"m={self.m}"]
        for a in sorted(self.members):
            if a == 0:
                lines.append("-")
            else:
                lines.append(" ".join(str(e) for e in range(self.m) if a >> e & 1))
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str) -> "SetFamily":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("m="):
            raise ValueError("expected 'm=<int>' header")
        m = int(lines[0][2:])
        masks = set()
        for ln in lines[1:]:
            if ln == "-":
                masks.add(0)
                continue
            mask = 0
            for tok in ln.split():
                mask |= 1 << int(tok)
            masks.add(mask)
        return SetFamily(m, frozenset(masks))


# ---------------------------------------------------------------------------
# decision trees


@dataclass(frozen=True)
class Leaf:
    value: bool

    def is_leaf(self) -> bool:
        return True


@dataclass(frozen=True)
class Node:
    element: int
    no: "Leaf | Node"
    yes: "Leaf | Node"

    def is_leaf(self) -> bool:
        return False


DecisionTree = Leaf | Node


def tree_depth(tree: DecisionTree) -> int:
    if isinstance(tree, Leaf):
        return 0
    return 1 + max(tree_depth(tree.no), tree_depth(tree.yes))


def evaluate_tree(tree: DecisionTree, mask: int) -> bool:
    seen = 0
    node = tree
    while isinstance(node, Node):
        bit = 1 << node.element
        if seen & bit:
            raise MalformedTree(f"element {node.element} queried twice on one path")
        seen |= bit
        node = node.yes if mask & bit else node.no
    return node.value


def tree_to_text(tree: DecisionTree) -> str:
    if isinstance(tree, Leaf):
        return "Y" if tree.value else "N"
    return f"(q{tree.element} {tree_to_text(tree.no)} {tree_to_text(tree.yes)})"


def tree_from_text(text: str) -> DecisionTree:
    toks = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def parse() -> DecisionTree:
        nonlocal pos
        tok = toks[pos]
        pos += 1
        if tok == "Y":
            return Leaf(True)
        if tok == "N":
            return Leaf(False)
        if tok != "(":
            raise MalformedTree(f"unexpected token {tok!r}")
        qtok = toks[pos]
        pos += 1
        if not qtok.startswith("q"):
            raise MalformedTree(f"expected query token, got {qtok!r}")
        element = int(qtok[1:])
        no = parse()
        yes = parse()
        if toks[pos] != ")":
            raise MalformedTree("missing ')'")
        pos += 1
        return Node(element, no, yes)

    tree = parse()
    if pos != len(toks):
        raise MalformedTree("trailing tokens")
    return tree


@dataclass(frozen=True)
class IntervalCell:
    """One leaf of a decision tree: all sets A with yes_mask <= A <= ~no_mask."""

    yes_mask: int
    no_mask: int
    label: bool

    def contains(self, mask: int) -> bool:
        return (mask & self.yes_mask) == self.yes_mask and (mask & self.no_mask) == 0

    def polynomial(self, m: int) -> list[int]:
        """Coefficients of t^k_Y (1+t)^(m - k_Y - k_N)."""
        ky = _popcount(self.yes_mask)
        kn = _popcount(self.no_mask)
        free = m - ky - kn
        coeffs = [0] * (m + 1)
        for j in range(free + 1):
            coeffs[ky + j] += _binom(free, j)
        return coeffs


def _binom(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def interval_partition(tree: DecisionTree, m: int) -> list[IntervalCell]:
    cells: list[IntervalCell] = []

    def walk(node: DecisionTree, yes: int, no: int):
        if isinstance(node, Leaf):
            cells.append(IntervalCell(yes, no, node.value))
            return
        bit = 1 << node.element
        if (yes | no) & bit:
            raise MalformedTree(f"element {node.element} queried twice on one path")
        walk(node.no, yes, no | bit)
        walk(node.yes, yes | bit, no)

    walk(tree, 0, 0)
    return cells


# ---------------------------------------------------------------------------
# exact argument complexity


class _Search:
    """Minimax over ternary assignments (answered-yes / answered-no / open).

    States are memoized on the (yes, no) mask pair.  Two exact shortcuts keep
    the search small: a state whose generating polynomial is not divisible by
    (1+t) is evasive on its open elements, and more generally c is at least
    the open count minus the multiplicity of the root -1.
    """

    def __init__(self, fam: SetFamily, state_cap: int):
        self.m = fam.m
        self.full = (1 << fam.m) - 1
        self.members = tuple(sorted(fam.members))
        self.cap = state_cap
        self.memo: dict[tuple[int, int], int] = {}

    def hist(self, members: tuple[int, ...], free: int) -> list[int]:
        h = [0] * (_popcount(free) + 1)
        for a in members:
            h[_popcount(a & free)] += 1
        return h

    @staticmethod
    def one_plus_t_multiplicity(coeffs: list[int]) -> int:
        # repeated synthetic division by (t + 1); stop at nonzero remainder
        mult = 0
        cur = list(coeffs)
        while True:
            # evaluate at -1 via Horner while building the quotient
            quot = []
            acc = 0
            for c in reversed(cur):
                acc = c - acc
                quot.append(acc)
            rem = quot.pop()  # p(-1) up to sign bookkeeping below
            # quotient digits came out high-to-low with the remainder last
            if rem != 0:
                return mult
            quot.reverse()
            cur = quot
            mult += 1
            if not cur or all(c == 0 for c in cur):
                return mult

    def value(self, yes: int, no: int, members: tuple[int, ...]) -> int:
        key = (yes, no)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if len(self.memo) >= self.cap:
            raise BudgetExceeded(f"state cap {self.cap} reached")
        free = self.full & ~(yes | no)
        fc = _popcount(free)
        cnt = len(members)
        if cnt == 0 or cnt == 1 << fc:
            self.memo[key] = 0
            return 0
        hist = self.hist(members, free)
        mult = self.one_plus_t_multiplicity(hist)
        if mult == 0:
            # alternating count is nonzero, so this restriction is evasive
            self.memo[key] = fc
            return fc
        lower = max(1, fc - mult)
        best = fc
        order = sorted(
            (e for e in range(self.m) if free >> e & 1),
            key=lambda e: abs(2 * sum(1 for a in members if a >> e & 1) - cnt),
        )
        for e in order:
            if best == lower:
                break
            bit = 1 << e
            yes_members = tuple(a for a in members if a & bit)
            no_members = tuple(a for a in members if not a & bit)
            a_val = self.value(yes | bit, no, yes_members)
            if a_val + 1 >= best:
                continue
            b_val = self.value(yes, no | bit, no_members)
            cand = 1 + max(a_val, b_val)
            if cand < best:
                best = cand
        self.memo[key] = best
        return best

    def split(self, members: tuple[int, ...], e: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        bit = 1 << e
        return (tuple(a for a in members if a & bit), tuple(a for a in members if not a & bit))


def argument_complexity(fam: SetFamily, *, state_cap: int | None = None) -> int:
    """Worst-case number of membership questions an optimal tree needs."""
    if state_cap is None:
        if fam.m > EXACT_DEFAULT_LIMIT:
            raise BudgetExceeded(
                f"m={fam.m} exceeds the default exact range {EXACT_DEFAULT_LIMIT}; pass state_cap to force"
            )
        state_cap = DEFAULT_STATE_CAP
    search = _Search(fam, state_cap)
    return search.value(0, 0, search.members)


def is_evasive(fam: SetFamily, *, state_cap: int | None = None) -> bool:
    return argument_complexity(fam, state_cap=state_cap) == fam.m


def optimal_tree(fam: SetFamily, *, state_cap: int | None = None) -> DecisionTree:
    """A depth-optimal tree.  Tie break: lowest element index first."""
    if state_cap is None:
        if fam.m > EXACT_DEFAULT_LIMIT:
            raise BudgetExceeded(
                f"m={fam.m} exceeds the default exact range {EXACT_DEFAULT_LIMIT}; pass state_cap to force"
            )
        state_cap = DEFAULT_STATE_CAP
    search = _Search(fam, state_cap)

    def build(yes: int, no: int, members: tuple[int, ...]) -> DecisionTree:
        free = search.full & ~(yes | no)
        fc = _popcount(free)
        cnt = len(members)
        if cnt == 0:
            return Leaf(False)
        if cnt == 1 << fc:
            return Leaf(True)
        c = search.value(yes, no, members)
        for e in range(search.m):
            if not free >> e & 1:
                continue
            bit = 1 << e
            yes_members, no_members = search.split(members, e)
            a_val = search.value(yes | bit, no, yes_members)
            b_val = search.value(yes, no | bit, no_members)
            if 1 + max(a_val, b_val) == c:
                return Node(e, build(yes, no | bit, no_members), build(yes | bit, no, yes_members))
        raise AssertionError("no element achieves the memoized minimum")

    return build(0, 0, search.members)


def divisibility_certificate(fam: SetFamily, *, state_cap: int | None = None) -> tuple[int, list[int]]:
    """Exact division of p_F(t) by (1+t)^(m - c(F)).

    Returns (c, quotient coefficients).  A division failure would contradict
    the interval-partition identity, so it raises.
    """
    c = argument_complexity(fam, state_cap=state_cap)
    power = fam.m - c
    cur = fam.generating_polynomial()
    for _ in range(power):
        quot = []
        acc = 0
        for co in reversed(cur):
            acc = co - acc
            quot.append(acc)
        rem = quot.pop()
        if rem != 0:
            raise AssertionError(f"(1+t)^{power} does not divide p_F; got remainder {rem}")
        quot.reverse()
        cur = quot
    return c, cur
