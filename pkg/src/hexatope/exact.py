"""Exact rational linear algebra and a small simplex solver.

Everything here works over fractions.Fraction so results are certificates,
not approximations.  Matrices are lists of lists, row major.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def _as_fraction_rows(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form. Returns (matrix, pivot column indices)."""
    mat = _as_fraction_rows(rows)
    if not mat:
        return mat, []
    nrows, ncols = len(mat), len(mat[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot = next((i for i in range(r, nrows) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    return mat, pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows or not rows[0]:
        return 0
    return len(rref(rows)[1])


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    """Row rank of an integer matrix over GF(p)."""
    mat = [[x % p for x in row] for row in rows]
    if not mat or not mat[0]:
        return 0
    nrows, ncols = len(mat), len(mat[0])
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot = next((i for i in range(r, nrows) if mat[i][c] % p), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = pow(mat[r][c], p - 2, p)
        mat[r] = [(x * inv) % p for x in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[r])]
        r += 1
    return r


def solve_linear(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Solve a @ x = b exactly.  Returns one solution or None if inconsistent.

    For underdetermined systems free variables are set to zero.
    """
    mat = _as_fraction_rows(a)
    rhs = [Fraction(x) for x in b]
    if not mat:
        return [] if all(x == 0 for x in rhs) else None
    ncols = len(mat[0])
    aug = [row + [v] for row, v in zip(mat, rhs)]
    red, pivots = rref(aug)
    if ncols in pivots:  # pivot in the rhs column
        return None
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = red[r][ncols]
    return x


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[Fraction]]:
    if not a or not b:
        return []
    bn = len(b[0])
    return [
        [sum((Fraction(x) * Fraction(b[k][j]) for k, x in enumerate(row)), Fraction(0)) for j in range(bn)]
        for row in a
    ]


def matvec(a: Sequence[Sequence], v: Sequence) -> list[Fraction]:
    return [sum((Fraction(x) * Fraction(y) for x, y in zip(row, v)), Fraction(0)) for row in a]


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]


def invert(a: Sequence[Sequence]) -> list[list[Fraction]] | None:
    n = len(a)
    aug = [list(map(Fraction, row)) + ident_row for row, ident_row in zip(a, identity(n))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in red[:n]]


def nullspace(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of the right kernel."""
    if not rows or not rows[0]:
        return []
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


class SimplexError(RuntimeError):
    pass


def simplex_max(c: Sequence, a: Sequence[Sequence], b: Sequence) -> tuple[Fraction, list[Fraction], list[Fraction]]:
    """Maximize c.x subject to a @ x <= b, x >= 0, with all b >= 0.

    Exact tableau simplex with Bland's rule.  Returns (value, x, y) where y
    is the optimal dual solution read off the slack columns; by weak duality
    the pair certifies optimality.
    """
    m, n = len(a), len(c)
    if any(Fraction(x) < 0 for x in b):
        raise SimplexError("needs b >= 0 for the trivial starting basis")
    # tableau rows: [A | I | b], objective row holds reduced costs
    tab = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(m)] + [Fraction(b[i])]
           for i, row in enumerate(a)]
    obj = [-Fraction(x) for x in c] + [Fraction(0)] * (m + 1)
    basis = [n + i for i in range(m)]
    while True:
        enter = next((j for j in range(n + m) if obj[j] < 0), None)
        if enter is None:
            break
        best_ratio, leave = None, None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][-1] / tab[i][enter]
                if best_ratio is None or ratio < best_ratio or (ratio == best_ratio and basis[i] < basis[leave]):
                    best_ratio, leave = ratio, i
        if leave is None:
            raise SimplexError("unbounded")
        pv = tab[leave][enter]
        tab[leave] = [x / pv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [p - f * q for p, q in zip(tab[i], tab[leave])]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [p - f * q for p, q in zip(obj, tab[leave])]
        basis[leave] = enter
    x = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = tab[i][-1]
    y = [obj[n + i] for i in range(m)]
    value = sum((Fraction(ci) * xi for ci, xi in zip(c, x)), Fraction(0))
    return value, x, y
