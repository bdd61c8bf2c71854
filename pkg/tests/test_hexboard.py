import itertools
import random
from fractions import Fraction

import pytest

from hexatope.hexboard import (
    BLACK,
    WHITE,
    Coloring2D,
    DBoard,
    DColoring,
    HexBoard2D,
    UncoloredVertex,
    chain_walk,
    coloring_from_text,
    coloring_to_text,
    dcoloring_from_text,
    dcoloring_to_text,
    delta0_chain,
    full_simplices,
    simplex_of_point,
    simplex_volume,
    triangulation_check,
    winner_2d,
    winner_ddim,
)


def coloring_from_bits(board, bits):
    rows = [
        "".join(WHITE if bits >> (i * board.cols + j) & 1 else BLACK
                for j in range(board.cols))
        for i in range(board.rows)
    ]
    return Coloring2D(board, rows)


# -- boards and colorings -------------------------------------------------------


def test_board_validation():
    with pytest.raises(ValueError):
        HexBoard2D(0, 3)
    with pytest.raises(ValueError):
        Coloring2D(HexBoard2D(2, 2), ["WW"])
    with pytest.raises(ValueError):
        Coloring2D(HexBoard2D(2, 2), ["WW", "WX"])


def test_stencil_symmetric():
    board = HexBoard2D(4, 5)
    for t in board.tiles():
        for u in board.neighbors(*t):
            assert t in board.neighbors(*u)


def test_coloring_updates():
    board = HexBoard2D(2, 2)
    col = Coloring2D.blank(board)
    assert not col.is_full() and len(col.grey_tiles()) == 4
    col = col.with_tile(0, 1, WHITE).with_tile(1, 0, BLACK)
    assert col.color(0, 1) == WHITE and col.color(1, 0) == BLACK
    with pytest.raises(ValueError):
        col.with_tile(5, 5, WHITE)


def test_hex_text_roundtrip():
    board = HexBoard2D(2, 3)
    col = Coloring2D(board, ["WB.", "BWW"])
    text = coloring_to_text(col)
    assert text.splitlines()[0] == "hex 2 3"
    assert coloring_from_text(text) == col
    with pytest.raises(ValueError):
        coloring_from_text("hexx 2 3\nWB.\nBWW\n")
    with pytest.raises(ValueError):
        coloring_from_text("hex 3 3\nWBW\nBWW\n")


def test_dboard_kappa():
    b = DBoard(2, 3)
    assert b.kappa((-1, -1, -1)) == 1
    assert b.kappa((0, -1, 3)) == 2
    assert b.kappa((3, 0, 0)) == 1
    assert b.kappa((0, 3, 3)) == 2
    assert b.kappa((1, 2, 3)) == 3
    with pytest.raises(ValueError):
        b.kappa((0, 0, 0))


def test_dboard_adjacency():
    b = DBoard(2, 2)
    assert b.adjacent((0, 0), (1, 1))
    assert b.adjacent((0, 0), (0, 1))
    assert b.adjacent((1, 1), (0, 0))
    assert not b.adjacent((0, 1), (1, 0))
    assert not b.adjacent((0, 0), (0, 0))
    assert not b.adjacent((0, 0), (2, 1))


def test_dcoloring_errors():
    b = DBoard(1, 2)
    partial = DColoring(b, {(0, 0): 1})
    with pytest.raises(UncoloredVertex):
        winner_ddim(b, partial)
    with pytest.raises(ValueError):
        DColoring(b, {v: 9 for v in b.interior()}).color((0, 0))
    with pytest.raises(ValueError):
        DColoring(b, {}).color((7, 7))


def test_dhex_text_roundtrip():
    b = DBoard(1, 2)
    col = DColoring(b, {(0, 0): 1, (0, 1): 2, (1, 0): 1, (1, 1): 2})
    text = dcoloring_to_text(col)
    assert text.splitlines()[0] == "dhex 1 2"
    col2 = dcoloring_from_text(text)
    assert all(col2.color(v) == col.color(v) for v in b.interior())
    with pytest.raises(ValueError):
        dcoloring_from_text("dhex 1 2\n0 0 : 1\n")  # missing vertices


# -- triangulation geometry -----------------------------------------------------


def test_full_simplex_census():
    for sizes in [(1, 1), (2, 2), (1,), (1, 1, 1), (2, 1)]:
        d = len(sizes)
        fact = 1
        for k in range(2, d + 1):
            fact *= k
        expect = fact
        for s in sizes:
            expect *= s + 2
        sims = list(full_simplices(sizes))
        assert len(sims) == expect
        assert len(set(map(frozenset, sims))) == expect
        board = DBoard(sizes)
        for chain in sims[:50]:
            for u, v in itertools.combinations(chain, 2):
                assert board.adjacent(u, v)


def test_simplex_volume_unimodular():
    for chain in full_simplices((1, 2)):
        assert simplex_volume(chain) == Fraction(1, 2)


def test_simplex_of_point_examples():
    b = DBoard(1, 2)
    assert simplex_of_point(b, (1, 1)) == frozenset({(1, 1)})
    assert simplex_of_point(b, (Fraction(1, 2), Fraction(1, 4))) == frozenset(
        {(0, 0), (1, 0), (1, 1)})
    # barycenter of the starting simplex returns all of its vertices
    d0 = delta0_chain(b)
    bary = tuple(Fraction(sum(v[i] for v in d0), len(d0)) for i in range(2))
    assert simplex_of_point(b, bary) == frozenset(d0)
    with pytest.raises(ValueError):
        simplex_of_point(b, (5, 0))


def test_simplex_of_point_random_dimension_count():
    rng = random.Random(2)
    b = DBoard(2, 3)
    for _ in range(60):
        x = tuple(Fraction(rng.randint(-8, 24), 8) for _ in range(3))
        verts = simplex_of_point(b, x)
        assert 1 <= len(verts) <= 4


def test_triangulation_check():
    assert triangulation_check(1, 2)
    assert triangulation_check(2, 2)
    assert triangulation_check(1, 3)
    assert triangulation_check(3, 1)


# -- winner detection -----------------------------------------------------------


def test_delta0_starting_facet_completely_colored():
    for d in (2, 3, 4):
        b = DBoard(1, d)
        chain = delta0_chain(b)
        colors = sorted(b.kappa(v) for v in chain[:-1])
        assert colors == list(range(1, d + 1))
        assert chain[-1] == (0,) * d


def test_monochromatic_wins():
    for d in (2, 3):
        b = DBoard(1, d)
        for c in range(1, d + 1):
            w = winner_ddim(b, DColoring(b, {v: c for v in b.interior()}))
            assert w.color == c
            assert all(v[c - 1] in range(-1, 3) for v in w.path)


def test_winner_2d_trivial():
    board = HexBoard2D(3, 3)
    res = winner_2d(board, Coloring2D(board, ["WWW"] * 3))
    assert res.winner == WHITE
    assert res.path[0][1] == 0 and res.path[-1][1] == 2
    res = winner_2d(board, Coloring2D(board, ["BBB"] * 3))
    assert res.winner == BLACK
    assert res.path[0][0] == 2 and res.path[-1][0] == 0


def test_winner_2d_requires_full():
    board = HexBoard2D(2, 2)
    with pytest.raises(ValueError):
        winner_2d(board, Coloring2D(board, ["W.", "BW"]))
    with pytest.raises(ValueError):
        winner_2d(HexBoard2D(3, 3), Coloring2D(board, ["WW", "BB"]))


def test_exhaustive_3x3():
    # every coloring decided, walk and connectivity agree (asserted inside)
    board = HexBoard2D(3, 3)
    wins = {WHITE: 0, BLACK: 0}
    for bits in range(512):
        res = winner_2d(board, coloring_from_bits(board, bits))
        wins[res.winner] += 1
    # color swap + transpose is a bijection between the two win sets
    assert wins == {WHITE: 256, BLACK: 256}


def test_exhaustive_2x3_rectangle():
    board = HexBoard2D(2, 3)
    wins = {WHITE: 0, BLACK: 0}
    for bits in range(64):
        res = winner_2d(board, coloring_from_bits(board, bits))
        wins[res.winner] += 1
    assert wins[WHITE] + wins[BLACK] == 64
    assert wins[BLACK] > wins[WHITE]  # two rows are quicker to bridge


def test_dual_correspondence_h22():
    board = HexBoard2D(3, 3)
    dual = DBoard(2, 2)
    for bits in range(512):
        col = coloring_from_bits(board, bits)
        r2 = winner_2d(board, col)
        dmap = {
            (j, 2 - i): (1 if col.color(i, j) == WHITE else 2)
            for i in range(3) for j in range(3)
        }
        rd = winner_ddim(dual, DColoring(dual, dmap))
        assert (rd.color == 1) == (r2.winner == WHITE)


def test_ddim_random_h13():
    b = DBoard(1, 3)
    interior = list(b.interior())
    rng = random.Random(6)
    for _ in range(300):
        assign = {v: rng.randint(1, 3) for v in interior}
        w = winner_ddim(b, DColoring(b, assign))
        assert 1 <= w.color <= 3
        assert w.path[0][w.color - 1] == -1
        assert w.path[-1][w.color - 1] == 2
        # terminal facet inside the winning hyperplane
        assert all(v[w.color - 1] == 2 for v in w.terminal_facet)


def test_lazy_coloring_source():
    b = DBoard(3, 2)
    interior = list(b.interior())
    rng = random.Random(9)
    assign = {v: rng.randint(1, 2) for v in interior}
    calls = []

    def probe(v):
        calls.append(v)
        return assign[v]

    w_lazy = chain_walk(b, DColoring(b, probe))
    w_dict = winner_ddim(b, DColoring(b, assign))
    assert w_lazy.color == w_dict.color
    assert len(calls) == len(set(calls)) <= len(interior)


def test_chain_is_connected_simplices():
    b = DBoard(2, 2)
    rng = random.Random(14)
    assign = {v: rng.randint(1, 2) for v in b.interior()}
    w = winner_ddim(b, DColoring(b, assign))
    for s, t in zip(w.chain, w.chain[1:]):
        shared = set(s) & set(t)
        assert len(shared) == len(s) - 1  # consecutive simplices share a facet
