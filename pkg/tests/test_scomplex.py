import itertools
import random

import pytest

from hexatope import scomplex as sc
from hexatope.scomplex import (
    ChainMap,
    ClosureCapExceeded,
    GroupAction,
    NotAComplex,
    SimplicialComplex,
    complex_from_text,
    complex_to_text,
    dunce_hat,
    fixed_subcomplex,
    floyd_check,
    format_permutation,
    hopf_trace_check,
    is_collapsible,
    is_nonevasive,
    is_q_acyclic,
    lefschetz_number,
    mod_p_acyclic,
    parse_permutation,
    projective_plane_rp2,
    quotient_complex,
    rational_betti,
    replay_collapses,
    vertex_transitive_fixed_point_check,
)
from hexatope.setfam import SetFamily, argument_complexity


def random_complex(rng, nmax=6, tries=8, kmax=3):
    n = rng.randint(1, nmax)
    faces = set()
    for _ in range(rng.randint(1, tries)):
        k = rng.randint(1, min(kmax, n))
        f = tuple(sorted(rng.sample(range(n), k)))
        for j in range(1, len(f) + 1):
            faces.update(itertools.combinations(f, j))
    return SimplicialComplex(list(faces))


def hollow_triangle():
    return SimplicialComplex.from_maximal([(0, 1), (1, 2), (0, 2)])


# -- construction and basic structure ---------------------------------------


def test_missing_subface_rejected():
    with pytest.raises(NotAComplex):
        SimplicialComplex([[0], [1], [0, 1, 2]])


def test_nondownward_family_rejected():
    # members of the cyclic evasiveness family are not closed under subsets
    with pytest.raises(NotAComplex):
        SimplicialComplex([[0, 3], [0, 4]])


def test_f_vectors_and_euler():
    rp2 = projective_plane_rp2()
    assert rp2.f_vector() == [6, 15, 10]
    assert rp2.euler_characteristic() == 6 - 15 + 10 == 1
    dh = dunce_hat()
    assert dh.f_vector() == [8, 24, 17]
    assert dh.euler_characteristic() == 1
    assert SimplicialComplex.simplex(3).euler_characteristic() == 1
    assert hollow_triangle().euler_characteristic() == 0
    assert SimplicialComplex.void().euler_characteristic() == 0


def test_simplex_recognition():
    assert SimplicialComplex.simplex(2).is_simplex()
    assert SimplicialComplex.simplex(-1).is_simplex()  # bare empty face
    assert not SimplicialComplex.void().is_simplex()
    assert not hollow_triangle().is_simplex()


def test_link_and_deletion():
    s2 = SimplicialComplex.simplex(2)
    assert s2.link(0).faces == SimplicialComplex.from_maximal([(1, 2)]).faces
    ht = hollow_triangle()
    assert ht.link(0).faces == SimplicialComplex([[1], [2]]).faces
    assert ht.deletion(0).faces == SimplicialComplex.from_maximal([(1, 2)]).faces
    with pytest.raises(ValueError):
        ht.link(9)


def test_rp2_links_are_pentagons():
    rp2 = projective_plane_rp2()
    for v in rp2.vertices():
        lk = rp2.link(v)
        assert lk.f_vector() == [5, 5]
        assert rational_betti(lk) == [0, 1]


def test_is_cone():
    assert SimplicialComplex.simplex(2).is_cone() in (0, 1, 2)
    assert hollow_triangle().is_cone() is None
    star = SimplicialComplex.from_maximal([(0, 1), (0, 2), (0, 3)])
    assert star.is_cone() == 0


# -- homology ----------------------------------------------------------------


def test_betti_known_spaces():
    assert rational_betti(SimplicialComplex.simplex(3)) == [0, 0, 0, 0]
    assert rational_betti(hollow_triangle()) == [0, 1]
    sphere = SimplicialComplex.from_maximal(
        [f for f in itertools.combinations(range(4), 3)]
    )
    assert rational_betti(sphere) == [0, 0, 1]
    two_points = SimplicialComplex([[0], [1]])
    assert rational_betti(two_points) == [1]
    assert rational_betti(projective_plane_rp2()) == [0, 0, 0]
    assert rational_betti(dunce_hat()) == [0, 0, 0]


def test_mod_p_acyclicity():
    rp2 = projective_plane_rp2()
    assert mod_p_acyclic(SimplicialComplex.simplex(2), 2)
    assert not mod_p_acyclic(rp2, 2)
    assert mod_p_acyclic(rp2, 3)
    assert mod_p_acyclic(rp2, 5)
    assert mod_p_acyclic(dunce_hat(), 2)
    assert not mod_p_acyclic(hollow_triangle(), 2)


def test_betti_against_euler():
    # alternating sum of reduced Betti numbers equals chi - 1
    rng = random.Random(5)
    for _ in range(40):
        K = random_complex(rng)
        betti = rational_betti(K)
        alt = sum((-1) ** i * b for i, b in enumerate(betti))
        assert alt == K.euler_characteristic() - 1


# -- non-evasiveness ----------------------------------------------------------


def test_nonevasive_base_cases():
    assert is_nonevasive(SimplicialComplex.simplex(3))
    assert is_nonevasive(SimplicialComplex([[0]]))
    assert not is_nonevasive(SimplicialComplex.void())
    # the bare empty face arises as the link of an isolated vertex and must
    # count as evasive, otherwise two isolated points would pass
    assert not is_nonevasive(SimplicialComplex.simplex(-1))
    assert not is_nonevasive(SimplicialComplex([[0], [1]]))
    assert not is_nonevasive(hollow_triangle())


def test_nonevasive_matches_query_complexity():
    # cross-module: non-evasive iff fewer questions than ground elements
    rng = random.Random(19)
    solver = sc.NonevasiveSolver()
    for _ in range(120):
        K = random_complex(rng)
        fam = K.to_setfamily()
        assert is_nonevasive(K, solver) == (argument_complexity(fam) < fam.m)


def test_nonevasive_vertex_cap():
    K = SimplicialComplex([[v] for v in range(15)])
    with pytest.raises(ValueError):
        is_nonevasive(K)
    assert not is_nonevasive(K, vertex_cap=15)


def test_canonical_key_isomorphism_invariant():
    rng = random.Random(3)
    for _ in range(100):
        K = random_complex(rng)
        vs = K.vertices()
        img = list(vs)
        rng.shuffle(img)
        perm = dict(zip(vs, img))
        K2 = SimplicialComplex([[perm[v] for v in f] for f in K.faces if f])
        assert sc._canonical_key(K) == sc._canonical_key(K2)


# -- collapsibility ------------------------------------------------------------


def test_simplex_collapses_to_point():
    res = is_collapsible(SimplicialComplex.simplex(3))
    assert res.status == "collapsible"
    end = replay_collapses(SimplicialComplex.simplex(3), res.sequence)
    assert end.f_vector() == [1]


def test_dunce_hat_unavoidable():
    dh = dunce_hat()
    assert is_q_acyclic(dh) and dh.euler_characteristic() == 1
    res = is_collapsible(dh, budget=10_000)
    assert res.status == "not_collapsible"  # exhaustive: no free pair exists
    assert sc._free_pairs(dh.faces) == []
    assert not is_nonevasive(dh)


def test_rp2_not_collapsible():
    res = is_collapsible(projective_plane_rp2(), budget=10_000)
    assert res.status == "not_collapsible"


def test_budget_exhaustion_reports_unknown():
    path = SimplicialComplex.from_maximal([(0, 1), (1, 2)])
    res = is_collapsible(path, budget=0)
    assert res.status == "unknown"
    assert res.sequence is None
    assert is_collapsible(path).status == "collapsible"


def test_replay_rejects_bad_sequence():
    ht = hollow_triangle()
    with pytest.raises(ValueError):
        replay_collapses(ht, [(frozenset([0]), frozenset([0, 1]))])


def test_implication_chain():
    # cone => non-evasive => collapsible => Q-acyclic with chi = 1
    rng = random.Random(11)
    solver = sc.NonevasiveSolver()
    seen_cone = seen_ne = seen_col = 0
    for _ in range(120):
        K = random_complex(rng, nmax=7, tries=9, kmax=4)
        if K.is_cone() is not None:
            seen_cone += 1
            assert is_nonevasive(K, solver)
        if is_nonevasive(K, solver):
            seen_ne += 1
            res = is_collapsible(K, budget=50_000)
            assert res.status == "collapsible"
            assert replay_collapses(K, res.sequence).f_vector() == [1]
        if is_collapsible(K, budget=50_000).status == "collapsible":
            seen_col += 1
            assert is_q_acyclic(K)
            assert K.euler_characteristic() == 1
    assert seen_cone > 20 and seen_ne >= seen_cone and seen_col >= seen_ne


# -- subdivision ----------------------------------------------------------------


def test_subdivision_shapes():
    assert SimplicialComplex.simplex(1).barycentric_subdivision().f_vector() == [3, 2]
    assert hollow_triangle().barycentric_subdivision().f_vector() == [6, 6]
    assert SimplicialComplex.simplex(2).barycentric_subdivision().f_vector() == [7, 12, 6]


def test_subdivision_preserves_euler():
    rng = random.Random(23)
    for _ in range(30):
        K = random_complex(rng, nmax=7)
        assert K.barycentric_subdivision().euler_characteristic() == K.euler_characteristic()


def test_subdivision_names_are_faces():
    sd = hollow_triangle().barycentric_subdivision()
    names = set(sd.vertex_names.values())
    assert names == {f for f in hollow_triangle().faces if f}


def test_subdivision_preserves_mod2_homology():
    sd = projective_plane_rp2().barycentric_subdivision()
    assert sd.f_vector() == [31, 90, 60]
    assert not mod_p_acyclic(sd, 2)
    assert rational_betti(sd) == [0, 0, 0]


# -- group actions ----------------------------------------------------------------


def rotation(n):
    return {i: (i + 1) % n for i in range(n)}


def hexagon():
    return SimplicialComplex.from_maximal([(i, (i + 1) % 6) for i in range(6)])


def test_action_validation():
    with pytest.raises(ValueError):
        GroupAction(hollow_triangle(), [{0: 0, 1: 1, 2: 3}])
    path = SimplicialComplex.from_maximal([(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        GroupAction(path, [{0: 1, 1: 0, 2: 2}])  # sends edge 12 to non-face 02


def test_action_closure_and_orbits():
    act = GroupAction(hexagon(), [rotation(6)])
    assert act.order() == 6
    assert act.is_vertex_transitive()
    path = SimplicialComplex.from_maximal([(0, 1), (1, 2)])
    swap = GroupAction(path, [{0: 2, 2: 0}])
    assert swap.order() == 2
    assert swap.vertex_orbits() == [frozenset({0, 2}), frozenset({1})]


def test_closure_cap():
    # S_8 on the full simplex exceeds the configured cap
    s7 = SimplicialComplex.simplex(7)
    gens = [{i: (i + 1) % 8 for i in range(8)}, {0: 1, 1: 0}]
    with pytest.raises(ClosureCapExceeded):
        GroupAction(s7, gens).elements()


def test_permutation_text():
    m = parse_permutation("(0 1 2)(3 4)", range(6))
    assert m[0] == 1 and m[2] == 0 and m[3] == 4 and m[5] == 5
    assert format_permutation(m) == "(0 1 2)(3 4)"
    assert parse_permutation(format_permutation(m), range(6)) == m
    assert parse_permutation("()", range(3)) == {0: 0, 1: 1, 2: 2}
    with pytest.raises(ValueError):
        parse_permutation("(0 1", range(3))
    with pytest.raises(ValueError):
        parse_permutation("(0 9)", range(3))


# -- fixed subcomplexes and quotients -----------------------------------------------


def test_fixed_subcomplex_triangle_rotation():
    tri = SimplicialComplex.simplex(2)
    act = GroupAction(tri, [{0: 1, 1: 2, 2: 0}])
    fx = fixed_subcomplex(tri, act)
    assert fx.f_vector() == [1]
    assert fx.vertex_names[0] == frozenset({0, 1, 2})  # the barycenter


def test_fixed_subcomplex_trivial_group_is_sd():
    tri = SimplicialComplex.simplex(2)
    fx = fixed_subcomplex(tri, GroupAction(tri, []))
    assert fx.faces == tri.barycentric_subdivision().faces


def test_fixed_subcomplex_free_action_empty():
    act = GroupAction(hexagon(), [{i: (i + 3) % 6 for i in range(6)}])
    assert fixed_subcomplex(hexagon(), act).is_empty()


def test_quotient_segment_swap():
    seg = SimplicialComplex.simplex(1)
    q = quotient_complex(seg, GroupAction(seg, [{0: 1, 1: 0}]))
    assert q.f_vector() == [3, 2]  # half the segment, subdivided twice
    assert q.euler_characteristic() == 1


def test_quotient_trivial_group_is_sd2():
    tri = SimplicialComplex.simplex(2)
    q = quotient_complex(tri, GroupAction(tri, []))
    sd2 = tri.barycentric_subdivision().barycentric_subdivision()
    assert q.f_vector() == sd2.f_vector()
    assert q.euler_characteristic() == 1


def test_quotient_free_circle_action():
    tb = hollow_triangle()
    q = quotient_complex(tb, GroupAction(tb, [rotation(3)]))
    assert q.euler_characteristic() == 0
    assert rational_betti(q) == [0, 1]  # still a circle


def test_floyd_identity():
    rep = floyd_check(SimplicialComplex.simplex(2), {0: 1, 1: 2, 2: 0}, 3)
    assert (rep.chi, rep.chi_fixed, rep.chi_quotient) == (1, 1, 1)
    assert rep.holds
    rep = floyd_check(SimplicialComplex.simplex(2), {}, 2)  # trivial action
    assert rep.holds and rep.chi_fixed == 1
    rep = floyd_check(hexagon(), {i: (i + 2) % 6 for i in range(6)}, 3)
    assert (rep.chi, rep.chi_fixed, rep.chi_quotient) == (0, 0, 0) and rep.holds


def test_floyd_on_projective_plane():
    rp2 = projective_plane_rp2()
    rep = floyd_check(rp2, parse_permutation("(3 5)(4 6)", rp2.vertices()), 2)
    assert rep.holds and rep.chi == 1
    rep = floyd_check(rp2, parse_permutation("(1 2 3)(4 6 5)", rp2.vertices()), 3)
    assert rep.holds


def test_floyd_validation():
    with pytest.raises(ValueError):
        floyd_check(hexagon(), rotation(6), 4)  # not prime
    with pytest.raises(ValueError):
        floyd_check(hexagon(), rotation(6), 2)  # order 6 generator


def test_floyd_random_involutions():
    # reflections of cycles: chi 0, fixed set two points or two cells
    for n in (4, 6, 8):
        cyc = SimplicialComplex.from_maximal([(i, (i + 1) % n) for i in range(n)])
        refl = {i: (-i) % n for i in range(n)}
        rep = floyd_check(cyc, refl, 2)
        assert rep.holds


# -- chain maps and trace formulas ---------------------------------------------------


def test_chain_map_validation():
    path = SimplicialComplex.from_maximal([(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        ChainMap(path, {0: 0, 1: 2, 2: 1})  # edge 01 -> 02, not a face
    # collapsing an edge to a vertex is fine: the chain image is zero
    cm = ChainMap(path, {0: 1, 1: 1, 2: 2})
    assert cm.verify_boundary_commutes()


def test_lefschetz_triangle_rotation():
    tri = SimplicialComplex.simplex(2)
    cm = ChainMap(tri, {0: 1, 1: 2, 2: 0})
    assert cm.verify_boundary_commutes()
    assert [cm.chain_trace(k) for k in range(3)] == [0, 0, 1]
    assert lefschetz_number(tri, {0: 1, 1: 2, 2: 0}) == 1
    rep = hopf_trace_check(tri, {0: 1, 1: 2, 2: 0})
    assert rep.chain_side == 1 and rep.holds


def test_lefschetz_edge_swap():
    assert lefschetz_number(SimplicialComplex.simplex(1), {0: 1, 1: 0}) == 1


def test_lefschetz_circle_maps():
    assert lefschetz_number(hexagon(), rotation(6)) == 0
    assert lefschetz_number(hexagon(), {i: (-i) % 6 for i in range(6)}) == 2


def test_lefschetz_identity_is_euler():
    rng = random.Random(31)
    for _ in range(25):
        K = random_complex(rng)
        ident = {v: v for v in K.vertices()}
        assert lefschetz_number(K, ident) == K.euler_characteristic()


def test_lefschetz_constant_map():
    rng = random.Random(37)
    for _ in range(20):
        K = random_complex(rng)
        target = K.vertices()[0]
        const = {v: target for v in K.vertices()}
        assert lefschetz_number(K, const) == 1


def simplicial_self_maps(K, rng, want):
    verts = K.vertices()
    found = []
    ident = {v: v for v in verts}
    found.append(ident)
    found.append({v: verts[0] for v in verts})
    attempts = 0
    while len(found) < want and attempts < 4000:
        attempts += 1
        m = {v: rng.choice(verts) for v in verts}
        if all(frozenset(m[v] for v in f) in K.faces for f in K.maximal_faces()):
            found.append(m)
    return found


def test_hopf_on_random_self_maps():
    rng = random.Random(41)
    checked = 0
    while checked < 60:
        K = random_complex(rng, nmax=6)
        for m in simplicial_self_maps(K, rng, 5):
            rep = hopf_trace_check(K, m)
            assert rep.holds, (sorted(map(sorted, K.maximal_faces())), m)
            checked += 1
    assert checked >= 60


def test_vertex_transitive_fixed_point():
    s3 = SimplicialComplex.simplex(3)
    full_group = GroupAction(s3, [rotation(4), {0: 1, 1: 0}])
    assert vertex_transitive_fixed_point_check(s3, full_group)
    tb = hollow_triangle()
    act = GroupAction(tb, [rotation(3)])
    # hypothesis fails: free action, no invariant face
    assert fixed_subcomplex(tb, act).is_empty()
    assert vertex_transitive_fixed_point_check(tb, act)
    rng = random.Random(43)
    for _ in range(30):
        K = random_complex(rng)
        assert vertex_transitive_fixed_point_check(K, GroupAction(K, []))


# -- serialization ----------------------------------------------------------------


def test_complex_text_roundtrip():
    rng = random.Random(47)
    for _ in range(20):
        K = random_complex(rng)
        text = complex_to_text(K)
        assert text.startswith("complex m=")
        K2 = complex_from_text(text)
        fam1 = K.to_setfamily()
        assert fam1 == K2.to_setfamily()
    with pytest.raises(ValueError):
        complex_from_text("m=3\n-\n")


def test_setfamily_interop():
    ht = hollow_triangle()
    fam = ht.to_setfamily()
    assert isinstance(fam, SetFamily) and len(fam) == 7
    back = SimplicialComplex.from_setfamily(fam)
    assert back.f_vector() == ht.f_vector()
