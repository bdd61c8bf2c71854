import itertools
from math import comb

import networkx as nx
import pytest

from hexatope.grprops import (
    BIPARTITE,
    DIGRAPH,
    GRAPH,
    InvarianceError,
    at_most_k_edges,
    build_property,
    complete_bipartite_threshold,
    connected,
    has_directed_cycle,
    has_sink,
    illies_family,
    illies_report,
    kss_group_data,
    monotone_sweep,
    no_edge,
    orbit_congruence_check,
    orbit_decomposition,
    parity_evasive,
    permute_mask,
    planar,
    scorpion,
    scorpion_complexity_probe,
    star_union,
    yao_fixed_complex,
)
from hexatope.scomplex import is_q_acyclic
from hexatope.setfam import (
    SetFamily,
    argument_complexity,
    divisibility_certificate,
    tree_depth,
)


# ------------------------------------------------------------- ground sets


def test_ground_set_encodings():
    assert no_edge(4).elements == tuple(itertools.combinations(range(4), 2))
    assert has_sink(3).elements == ((0, 1), (0, 2), (1, 0), (1, 2),
                                    (2, 0), (2, 1))
    bip = complete_bipartite_threshold(2, 3, 0)
    assert bip.elements == ((0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2))
    assert bip.params == (2, 3)


def test_ground_set_caps():
    with pytest.raises(ValueError):
        no_edge(8)
    with pytest.raises(ValueError):
        has_sink(6)
    with pytest.raises(ValueError):
        complete_bipartite_threshold(5, 5, 1)
    with pytest.raises(ValueError):
        build_property(BIPARTITE, 4, lambda a: True)
    with pytest.raises(ValueError):
        build_property("multigraph", 3, lambda a: True)


def test_non_invariant_predicate_rejected_with_witness():
    def touches_vertex_zero(edges):
        return any(0 in e for e in edges)

    with pytest.raises(InvarianceError) as err:
        build_property(GRAPH, 3, touches_vertex_zero)
    member, image = err.value.witness
    assert touches_vertex_zero(frozenset(member))
    assert not touches_vertex_zero(frozenset(image))


# ---------------------------------------------------------------- builtins


def test_no_edge_is_the_empty_family():
    prop = no_edge(4)
    assert prop.family.members == frozenset({0})
    assert argument_complexity(prop.family) == 6


def test_edge_budget():
    prop = at_most_k_edges(3, 1)
    assert len(prop.family) == 4
    assert argument_complexity(prop.family) == 3
    assert at_most_k_edges(3, 3).family.is_trivial()
    assert at_most_k_edges(3, 7).family.is_trivial()
    with pytest.raises(ValueError):
        at_most_k_edges(3, -1)


def test_connected_small():
    prop = connected(3)
    # three labeled paths and the triangle
    assert len(prop.family) == 4
    assert argument_complexity(prop.family) == 3
    assert argument_complexity(connected(2).family) == 1


def test_planar_trivial_then_evasive():
    assert planar(4).family.is_trivial()
    prop = planar(5)
    # on five vertices only the complete graph is nonplanar
    assert len(prop.family) == 1023
    assert parity_evasive(prop.family)
    assert argument_complexity(prop.family) == 10


def test_scorpion_members():
    prop = scorpion(4)
    # the definition at n=4 pins the graph to a labeled 4 vertex path
    assert len(prop.family) == 12
    index = {e: i for i, e in enumerate(prop.elements)}

    def mask(edges):
        return sum(1 << index[tuple(sorted(e))] for e in edges)

    assert mask([(0, 1), (1, 2), (2, 3)]) in prop.family
    assert mask([(0, 1), (0, 2), (1, 2)]) not in prop.family
    assert mask([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]) \
        not in prop.family
    with pytest.raises(ValueError):
        scorpion(3)


def test_star_union_members():
    prop = star_union(5)
    index = {e: i for i, e in enumerate(prop.elements)}

    def mask(edges):
        return sum(1 << index[tuple(sorted(e))] for e in edges)

    assert mask([(0, 1)]) in prop.family
    assert mask([(0, 1), (2, 3)]) in prop.family
    assert mask([(0, 1), (2, 3), (2, 4), (3, 4)]) in prop.family
    assert mask([(0, 1), (0, 2), (1, 2)]) not in prop.family
    assert mask([(0, 1), (1, 2)]) not in prop.family
    with pytest.raises(ValueError):
        star_union(4)


def test_sink_count_and_complexity():
    prop = has_sink(3)
    # one candidate sink forces 2 arcs in and 2 out, leaving 2 free arcs,
    # and two sinks cannot coexist: 3 * 4 members
    assert len(prop.family) == 12
    assert argument_complexity(prop.family) == 5


def test_directed_cycle_by_parity():
    prop = has_directed_cycle(3)
    acyclic = 0
    for mask in range(1 << 6):
        g = nx.DiGraph()
        g.add_nodes_from(range(3))
        g.add_edges_from(prop.elements[i] for i in range(6) if mask >> i & 1)
        if nx.is_directed_acyclic_graph(g):
            acyclic += 1
    assert len(prop.family) == 64 - acyclic == 39
    assert parity_evasive(prop.family)
    assert argument_complexity(prop.family) == 6


def test_bipartite_threshold_monotone():
    prop = complete_bipartite_threshold(2, 2, 1)
    for a in prop.family:
        b = a
        while b:
            b = (b - 1) & a
            assert b in prop.family
    assert complete_bipartite_threshold(2, 2, 2).family.is_trivial()
    with pytest.raises(ValueError):
        complete_bipartite_threshold(2, 2, -1)


# ------------------------------------------------------------------ orbits


def test_orbit_decomposition_of_the_cyclic_family():
    fam, shift = illies_family()
    dec = orbit_decomposition(fam, [shift])
    assert dec.member_count() == len(fam) == 56
    seen = set()
    for orbit in dec.orbits:
        assert seen.isdisjoint(orbit.members)
        seen.update(orbit.members)
        assert all(bin(a).count("1") == orbit.k for a in orbit.members)
        assert orbit.k * orbit.size == orbit.degree * 12
    sizes = sorted((o.k, o.size) for o in dec.orbits)
    assert sizes == [(0, 1), (1, 12), (2, 12), (2, 12), (3, 4), (3, 12),
                     (4, 3)]


def test_orbit_decomposition_rejects_bad_input():
    fam = SetFamily.from_masks(2, {0b01})
    with pytest.raises(ValueError):
        orbit_decomposition(fam, [(0, 0)])
    with pytest.raises(ValueError):
        orbit_decomposition(fam, [(1, 0)])  # image 0b10 missing


def test_orbit_degree_not_uniform_without_transitivity():
    fam = SetFamily.from_masks(2, {0, 0b01})
    dec = orbit_decomposition(fam, [(0, 1)])
    lone = next(o for o in dec.orbits if o.k == 1)
    assert lone.degree is None


def test_property_orbits():
    dec = connected(3).orbits()
    assert sorted((o.k, o.size) for o in dec.orbits) == [(2, 3), (3, 1)]


# -------------------------------------------------------------- congruence


def test_congruence_requires_prime_power_and_transitivity():
    with pytest.raises(ValueError, match="not a prime power"):
        orbit_congruence_check(no_edge(4))
    fam = SetFamily.from_masks(4, {0})
    with pytest.raises(ValueError, match="transitive"):
        orbit_congruence_check(fam, generators=[(0, 1, 2, 3)])
    with pytest.raises(ValueError, match="generators"):
        orbit_congruence_check(fam)


def test_congruence_on_bipartite_two_by_two():
    for r in (0, 1):
        rep = orbit_congruence_check(complete_bipartite_threshold(2, 2, r))
        assert (rep.m, rep.p, rep.t) == (4, 2, 2)
        assert rep.applies and rep.divisible and rep.congruent
        assert rep.evasive


def test_congruence_exhaustive_under_the_four_cycle():
    # every invariant family on four points with the empty set in and the
    # full set out satisfies the congruence and is evasive
    cycle = (1, 2, 3, 0)
    orbits = {}
    for mask in range(1 << 4):
        images = set()
        a = mask
        while a not in images:
            images.add(a)
            a = permute_mask(a, cycle)
        orbits.setdefault(min(images), frozenset(images))
    middle = [o for rep, o in orbits.items() if rep not in (0, 0b1111)]
    assert len(middle) == 4
    for pick in range(1 << 4):
        members = {0}
        for i in range(4):
            if pick >> i & 1:
                members.update(middle[i])
        rep = orbit_congruence_check(SetFamily.from_masks(4, members),
                                     generators=[cycle])
        assert rep.applies and rep.divisible
        assert rep.congruent and rep.evasive


def test_congruence_does_not_apply_without_the_empty_set():
    rep = orbit_congruence_check(has_sink(2))
    assert not rep.applies
    assert rep.congruent is None and rep.evasive is None


# ------------------------------------------------------- the cyclic family


def test_illies_counts_and_depth():
    rep = illies_report()
    assert rep.counts == (1, 12, 24, 16, 3)
    assert sum((-1) ** k * v for k, v in enumerate(rep.polynomial)) == 0
    assert rep.c <= 11 < 12
    assert tree_depth(rep.tree) == rep.c
    c, quotient = divisibility_certificate(rep.family)
    assert c == rep.c


def test_illies_non_monotone_witness():
    rep = illies_report()
    inside, outside = rep.non_monotone
    assert set(outside) < set(inside)
    assert sum(1 << e for e in inside) in rep.family
    assert sum(1 << e for e in outside) not in rep.family


def test_illies_family_is_invariant():
    fam, shift = illies_family()
    orbit_decomposition(fam, [shift])  # raises on any invariance failure
    assert 0 in fam and (1 << 12) - 1 not in fam


# ----------------------------------------------------------- monotone sweep


def brute_monotone_invariant_count(n):
    # ground truth by enumerating every family of subsets directly
    elements = list(itertools.combinations(range(n), 2))
    m = len(elements)
    index = {e: i for i, e in enumerate(elements)}
    perms = []
    for p in itertools.permutations(range(n)):
        perms.append(tuple(index[tuple(sorted((p[a], p[b])))]
                           for a, b in elements))
    count = 0
    for bits in range(1 << (1 << m)):
        members = {a for a in range(1 << m) if bits >> a & 1}
        ok = all(permute_mask(a, g) in members for a in members for g in perms)
        if ok:
            for a in members:
                b = a
                while b and ok:
                    b = (b - 1) & a
                    ok = b in members
                if not ok:
                    break
        if ok:
            count += 1
    return count


def test_sweep_three_vertices_against_brute_force():
    rep = monotone_sweep(3)
    assert rep.family_count == brute_monotone_invariant_count(3) == 5
    assert rep.nontrivial_count == 3
    assert rep.complexity_histogram == ((0, 2), (3, 3))
    assert rep.violations == ()


def test_sweep_four_vertices():
    rep = monotone_sweep(4)
    assert rep.class_count == 11
    assert rep.family_count == 24
    assert rep.nontrivial_count == 22
    assert rep.complexity_histogram == ((0, 2), (6, 22))
    assert rep.violations == ()


def test_sweep_range():
    with pytest.raises(ValueError):
        monotone_sweep(5)
    with pytest.raises(ValueError):
        monotone_sweep(1)


# ------------------------------------------------------------ fixed complex


def test_yao_closed_form_grid():
    for rows in range(2, 7):
        for r in range(1, rows):
            rep = yao_fixed_complex(rows, 3, r)
            assert rep.chi_reduced == (-1) ** (r - 1) * comb(rows - 1, r)
            assert rep.chi_reduced == rep.closed_form != 0
            assert (rep.subdivision.euler_characteristic()
                    == rep.skeleton.euler_characteristic())


def test_yao_counts_for_one_instance():
    rep = yao_fixed_complex(4, 2, 2)
    assert rep.skeleton.f_vector() == [4, 6]
    assert rep.chi_reduced == -3
    assert not is_q_acyclic(rep.subdivision)


def test_yao_isolated_points():
    rep = yao_fixed_complex(3, 1, 1)
    assert rep.chi_reduced == 2
    assert len(rep.subdivision.vertices()) == 3


def test_yao_empty_case_and_validation():
    assert yao_fixed_complex(4, 2, 0).chi_reduced == -1
    with pytest.raises(ValueError):
        yao_fixed_complex(4, 2, 4)
    with pytest.raises(ValueError):
        yao_fixed_complex(4, 2, -1)
    with pytest.raises(ValueError):
        yao_fixed_complex(0, 2, 0)


# -------------------------------------------------------------- group data


def test_affine_group_checks_all_sizes():
    for q in (2, 3, 4, 5, 7, 8, 9):
        data = kss_group_data(q)
        assert len(data.group) == q * (q - 1)
        assert len(data.translations) == q == data.p ** data.t
        assert len(data.pairs) == comb(q, 2)
        assert data.doubly_transitive
        assert data.pair_transitive
        assert data.translations_normal
        assert data.quotient_cyclic


def test_affine_group_rejects_non_prime_powers():
    with pytest.raises(ValueError):
        kss_group_data(6)
    with pytest.raises(ValueError):
        kss_group_data(16)


def test_field_laws_on_the_extension_fields():
    for q in (4, 8, 9):
        data = kss_group_data(q)
        add, mul = data.add, data.mul
        for a in range(q):
            for b in range(q):
                assert add[a][b] == add[b][a]
                assert mul[a][b] == mul[b][a]
        for a in range(q):
            for b in range(q):
                for c in range(q):
                    assert mul[a][add[b][c]] == add[mul[a][b]][mul[a][c]]
                    assert mul[mul[a][b]][c] == mul[a][mul[b][c]]
        powers = {1}
        x = data.primitive
        while x not in powers:
            powers.add(x)
            x = mul[x][data.primitive]
        assert len(powers) == q - 1


def test_pair_action_is_a_homomorphism():
    data = kss_group_data(4)
    for g in data.group[:5]:
        for h in data.group[:5]:
            composed = data.pair_permutation(data.compose(g, h))
            pg, ph = data.pair_permutation(g), data.pair_permutation(h)
            assert composed == tuple(pg[ph[i]] for i in range(len(ph)))
    for g in data.group:
        assert sorted(data.pair_permutation(g)) == list(range(6))


def test_group_inverse():
    data = kss_group_data(9)
    for g in data.group:
        a, b = data.compose(g, data.inverse(g))
        assert (a, b) == (1, 0)


# ------------------------------------------------------------------- probes


def test_scorpion_probe_exact_values():
    rep = scorpion_complexity_probe(4)
    # 12 labeled paths, and the family is evasive at this size
    assert (rep.m, rep.member_count, rep.c, rep.evasive) == (6, 12, 6, True)
    rep = scorpion_complexity_probe(5)
    # ordered sting/tail/body choices times the free edge: 5*4*3*2
    assert (rep.m, rep.member_count) == (10, 120)
    assert rep.c == 10 and rep.evasive


def test_star_union_out_of_range_documented():
    with pytest.raises(ValueError):
        star_union(12)


def test_parity_certificate():
    assert parity_evasive(has_directed_cycle(3).family)
    assert not parity_evasive(has_sink(3).family)
