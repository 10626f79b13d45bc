"""Useful pairs, similarity, stratas, nadirs, spines, stability."""

from __future__ import annotations

import itertools

import pytest

from hfreetest import (
    Graph,
    OrderedGraph,
    SplitMix64,
    UsefulPair,
    are_similar,
    classify_nadir,
    enumerate_h_subgraphs,
    enumerate_useful_pairs,
    is_prefix,
    is_stable,
    is_useful_pair,
    max_strata,
    nadir,
    pattern_graph,
    spine,
)
from hfreetest.structure import (
    _outside_prefix_edges,
    extract_vertex_disjoint_substrata,
    lex_least_max_disjoint,
    max_disjoint_edge_sets,
)
from hfreetest.errors import ResourceBudgetError

from conftest import random_ordered_graph


def _triangle_host():
    g = Graph(3, [(0, 1), (0, 2), (1, 2)])
    og = OrderedGraph(g)
    host = enumerate_h_subgraphs(og, pattern_graph("k3")).subgraphs[0]
    return og, host


# ---------------------------------------------------------------------------
# prefixes and useful pairs


def test_prefix_conditions_on_triangle():
    _, host = _triangle_host()
    full = host
    assert is_prefix(host, full, {0})
    assert is_prefix(host, full, {0, 1})
    assert not is_prefix(host, full, set())         # empty
    assert not is_prefix(host, full, {1})           # 0 outside is below 1
    assert not is_prefix(host, full, {0, 1, 2})     # no vertex has an edge out
    edge01 = host.induce({0, 1})
    # vertex 1 has host-neighbor 2 outside the subgraph but is not in d
    assert not is_prefix(host, edge01, {0})
    assert not is_useful_pair(host, edge01, {0})


def test_useful_pair_requires_connected_body():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])  # path pattern p4
    og = OrderedGraph(g)
    host = enumerate_h_subgraphs(og, pattern_graph("p4")).subgraphs[0]
    # body {0, 3}? prefix {1, 2}: outside below prefix max -> already invalid;
    # use prefix {1} with gp {0,1}: body {0} but 0 is below 1
    assert not is_useful_pair(host, host, {1, 2})
    # full host with prefix {0}: body {1,2,3} connected, all above 0
    assert is_useful_pair(host, host, {0})


def test_enumerated_pairs_are_exactly_the_valid_ones():
    rng = SplitMix64(50)
    for pattern in ("k3", "p3", "paw"):
        h = pattern_graph(pattern)
        for _ in range(8):
            og = random_ordered_graph(rng, 7, 450)
            got = {
                (host.key(), up.key())
                for host, up in enumerate_useful_pairs(og, h)
            }
            expected = set()
            for host in enumerate_h_subgraphs(og, h).subgraphs:
                verts = sorted(host.vertices)
                for k in range(1, len(verts) + 1):
                    for sub in itertools.combinations(verts, k):
                        gp = host.induce(sub)
                        for dk in range(1, k + 1):
                            for d in itertools.combinations(sub, dk):
                                if is_useful_pair(host, gp, frozenset(d)):
                                    expected.add(
                                        (host.key(), UsefulPair(gp, frozenset(d)).key())
                                    )
            assert got == expected


def test_nadir():
    og, host = _triangle_host()
    up = UsefulPair(host, frozenset({0}))
    assert up.body == frozenset({1, 2})
    assert nadir(up) == 1
    with pytest.raises(ValueError):
        nadir(UsefulPair(host, frozenset({0, 1, 2})))


def test_similarity_requires_equal_prefix_and_shape():
    # two triangles sharing apex 0
    g = Graph(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])
    og = OrderedGraph(g)
    hosts = enumerate_h_subgraphs(og, pattern_graph("k3")).subgraphs
    t1 = next(s for s in hosts if s.vertices == {0, 1, 2})
    t2 = next(s for s in hosts if s.vertices == {0, 3, 4})
    p1 = UsefulPair(t1, frozenset({0}))
    p2 = UsefulPair(t2, frozenset({0}))
    assert are_similar(p1, p2) and are_similar(p1, p1)
    assert not are_similar(p1, UsefulPair(t2, frozenset({0, 3})))


# ---------------------------------------------------------------------------
# disjoint-family selection


def _brute_force_max_disjoint(edge_sets):
    best = 0
    n = len(edge_sets)
    for k in range(n, 0, -1):
        for combo in itertools.combinations(range(n), k):
            union: set = set()
            total = 0
            for i in combo:
                union |= edge_sets[i]
                total += len(edge_sets[i])
            if len(union) == total:
                return k
    return best


def test_max_disjoint_edge_sets_matches_brute_force():
    rng = SplitMix64(60)
    for _ in range(40):
        sets = []
        for _ in range(rng.below(8) + 1):
            sets.append(frozenset((rng.below(6), 6 + rng.below(4)) for _ in range(rng.below(3) + 1)))
        idxs = max_disjoint_edge_sets(sets)
        assert idxs == sorted(idxs)
        union: set = set()
        for i in idxs:
            assert union.isdisjoint(sets[i])
            union |= sets[i]
        assert len(idxs) == _brute_force_max_disjoint(sets)


def test_lex_least_max_disjoint():
    a, b, c = frozenset({1}), frozenset({1, 2}), frozenset({3})
    # maximum families: {a, c} and {b, c}; lexicographically least picks a first
    assert lex_least_max_disjoint([b, a, c]) == [0, 2]
    assert lex_least_max_disjoint([a, b, c]) == [0, 2]
    assert lex_least_max_disjoint([]) == []


def test_max_disjoint_edge_sets_budget():
    sets = [frozenset({i}) for i in range(30)]
    with pytest.raises(ResourceBudgetError):
        max_disjoint_edge_sets(sets, node_budget=5)


def test_max_disjoint_edge_sets_deep_input():
    # include-first search must not hit the interpreter recursion limit
    sets = [frozenset({i}) for i in range(5000)]
    assert max_disjoint_edge_sets(sets) == list(range(5000))


# ---------------------------------------------------------------------------
# stratas


def test_max_strata_on_shared_apex():
    g = Graph(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])
    og = OrderedGraph(g)
    h = pattern_graph("k3")
    hosts = enumerate_h_subgraphs(og, h).subgraphs
    template = UsefulPair(hosts[0], frozenset({0}))
    strata = max_strata(og, h, {0}, template)
    assert strata.size == 2
    assert strata.nadir_set() == {1, 3}
    seen: set = set()
    for m in strata.members:
        out = _outside_prefix_edges(m)
        assert seen.isdisjoint(out)
        seen |= out
    single = max_strata(og, h, {0}, template, nadir_equals=1)
    assert single.size == 1 and single.nadir_set() == {1}


def test_classify_nadir_weak_vs_strong():
    g = Graph(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])
    og = OrderedGraph(g)
    h = pattern_graph("k3")
    hosts = enumerate_h_subgraphs(og, h).subgraphs
    template = UsefulPair(hosts[0], frozenset({0}))
    strata = max_strata(og, h, {0}, template)
    # deg(0) = 4; each single-nadir strata has size 1
    assert classify_nadir(og, h, strata, 1, delta=4) == "weak"     # 1*4 <= 4
    assert classify_nadir(og, h, strata, 1, delta=5) == "strong"   # 1*5 > 4
    with pytest.raises(ValueError):
        classify_nadir(og, h, strata, 2, delta=4)


def test_extract_vertex_disjoint_substrata():
    g = Graph(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])
    og = OrderedGraph(g)
    h = pattern_graph("k3")
    hosts = enumerate_h_subgraphs(og, h).subgraphs
    template = UsefulPair(hosts[0], frozenset({0}))
    strata = max_strata(og, h, {0}, template)
    sub, short = extract_vertex_disjoint_substrata(strata, 2)
    assert sub.size == 2 and not short
    _, short = extract_vertex_disjoint_substrata(strata, 3)
    assert short


# ---------------------------------------------------------------------------
# spines and stability


def test_spine_and_stability_on_triangle():
    _, host = _triangle_host()
    sp = spine(host, {0})
    assert all(p.prefix == frozenset({0}) for p in sp.pairs)
    assert is_stable(host, {0})          # minimum-vertex set is stable
    assert is_stable(host, {0, 1})
    assert spine(host, {0, 1, 2}).pairs == []
    assert is_stable(host, {0, 1, 2})    # vacuously: nothing left to cover
    assert not is_stable(host, {1})      # 0 lies below, no spine covers it


def test_spine_requires_prefix_intersection():
    _, host = _triangle_host()
    for p in spine(host, {0, 2}).pairs:
        assert p.subgraph.vertices & {0, 2} == p.prefix
