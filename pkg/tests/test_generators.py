"""Certified instance generators."""

from __future__ import annotations

from fractions import Fraction

import pytest

from hfreetest import (
    OrderedGraph,
    Ordering,
    admissibility_of_order,
    disjoint_copies,
    distance_to_h_freeness,
    enumerate_h_copies,
    enumerate_h_subgraphs,
    grid,
    pattern_graph,
    planted_far_instance,
    random_bounded_degree,
    subdivide,
)
from hfreetest.errors import GenerationError


def test_pattern_graph_table():
    assert pattern_graph("k3").m == 3 and pattern_graph("k3").n == 3
    assert pattern_graph("triangle") == pattern_graph("k3")
    assert pattern_graph("P3").n == 3 and pattern_graph("p3").m == 2
    assert pattern_graph("c4").m == 4
    assert pattern_graph("paw").m == 4 and pattern_graph("paw").n == 4
    assert pattern_graph("k4").m == 6
    with pytest.raises(GenerationError):
        pattern_graph("petersen")


def test_disjoint_copies_certificate():
    h = pattern_graph("k3")
    g, cert = disjoint_copies(h, 5, pad=4)
    assert g.n == 19 and g.m == 15
    cert.verify(g)  # raises on any inconsistency
    assert cert.farness_lower_bound == 5
    assert distance_to_h_freeness(g, h).value == 5
    with pytest.raises(GenerationError):
        disjoint_copies(h, 0)
    with pytest.raises(GenerationError):
        disjoint_copies(h, 1, pad=-1)


def test_disjoint_copies_admissibility_witness():
    h = pattern_graph("k3")
    g, cert = disjoint_copies(h, 4, pad=3, radius=3)
    cert.verify(g)
    assert cert.adm_bound == 2  # triangle admissibility
    got = admissibility_of_order(OrderedGraph(g, Ordering(cert.adm_order)), 3)
    assert got <= cert.adm_bound


def test_certificate_tampering_detected():
    h = pattern_graph("k3")
    g, cert = disjoint_copies(h, 3)
    cert.packing[0] = cert.packing[1]  # break edge-disjointness
    with pytest.raises(GenerationError):
        cert.verify(g)
    g2, cert2 = disjoint_copies(h, 3)
    cert2.farness_lower_bound = 99
    with pytest.raises(GenerationError):
        cert2.verify(g2)
    g3, cert3 = disjoint_copies(h, 3)
    cert3.packing[0] = [(0, 1), (1, 2)]  # not a triangle
    with pytest.raises(GenerationError):
        cert3.verify(g3)
    g4, cert4 = disjoint_copies(h, 3, radius=3)
    cert4.adm_order = None
    with pytest.raises(GenerationError):
        cert4.verify(g4)


def test_subdivide():
    tri = pattern_graph("k3")
    g = subdivide(tri, 3)
    assert g.n == 3 + 3 * 2 and g.m == 9
    assert g.is_connected()
    assert subdivide(tri, 1) == tri
    with pytest.raises(ValueError):
        subdivide(tri, 0)
    # subdividing kills triangles
    assert not enumerate_h_copies(g, tri, cap=1).subgraphs


def test_grid():
    assert grid(1, 1).n == 1 and grid(1, 1).m == 0
    g22 = grid(2, 2)
    c4 = pattern_graph("c4")
    assert g22.n == 4 and g22.m == 4
    assert len(enumerate_h_copies(g22, c4)) == 1
    g33 = grid(3, 3)
    assert g33.m == 2 * 3 * 3 - 3 - 3 == 12
    with pytest.raises(GenerationError):
        grid(0, 2)


def test_random_bounded_degree():
    g1 = random_bounded_degree(100, 3, seed=42)
    g2 = random_bounded_degree(100, 3, seed=42)
    assert g1 == g2
    assert max(g1.degree(v) for v in range(100)) <= 3
    assert g1.m > 0
    assert random_bounded_degree(50, 0, seed=1).m == 0
    distinct = {tuple(random_bounded_degree(40, 3, seed=s).sorted_edges()) for s in range(10)}
    assert len(distinct) == 10
    with pytest.raises(GenerationError):
        random_bounded_degree(0, 3, seed=1)


def test_planted_far_instance_exact_copies():
    h = pattern_graph("k3")
    g, cert = planted_far_instance(h, 300, Fraction(1, 3))
    cert.verify(g)
    assert cert.farness_lower_bound == 100
    assert g.n == 300 and g.m == 300  # 100 triangles, no background
    assert len(enumerate_h_copies(g, h)) == 100


def test_planted_far_instance_with_background():
    h = pattern_graph("p3")
    g, cert = planted_far_instance(h, 120, Fraction(1, 4), background_degree=2,
                                   seed=9, radius=3)
    cert.verify(g)
    assert cert.farness_lower_bound == 30
    assert max(g.degree(v) for v in range(g.n)) <= max(2, 2)
    assert cert.adm_order is not None and cert.adm_bound is not None
    # background never erases a planted copy
    packing_edges = {e for copy in cert.packing for e in copy}
    assert all(g.has_edge(a, b) for a, b in packing_edges)


def test_planted_far_instance_errors():
    h = pattern_graph("k3")
    with pytest.raises(GenerationError):
        planted_far_instance(h, 10, Fraction(1, 2))  # 5 copies need 15 vertices
    with pytest.raises(GenerationError):
        planted_far_instance(h, 1000, Fraction(0))  # zero copies


def test_planted_copies_are_order_isomorphic_to_pattern():
    h = pattern_graph("paw")
    g, cert = planted_far_instance(h, 40, Fraction(1, 10))
    subs = enumerate_h_subgraphs(OrderedGraph(g), h).subgraphs
    # at least the planted copies are present
    assert len(subs) >= cert.farness_lower_bound
