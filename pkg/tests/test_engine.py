"""Exploration engine: pure/compiled parity, budgets, hooks."""

from __future__ import annotations

import pytest

from hfreetest import (
    Graph,
    RandomNeighborOracle,
    SplitMix64,
    compiled_available,
    explore,
)
from hfreetest.errors import QueryBudgetExceededError

from conftest import random_graph

needs_compiled = pytest.mark.skipif(
    not compiled_available(), reason="compiled kernel not built"
)


def test_explore_discovers_connected_component():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    oracle = RandomNeighborOracle(g, 3)
    res = explore(oracle, 0, 6, 8, forced_seeds=(0,), backend="pure")
    assert set(res.vertices) == {0, 1, 2, 3}
    assert res.vertex_round[0] == 0
    assert res.edges() == g.sorted_edges()
    assert res.rounds_executed == 6
    assert res.total_queries == sum(res.queries_per_round)
    # both endpoints of a discovered edge are known by the edge's round
    for (a, b), rnd in res.edge_round.items():
        assert res.vertex_round[a] <= rnd and res.vertex_round[b] <= rnd


def test_forced_seeds_enter_round_zero():
    g = Graph(5, [])
    oracle = RandomNeighborOracle(g, 0)
    res = explore(oracle, 2, 1, 3, forced_seeds=(4, 2), backend="pure")
    assert res.vertices[:2] == [4, 2]
    assert res.vertex_round[4] == 0 and res.vertex_round[2] == 0
    # isolated vertices are queried (and counted) but yield nothing
    assert res.total_queries == len(res.vertices) * 3
    assert res.edge_round == {}


def test_query_budget_enforced_before_each_query():
    g = Graph(3, [(0, 1), (1, 2), (0, 2)])
    oracle = RandomNeighborOracle(g, 5)
    with pytest.raises(QueryBudgetExceededError):
        explore(oracle, 2, 3, 4, query_budget=5, backend="pure")
    # exact-fit budget passes
    oracle = RandomNeighborOracle(g, 5)
    res = explore(oracle, 1, 1, 4, forced_seeds=(), query_budget=None, backend="pure")
    budget = res.total_queries
    oracle = RandomNeighborOracle(g, 5)
    res2 = explore(oracle, 1, 1, 4, query_budget=budget, backend="pure")
    assert res2.total_queries == budget


def test_round_hook_stops_early():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    oracle = RandomNeighborOracle(g, 3)
    res = explore(
        oracle, 0, 6, 8, forced_seeds=(0,),
        round_hook=lambda s, verts, edges: s >= 2, backend="pure",
    )
    assert res.rounds_executed == 2
    assert len(res.queries_per_round) == 3  # round 0 plus two executed rounds


def test_backend_validation():
    g = Graph(3, [(0, 1), (1, 2)])
    oracle = RandomNeighborOracle(g, 1)
    with pytest.raises(ValueError):
        explore(oracle, 1, 1, 1, backend="nope")
    with pytest.raises(ValueError):
        explore(oracle, -1, 1, 1, backend="pure")
    with pytest.raises(ValueError):
        # a round hook rules the compiled kernel out
        explore(
            oracle, 1, 1, 1, backend="compiled",
            round_hook=lambda s, v, e: False,
        )


class _SessionShim:
    """Non-standard session: forces the pure path under backend='auto'."""

    def __init__(self, inner):
        self.inner = inner
        self.n = inner.n

    def uniform_vertex(self):
        return self.inner.uniform_vertex()

    def random_neighbor(self, v):
        return self.inner.random_neighbor(v)


@needs_compiled
def test_pure_and_compiled_are_bit_identical():
    rng = SplitMix64(90)
    for trial in range(15):
        g = random_graph(rng, 12 + rng.below(8), 300)
        seed = rng.next_u64()
        o1 = RandomNeighborOracle(g, seed)
        o2 = RandomNeighborOracle(g, seed)
        r_pure = explore(o1, 4, 3, 5, forced_seeds=(0,), backend="pure")
        r_comp = explore(o2, 4, 3, 5, forced_seeds=(0,), backend="compiled")
        assert r_comp.backend == "compiled" and r_pure.backend == "pure"
        assert r_pure.vertices == r_comp.vertices
        assert r_pure.vertex_round == r_comp.vertex_round
        assert r_pure.edge_round == r_comp.edge_round
        assert r_pure.queries_per_round == r_comp.queries_per_round
        # session accounting (stream position, query count) matches too
        assert o1.rng.state == o2.rng.state
        assert o1.query_count == o2.query_count


@needs_compiled
def test_parity_with_isolated_vertices_and_budget():
    g = Graph(10, [(0, 1), (2, 3)])  # 6 isolated vertices
    o1 = RandomNeighborOracle(g, 17)
    o2 = RandomNeighborOracle(g, 17)
    r_pure = explore(o1, 6, 2, 3, backend="pure")
    r_comp = explore(o2, 6, 2, 3, backend="compiled")
    assert r_pure.vertex_round == r_comp.vertex_round
    assert r_pure.edge_round == r_comp.edge_round
    assert o1.rng.state == o2.rng.state

    o1 = RandomNeighborOracle(g, 17)
    o2 = RandomNeighborOracle(g, 17)
    with pytest.raises(QueryBudgetExceededError):
        explore(o1, 6, 2, 3, query_budget=4, backend="pure")
    with pytest.raises(QueryBudgetExceededError):
        explore(o2, 6, 2, 3, query_budget=4, backend="compiled")


@needs_compiled
def test_auto_backend_selection():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    res = explore(RandomNeighborOracle(g, 1), 2, 2, 3, backend="auto")
    assert res.backend == "compiled"
    shim = _SessionShim(RandomNeighborOracle(g, 1))
    res2 = explore(shim, 2, 2, 3, backend="auto")
    assert res2.backend == "pure"
    assert res2.vertex_round == res.vertex_round
    assert res2.edge_round == res.edge_round
