"""Random-neighbor sessions: determinism, uniformity, scripted replay."""

from __future__ import annotations

import pytest
from scipy.stats import chisquare

from hfreetest import Graph, RandomNeighborOracle, ReplayOracle, SplitMix64, derive_seed
from hfreetest.errors import (
    InvalidScriptAnswerError,
    IsolatedVertexError,
    ScriptExhaustedError,
)


def test_oracle_is_deterministic_per_seed():
    g = Graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)])
    a = RandomNeighborOracle(g, 123)
    b = RandomNeighborOracle(g, 123)
    seq_a = [a.uniform_vertex() for _ in range(5)] + [a.random_neighbor(0) for _ in range(5)]
    seq_b = [b.uniform_vertex() for _ in range(5)] + [b.random_neighbor(0) for _ in range(5)]
    assert seq_a == seq_b
    c = RandomNeighborOracle(g, 124)
    seq_c = [c.uniform_vertex() for _ in range(5)] + [c.random_neighbor(0) for _ in range(5)]
    assert seq_a != seq_c


def test_oracle_shares_one_stream():
    # interleaved queries consume the same splitmix64 stream in call order
    g = Graph(4, [(0, 1), (0, 2), (0, 3)])
    oracle = RandomNeighborOracle(g, 99)
    ref = SplitMix64(99)
    assert oracle.uniform_vertex() == ref.below(4)
    assert oracle.random_neighbor(0) == g.neighbors(0)[ref.below(3)]
    assert oracle.uniform_vertex() == ref.below(4)


def test_uniform_vertex_distribution():
    g = Graph(10, [])
    oracle = RandomNeighborOracle(g, 7)
    counts = [0] * 10
    for _ in range(20000):
        counts[oracle.uniform_vertex()] += 1
    assert chisquare(counts).pvalue > 1e-3


def test_random_neighbor_distribution():
    g = Graph(9, [(0, i) for i in range(1, 9)])
    oracle = RandomNeighborOracle(g, 8)
    counts = [0] * 9
    for _ in range(16000):
        counts[oracle.random_neighbor(0)] += 1
    assert counts[0] == 0
    assert chisquare(counts[1:]).pvalue > 1e-3


def test_isolated_vertex_counts_and_raises():
    g = Graph(3, [(0, 1)])
    oracle = RandomNeighborOracle(g, 0)
    state_before = oracle.rng.state
    with pytest.raises(IsolatedVertexError):
        oracle.random_neighbor(2)
    assert oracle.query_count == 1
    assert oracle.rng.state == state_before  # no randomness consumed
    with pytest.raises(ValueError):
        oracle.random_neighbor(5)


def test_query_count_increments_only_on_neighbor_queries():
    g = Graph(3, [(0, 1), (1, 2)])
    oracle = RandomNeighborOracle(g, 1)
    oracle.uniform_vertex()
    assert oracle.query_count == 0
    oracle.random_neighbor(1)
    assert oracle.query_count == 1


def test_derive_seed_is_counter_based():
    seen = {derive_seed(0, i) for i in range(100)}
    assert len(seen) == 100
    assert derive_seed(5, 3) == derive_seed(5, 3)
    assert derive_seed(5, 3) != derive_seed(6, 3)


def test_splitmix_below_validates():
    with pytest.raises(ValueError):
        SplitMix64(0).below(0)


def test_replay_oracle_scripts():
    g = Graph(3, [(0, 1), (1, 2)])
    oracle = ReplayOracle(3, neighbor_script=[1, 2], vertex_script=[0], graph=g)
    assert oracle.uniform_vertex() == 0
    assert oracle.random_neighbor(0) == 1
    assert oracle.random_neighbor(1) == 2
    assert oracle.query_count == 2
    with pytest.raises(ScriptExhaustedError):
        oracle.random_neighbor(1)
    with pytest.raises(ScriptExhaustedError):
        oracle.uniform_vertex()


def test_replay_oracle_validates_answers():
    g = Graph(3, [(0, 1)])
    with pytest.raises(InvalidScriptAnswerError):
        ReplayOracle(3, neighbor_script=[2], graph=g).random_neighbor(0)
    with pytest.raises(InvalidScriptAnswerError):
        ReplayOracle(3, neighbor_script=[], vertex_script=[7]).uniform_vertex()
    with pytest.raises(IsolatedVertexError):
        ReplayOracle(3, neighbor_script=[0], graph=g).random_neighbor(2)
    with pytest.raises(ValueError):
        ReplayOracle(3, neighbor_script=[0]).random_neighbor(9)
