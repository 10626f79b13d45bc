"""Shared deterministic fixtures and random-instance helpers."""

from __future__ import annotations

import itertools

from hfreetest import Graph, OrderedGraph, Ordering, SplitMix64


def random_graph(rng: SplitMix64, n: int, edge_permille: int = 400) -> Graph:
    """Deterministic random graph: each pair kept with edge_permille/1000."""
    edges = [
        (u, v)
        for u, v in itertools.combinations(range(n), 2)
        if rng.below(1000) < edge_permille
    ]
    return Graph(n, edges)


def random_ordering(rng: SplitMix64, n: int) -> Ordering:
    seq = list(range(n))
    for i in range(n - 1, 0, -1):  # Fisher-Yates on the shared stream
        j = rng.below(i + 1)
        seq[i], seq[j] = seq[j], seq[i]
    return Ordering(seq)


def random_ordered_graph(rng: SplitMix64, n: int, edge_permille: int = 400) -> OrderedGraph:
    return OrderedGraph(random_graph(rng, n, edge_permille), random_ordering(rng, n))


def random_tree(rng: SplitMix64, n: int) -> Graph:
    edges = [(rng.below(v), v) for v in range(1, n)]
    return Graph(n, edges)
