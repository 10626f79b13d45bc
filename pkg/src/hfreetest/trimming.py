"""Edge-trimming fixpoint pass.

Produces a subgraph of the input ordered graph in which every surviving
structure is guaranteed high multiplicity: high-degree vertices lose
their downward edges, and sparse path families / stratas are removed
outright. All degree thresholds are measured in the ORIGINAL graph;
path and strata searches consult the current trimmed graph. Used for
analysis and verification only — the tester never calls it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .admissibility import enumerate_admissible_paths, target_set
from .errors import InternalInvariantError, ResourceBudgetError
from .graphs import Graph, OrderedGraph, _norm_edge
from .structure import (
    UsefulPair,
    _strata_candidates,
    _outside_prefix_edges,
    are_similar,
    enumerate_useful_pairs,
    lex_least_max_disjoint,
    max_disjoint_edge_sets,
    nadir,
)


@dataclass
class TrimReport:
    removed_per_step: dict[int, int] = field(default_factory=lambda: {1: 0, 2: 0, 3: 0, 4: 0})
    removed_edges: list[tuple[tuple[int, int], int, int]] = field(default_factory=list)
    rounds: int = 0

    def record(self, edge: tuple[int, int], step: int, vertex: int) -> None:
        self.removed_per_step[step] += 1
        self.removed_edges.append((edge, step, vertex))

    @property
    def total_removed(self) -> int:
        return sum(self.removed_per_step.values())


def _path_edges(p: tuple[int, ...]) -> frozenset[tuple[int, int]]:
    return frozenset(_norm_edge(a, b) for a, b in zip(p, p[1:]))


class _TrimState:
    def __init__(self, g: OrderedGraph):
        self.original = g
        self.order = g.order
        self.n = g.n
        self.edges: set[tuple[int, int]] = set(g.graph.edges())
        self._cache: Optional[OrderedGraph] = None

    def current(self) -> OrderedGraph:
        if self._cache is None:
            self._cache = OrderedGraph(Graph(self.n, sorted(self.edges)), self.order)
        return self._cache

    def remove(self, edge: tuple[int, int], step: int, vertex: int, report: TrimReport) -> bool:
        edge = _norm_edge(*edge)
        if edge in self.edges:
            self.edges.discard(edge)
            self._cache = None
            report.record(edge, step, vertex)
            return True
        return False


def _similarity_classes(pairs: list[UsefulPair]) -> list[list[UsefulPair]]:
    classes: list[list[UsefulPair]] = []
    for p in pairs:
        for cls in classes:
            if are_similar(cls[0], p):
                cls.append(p)
                break
        else:
            classes.append([p])
    return classes


def _step2(state: _TrimState, v: int, r: int, beta: int, deg_v: int, report: TrimReport) -> bool:
    """Sparse exact-length admissible path families v→u are removed whole."""
    fired = False
    for i in range(1, r + 1):
        while True:
            cur = state.current()
            removed_here = False
            for u in sorted(target_set(cur, v, i), key=cur.order.position.__getitem__):
                paths = enumerate_admissible_paths(cur, v, i, end=u, exact_length=i)
                if not paths:
                    continue
                paths.sort()
                edge_sets = [_path_edges(p) for p in paths]
                max_idxs = max_disjoint_edge_sets(edge_sets)
                if len(max_idxs) * beta > deg_v:
                    continue
                # fire: remove a deterministic maximum edge-disjoint family
                chosen = lex_least_max_disjoint(edge_sets)
                for idx in chosen:
                    for e in edge_sets[idx]:
                        state.remove(e, 2, v, report)
                # completeness: a maximum family hits every such path
                leftover = enumerate_admissible_paths(state.current(), v, i, end=u, exact_length=i)
                if leftover:
                    raise InternalInvariantError(
                        f"paths of length {i} from {v} to {u} survived a maximum-family removal"
                    )
                fired = removed_here = True
                break  # the trimmed graph changed; restart this (v, i) scan
            if not removed_here:
                break
    return fired


def _weak_nadirs(
    candidates: list[UsefulPair], delta: int, deg_top_original: int
) -> set[int]:
    """Nadir vertices whose maximum single-nadir strata is small.

    The single-nadir maximum is computed within the nadir's group of the
    (already exhaustive) candidate list. Exact integer comparison
    size·δ ≤ deg, degree from the original graph.
    """
    groups: dict[int, list[UsefulPair]] = {}
    for c in candidates:
        groups.setdefault(nadir(c), []).append(c)
    weak: set[int] = set()
    for w, group in groups.items():
        size = len(max_disjoint_edge_sets([_outside_prefix_edges(c) for c in group]))
        if size * delta <= deg_top_original:
            weak.add(w)
    return weak


def _step34(
    state: _TrimState,
    v: int,
    h: Graph,
    beta: int,
    delta: int,
    deg_v: int,
    step: int,
    report: TrimReport,
) -> bool:
    """Steps 3 (any maximum strata) and 4 (weakness-restricted variant)."""
    fired = False
    while True:
        cur = state.current()
        pairs = [
            up
            for _, up in enumerate_useful_pairs(cur, h)
            if cur.max_vertex(up.prefix) == v
        ]
        dedup: dict = {}
        for up in pairs:
            dedup.setdefault(up.key(), up)
        pairs = sorted(dedup.values(), key=UsefulPair.sort_key)
        removed_here = False
        for cls in _similarity_classes(pairs):
            template = cls[0]
            u = template.prefix
            candidates = _strata_candidates(cur, h, u, template)
            if step == 4:
                deg_top = state.original.graph.degree(state.original.max_vertex(u))
                weak = _weak_nadirs(candidates, delta, deg_top)
                candidates = [c for c in candidates if nadir(c) in weak]
            idxs = max_disjoint_edge_sets([_outside_prefix_edges(c) for c in candidates])
            members = [candidates[i] for i in idxs]
            if members and len(members) * beta < deg_v:
                for m in members:
                    for e in sorted(m.subgraph.edge_set):
                        state.remove(e, step, v, report)
                fired = removed_here = True
                break  # classes changed; re-enumerate
        if not removed_here:
            return fired


def trim(
    g: OrderedGraph,
    h: Graph,
    radius: int,
    degree_bound: int,
    sparsity_bound: int,
    weakness_bound: int,
) -> tuple[OrderedGraph, TrimReport]:
    """Run the four-step trimming fixpoint.

    radius bounds the path lengths examined in step 2 (the pattern h must
    fit within it); degree_bound gates step 1, sparsity_bound gates steps
    2–4, weakness_bound drives the step-4 nadir classification. Degrees
    are always measured in the input graph. Returns the trimmed graph
    (same vertices and order) and a removal report.
    """
    if min(degree_bound, sparsity_bound, weakness_bound) < 1 or radius < 1:
        raise ValueError("trimming thresholds and radius must be at least 1")
    state = _TrimState(g)
    report = TrimReport()
    orig = g.graph
    pos = g.order.position
    while True:
        report.rounds += 1
        any_removed = False
        for v in g.order.sequence:
            deg_v = orig.degree(v)
            # step 1: heavy vertices lose all edges to below-neighbors
            if deg_v > degree_bound:
                for u in sorted(orig.neighbors(v)):
                    if pos[u] < pos[v]:
                        any_removed |= state.remove((v, u), 1, v, report)
            if deg_v < sparsity_bound:
                # a nonempty family of size s fires only when s·β ≤ deg
                # (step 2) or s·β < deg (steps 3–4); impossible here
                continue
            any_removed |= _step2(state, v, radius, sparsity_bound, deg_v, report)
            any_removed |= _step34(state, v, h, sparsity_bound, weakness_bound, deg_v, 3, report)
            any_removed |= _step34(state, v, h, sparsity_bound, weakness_bound, deg_v, 4, report)
        if not any_removed:
            break
    trimmed = state.current()
    if len(trimmed.graph.edges()) != orig.m - report.total_removed:
        raise InternalInvariantError("trim report does not account for all removals")
    return trimmed, report


def verify_light_edges(
    trimmed: OrderedGraph, original: Graph, degree_bound: int
) -> tuple[bool, Optional[tuple[int, int]]]:
    """Every surviving edge has its upper endpoint light in the original.

    Returns (True, None) or (False, offending edge (upper, lower)).
    """
    pos = trimmed.order.position
    for a, b in sorted(trimmed.graph.edges()):
        upper, lower = (a, b) if pos[a] > pos[b] else (b, a)
        if original.degree(upper) > degree_bound:
            return False, (upper, lower)
    return True, None
