"""Structural objects over a fixed ordered host graph and a pattern.

Prefixes and useful pairs inside pattern copies, similarity of useful
pairs, stratas (families of similar useful pairs, edge-disjoint outside
the shared prefix), nadirs and their weak/strong classification, spines
and stability — all by exhaustive construction at small scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from .errors import ResourceBudgetError
from .graphs import (
    EnumerationResult,
    Graph,
    OrderedGraph,
    OrderedSubgraph,
    enumerate_h_subgraphs,
    is_order_isomorphic,
)

DEFAULT_HOST_CAP = 100_000
DEFAULT_CANDIDATE_CAP = 100_000
DEFAULT_NODE_BUDGET = 2_000_000


@dataclass(frozen=True)
class UsefulPair:
    """An induced ordered subgraph of a pattern copy plus its prefix."""

    subgraph: OrderedSubgraph
    prefix: frozenset[int]

    @property
    def body(self) -> frozenset[int]:
        return self.subgraph.vertices - self.prefix

    def key(self):
        return (frozenset(self.subgraph.vertices), frozenset(self.subgraph.edge_set), self.prefix)

    def sort_key(self):
        return (sorted(self.subgraph.vertices), sorted(self.subgraph.edge_set), sorted(self.prefix))


@dataclass
class Strata:
    members: list[UsefulPair]
    prefix: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.members)

    def nadir_set(self) -> set[int]:
        return {nadir(m) for m in self.members}

    def all_edges(self) -> set[tuple[int, int]]:
        out: set[tuple[int, int]] = set()
        for m in self.members:
            out |= m.subgraph.edge_set
        return out


@dataclass
class Spine:
    pairs: list[UsefulPair]


def _is_induced_in(j: OrderedSubgraph, gp: OrderedSubgraph) -> bool:
    if not gp.vertices <= j.vertices:
        return False
    expected = {e for e in j.edge_set if e[0] in gp.vertices and e[1] in gp.vertices}
    return gp.edge_set == expected


def _connected_in(j: OrderedSubgraph, subset: frozenset[int]) -> bool:
    """Connectivity of j's induced subgraph on ``subset`` (empty → False)."""
    if not subset:
        return False
    adj: dict[int, list[int]] = {v: [] for v in subset}
    for a, b in j.edge_set:
        if a in subset and b in subset:
            adj[a].append(b)
            adj[b].append(a)
    start = next(iter(subset))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(subset)


def is_prefix(j: OrderedSubgraph, gp: OrderedSubgraph, d: Iterable[int]) -> bool:
    """Prefix test against the host pattern copy j.

    Conditions: d nonempty inside V(gp); every d-vertex has a gp-edge out
    of d; everything outside d is above everything in d; every gp-vertex
    with a j-neighbor outside gp belongs to d.
    """
    d = frozenset(d)
    if not d or not d <= gp.vertices:
        return False
    outside = gp.vertices - d
    parent = gp.parent
    for u in d:
        if not any((v in outside) for v in gp.neighbors_in(u)):
            return False
    if d and outside:
        max_d = max(parent.rank(u) for u in d)
        if any(parent.rank(v) < max_d for v in outside):
            return False
    for a, b in j.edge_set:
        for v, w in ((a, b), (b, a)):
            if v in gp.vertices and w not in gp.vertices and v not in d:
                return False
    return True


def is_useful_pair(j: OrderedSubgraph, gp: OrderedSubgraph, u: Iterable[int]) -> bool:
    """Useful pair: gp induced in j, u a prefix, and j on body connected."""
    u = frozenset(u)
    if not _is_induced_in(j, gp):
        return False
    if not is_prefix(j, gp, u):
        return False
    return _connected_in(j, gp.vertices - u)


def are_similar(p1: UsefulPair, p2: UsefulPair) -> bool:
    """Equal prefixes plus the positional order-isomorphism fixing them."""
    if p1.prefix != p2.prefix:
        return False
    ok, phi = is_order_isomorphic(p1.subgraph, p2.subgraph)
    if not ok:
        return False
    return {phi[u] for u in p1.prefix} == set(p2.prefix)


def nadir(p: UsefulPair) -> int:
    """Order-minimum vertex of the body; undefined for an empty body."""
    body = p.body
    if not body:
        raise ValueError("useful pair with empty body has no nadir")
    return p.subgraph.parent.min_vertex(body)


def spine(j: OrderedSubgraph, u: Iterable[int]) -> Spine:
    """All useful pairs of j whose vertex set meets u exactly in the prefix."""
    u = frozenset(u)
    verts = sorted(j.vertices)
    pairs: list[UsefulPair] = []
    for k in range(1, len(verts) + 1):
        for subset in combinations(verts, k):
            s = frozenset(subset)
            prefix = s & u
            if not prefix:
                continue
            gp = j.induce(s)
            if is_useful_pair(j, gp, prefix):
                pairs.append(UsefulPair(gp, prefix))
    pairs.sort(key=UsefulPair.sort_key)
    return Spine(pairs)


def is_stable(j: OrderedSubgraph, u: Iterable[int]) -> bool:
    """True iff the spine bodies cover every j-vertex outside u."""
    u = frozenset(u)
    covered: set[int] = set()
    for p in spine(j, u).pairs:
        covered |= p.body
    return (j.vertices - u) <= covered


def enumerate_useful_pairs(
    g: OrderedGraph, h: Graph, host_cap: int = DEFAULT_HOST_CAP,
    pair_cap: int = DEFAULT_CANDIDATE_CAP,
) -> list[tuple[OrderedSubgraph, UsefulPair]]:
    """Every (pattern copy, useful pair) of g, exhaustively, deduplicated
    only per host copy; deterministic order."""
    hosts: EnumerationResult = enumerate_h_subgraphs(g, h, cap=host_cap)
    if not hosts.complete:
        raise ResourceBudgetError("too many pattern copies for useful-pair enumeration")
    out: list[tuple[OrderedSubgraph, UsefulPair]] = []
    for j in hosts.subgraphs:
        verts = sorted(j.vertices)
        for k in range(1, len(verts) + 1):
            for subset in combinations(verts, k):
                s = frozenset(subset)
                gp = j.induce(s)
                for dk in range(1, len(subset) + 1):
                    for dsub in combinations(subset, dk):
                        d = frozenset(dsub)
                        if is_useful_pair(j, gp, d):
                            out.append((j, UsefulPair(gp, d)))
                            if len(out) > pair_cap:
                                raise ResourceBudgetError(
                                    "useful-pair enumeration budget exceeded"
                                )
    return out


def _strata_candidates(
    g: OrderedGraph,
    h: Graph,
    u: frozenset[int],
    template: UsefulPair,
    nadir_equals: Optional[int] = None,
    host_cap: int = DEFAULT_HOST_CAP,
    candidate_cap: int = DEFAULT_CANDIDATE_CAP,
) -> list[UsefulPair]:
    """All useful pairs of g with prefix u similar to the template
    (optionally with a fixed nadir), deduplicated, deterministic order."""
    hosts = enumerate_h_subgraphs(g, h, cap=host_cap)
    if not hosts.complete:
        raise ResourceBudgetError("too many pattern copies for strata search")
    found: dict = {}
    for j in hosts.subgraphs:
        if not u <= j.vertices:
            continue
        others = sorted(j.vertices - u)
        for k in range(len(others) + 1):
            for extra in combinations(others, k):
                s = u | frozenset(extra)
                gp = j.induce(s)
                cand = UsefulPair(gp, u)
                key = cand.key()
                if key in found:
                    continue
                if not is_useful_pair(j, gp, u):
                    continue
                if not are_similar(cand, template):
                    continue
                if nadir_equals is not None and nadir(cand) != nadir_equals:
                    continue
                found[key] = cand
                if len(found) > candidate_cap:
                    raise ResourceBudgetError("strata candidate budget exceeded")
    return sorted(found.values(), key=UsefulPair.sort_key)


def _outside_prefix_edges(p: UsefulPair) -> frozenset[tuple[int, int]]:
    u = p.prefix
    return frozenset(e for e in p.subgraph.edge_set if not (e[0] in u and e[1] in u))


def max_disjoint_edge_sets(
    edge_sets: list[frozenset], node_budget: int = DEFAULT_NODE_BUDGET
) -> list[int]:
    """Indices of a maximum pairwise-disjoint sub-collection.

    Deterministic branch and bound in input order; the returned index
    list is sorted ascending.
    """
    n = len(edge_sets)
    best: list[int] = []
    chosen: list[int] = []
    used: set = set()
    nodes = 0
    # explicit include-first depth-first search (candidate lists can be
    # far deeper than the interpreter recursion limit)
    ENTER, AFTER_INCLUDE, DONE = 0, 1, 2
    stack = [[0, ENTER]]
    while stack:
        frame = stack[-1]
        idx, stage = frame
        if stage == ENTER:
            nodes += 1
            if nodes > node_budget:
                raise ResourceBudgetError("disjoint-family selection budget exceeded")
            if len(chosen) > len(best):
                best = list(chosen)
            if idx == n or len(chosen) + (n - idx) <= len(best):
                stack.pop()
                continue
            es = edge_sets[idx]
            if used.isdisjoint(es):
                used.update(es)
                chosen.append(idx)
                frame[1] = AFTER_INCLUDE
            else:
                frame[1] = DONE
            stack.append([idx + 1, ENTER])
        elif stage == AFTER_INCLUDE:
            chosen.pop()
            used.difference_update(edge_sets[idx])
            frame[1] = DONE
            stack.append([idx + 1, ENTER])
        else:
            stack.pop()
    return best


def lex_least_max_disjoint(
    edge_sets: list[frozenset], node_budget: int = DEFAULT_NODE_BUDGET
) -> list[int]:
    """Lexicographically least (by index sequence) maximum disjoint
    sub-collection: commit the earliest index whenever a completion to
    maximum size still exists."""
    target = len(max_disjoint_edge_sets(edge_sets, node_budget=node_budget))
    chosen: list[int] = []
    used: set = set()
    pool = list(range(len(edge_sets)))
    while len(chosen) < target:
        for i in list(pool):
            if not used.isdisjoint(edge_sets[i]):
                pool.remove(i)
                continue
            rest = [
                edge_sets[j]
                for j in pool
                if j > i
                and used.isdisjoint(edge_sets[j])
                and edge_sets[i].isdisjoint(edge_sets[j])
            ]
            if 1 + len(max_disjoint_edge_sets(rest, node_budget=node_budget)) >= target - len(chosen):
                chosen.append(i)
                used |= edge_sets[i]
                pool = [j for j in pool if j > i]
                break
        else:  # pragma: no cover - unreachable if target is correct
            raise ResourceBudgetError("failed to realize the maximum disjoint family")
    return chosen


def _max_edge_disjoint_family(
    candidates: list[UsefulPair], node_budget: int = DEFAULT_NODE_BUDGET
) -> list[UsefulPair]:
    """Exact maximum sub-family whose members share no edge outside the
    prefix; deterministic branch and bound over the candidate order."""
    edge_sets = [_outside_prefix_edges(c) for c in candidates]
    idxs = max_disjoint_edge_sets(edge_sets, node_budget=node_budget)
    return [candidates[i] for i in idxs]


def max_strata(
    g: OrderedGraph,
    h: Graph,
    u: Iterable[int],
    template: UsefulPair,
    nadir_equals: Optional[int] = None,
    host_cap: int = DEFAULT_HOST_CAP,
    candidate_cap: int = DEFAULT_CANDIDATE_CAP,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> Strata:
    """Maximum-cardinality strata with prefix u, members similar to the
    template, optionally restricted to a single fixed nadir."""
    u = frozenset(u)
    candidates = _strata_candidates(
        g, h, u, template, nadir_equals=nadir_equals,
        host_cap=host_cap, candidate_cap=candidate_cap,
    )
    members = _max_edge_disjoint_family(candidates, node_budget=node_budget)
    return Strata(sorted(members, key=UsefulPair.sort_key), u)


def classify_nadir(
    g: OrderedGraph, h: Graph, strata: Strata, v: int, delta: int, **search_kwargs
) -> str:
    """'weak' iff the maximum single-nadir strata at v (same prefix and
    template) has size ≤ deg(max prefix)/δ in the host graph; else 'strong'.

    Exact integer comparison: size·δ ≤ deg.
    """
    if v not in strata.nadir_set():
        raise ValueError(f"vertex {v} is not a nadir of the strata")
    template = strata.members[0]
    single = max_strata(g, h, strata.prefix, template, nadir_equals=v, **search_kwargs)
    top = g.max_vertex(strata.prefix)
    deg = g.graph.degree(top)
    return "weak" if single.size * delta <= deg else "strong"


def is_weakness_strata(
    g: OrderedGraph, h: Graph, strata: Strata, delta: int, **search_kwargs
) -> bool:
    """True iff every nadir of the strata classifies as weak."""
    return all(
        classify_nadir(g, h, strata, v, delta, **search_kwargs) == "weak"
        for v in sorted(strata.nadir_set())
    )


def extract_vertex_disjoint_substrata(strata: Strata, target: int) -> tuple[Strata, bool]:
    """Greedy sub-family whose members pairwise intersect exactly in the
    prefix (hence have distinct nadirs).

    Returns (sub-strata, shortfall) where shortfall is True when fewer
    than ``target`` members could be selected.
    """
    taken: list[UsefulPair] = []
    used_body: set[int] = set()
    for m in strata.members:
        if used_body.isdisjoint(m.body):
            taken.append(m)
            used_body |= m.body
    return Strata(taken, strata.prefix), len(taken) < target
