"""Simple undirected graphs, total vertex orders, subgraph machinery.

Covers parsing/serialization, induced ordered subgraphs, the positional
order-isomorphism test, pattern-subgraph enumeration and exact edge-deletion
distance to pattern-freeness.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import (
    BruteForceCapError,
    DuplicateEdgeError,
    MalformedHeaderError,
    ParseError,
    SelfLoopError,
    VertexRangeError,
)


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1."""

    __slots__ = ("n", "_adj", "_edge_set")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise VertexRangeError(f"negative vertex count {n}")
        adj: list[list[int]] = [[] for _ in range(n)]
        edge_set: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n) or not (0 <= v < n):
                raise VertexRangeError(f"edge ({u},{v}) outside [0,{n})")
            if u == v:
                raise SelfLoopError(f"self-loop at {u}")
            e = _norm_edge(u, v)
            if e in edge_set:
                raise DuplicateEdgeError(f"duplicate edge ({u},{v})")
            edge_set.add(e)
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self._adj = tuple(tuple(sorted(nbrs)) for nbrs in adj)
        self._edge_set = frozenset(edge_set)

    @property
    def m(self) -> int:
        return len(self._edge_set)

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self._edge_set

    def edges(self) -> frozenset[tuple[int, int]]:
        return self._edge_set

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self._edge_set)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self._edge_set == other._edge_set

    def __hash__(self) -> int:
        return hash((self.n, self._edge_set))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for u in self._adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.n

    def to_edge_list_text(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{u} {v}" for u, v in self.sorted_edges())
        return "\n".join(lines) + "\n"

    def to_json_doc(self, order: Optional["Ordering"] = None) -> str:
        doc: dict = {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}
        if order is not None:
            doc["order"] = list(order.sequence)
        return json.dumps(doc, separators=(",", ":"), sort_keys=True) + "\n"


class Ordering:
    """Total order on [0,n): sequence[k] is the vertex at rank k."""

    __slots__ = ("sequence", "position")

    def __init__(self, sequence: Sequence[int]):
        seq = tuple(sequence)
        n = len(seq)
        pos = [-1] * n
        for rank, v in enumerate(seq):
            if not (0 <= v < n) or pos[v] != -1:
                raise VertexRangeError(f"sequence is not a permutation of [0,{n})")
            pos[v] = rank
        self.sequence = seq
        self.position = tuple(pos)

    @classmethod
    def identity(cls, n: int) -> "Ordering":
        return cls(range(n))

    def rank(self, v: int) -> int:
        return self.position[v]

    def __eq__(self, other) -> bool:
        return isinstance(other, Ordering) and self.sequence == other.sequence

    def __hash__(self) -> int:
        return hash(self.sequence)

    def __repr__(self) -> str:
        return f"Ordering({list(self.sequence)})"


class OrderedGraph:
    """A graph together with a total vertex order."""

    __slots__ = ("graph", "order")

    def __init__(self, graph: Graph, order: Optional[Ordering] = None):
        if order is None:
            order = Ordering.identity(graph.n)
        if len(order.sequence) != graph.n:
            raise VertexRangeError("order does not cover the vertex set")
        self.graph = graph
        self.order = order

    @property
    def n(self) -> int:
        return self.graph.n

    def rank(self, v: int) -> int:
        return self.order.position[v]

    def lt(self, u: int, v: int) -> bool:
        return self.order.position[u] < self.order.position[v]

    def sort_by_order(self, vertices: Iterable[int]) -> list[int]:
        return sorted(vertices, key=self.order.position.__getitem__)

    def min_vertex(self, vertices: Iterable[int]) -> int:
        return min(vertices, key=self.order.position.__getitem__)

    def max_vertex(self, vertices: Iterable[int]) -> int:
        return max(vertices, key=self.order.position.__getitem__)

    def full_subgraph(self) -> "OrderedSubgraph":
        return OrderedSubgraph(self, frozenset(range(self.n)), self.graph.edges())


class OrderedSubgraph:
    """A (not necessarily induced) subgraph of an ordered graph.

    The order is inherited from the parent; edges are an explicit subset of
    parent edges with both endpoints inside ``vertices``.
    """

    __slots__ = ("parent", "vertices", "edge_set")

    def __init__(self, parent: OrderedGraph, vertices: Iterable[int], edges: Iterable[tuple[int, int]]):
        vs = frozenset(vertices)
        for v in vs:
            if not (0 <= v < parent.n):
                raise VertexRangeError(f"vertex {v} outside parent")
        es = frozenset(_norm_edge(u, v) for u, v in edges)
        for u, v in es:
            if u not in vs or v not in vs:
                raise VertexRangeError(f"edge ({u},{v}) leaves the vertex subset")
            if not parent.graph.has_edge(u, v):
                raise VertexRangeError(f"edge ({u},{v}) not in parent graph")
        self.parent = parent
        self.vertices = vs
        self.edge_set = es

    def sorted_vertices(self) -> list[int]:
        return self.parent.sort_by_order(self.vertices)

    def neighbors_in(self, v: int) -> list[int]:
        out = []
        for u, w in self.edge_set:
            if u == v:
                out.append(w)
            elif w == v:
                out.append(u)
        return sorted(out)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edge_set if v in e)

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edge_set

    def induce(self, subset: Iterable[int]) -> "OrderedSubgraph":
        vs = frozenset(subset)
        if not vs <= self.vertices:
            raise VertexRangeError("subset leaves the subgraph")
        es = frozenset(e for e in self.edge_set if e[0] in vs and e[1] in vs)
        return OrderedSubgraph(self.parent, vs, es)

    def min_vertex(self) -> int:
        return self.parent.min_vertex(self.vertices)

    def as_graph(self) -> tuple[Graph, dict[int, int]]:
        """Relabelled standalone graph plus the local->parent vertex map."""
        verts = sorted(self.vertices)
        idx = {v: i for i, v in enumerate(verts)}
        g = Graph(len(verts), [(idx[u], idx[v]) for u, v in self.edge_set])
        return g, {i: v for v, i in idx.items()}

    def key(self) -> tuple[frozenset, frozenset]:
        return (self.vertices, self.edge_set)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, OrderedSubgraph)
            and self.parent is other.parent
            and self.vertices == other.vertices
            and self.edge_set == other.edge_set
        )

    def __hash__(self) -> int:
        return hash((id(self.parent), self.vertices, self.edge_set))

    def __repr__(self) -> str:
        return f"OrderedSubgraph(V={sorted(self.vertices)}, E={sorted(self.edge_set)})"


# ---------------------------------------------------------------------------
# parsing / writing


def parse_graph(data) -> Graph:
    """Parse either the edge-list text format or the JSON document format."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    stripped = data.lstrip()
    if stripped.startswith("{"):
        g, _ = parse_json_graph(data)
        return g
    return parse_edge_list(data)


def parse_edge_list(text: str) -> Graph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise MalformedHeaderError("empty input")
    header = lines[0].split()
    if len(header) != 2:
        raise MalformedHeaderError(f"header must be 'n m', got {lines[0]!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise MalformedHeaderError(f"non-integer header {lines[0]!r}") from None
    if len(lines) - 1 != m:
        raise MalformedHeaderError(f"expected {m} edge lines, got {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError(f"bad edge line {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer edge line {ln!r}") from None
        edges.append((u, v))
    return Graph(n, edges)


def parse_json_graph(text: str) -> tuple[Graph, Optional[Ordering]]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "n" not in doc or "edges" not in doc:
        raise MalformedHeaderError("JSON graph needs 'n' and 'edges'")
    g = Graph(int(doc["n"]), [tuple(e) for e in doc["edges"]])
    order = None
    if doc.get("order") is not None:
        order = Ordering(doc["order"])
    return g, order


# ---------------------------------------------------------------------------
# order-isomorphism


def is_order_isomorphic(j1: OrderedSubgraph, j2: OrderedSubgraph):
    """Positional order-isomorphism test.

    The total orders force a unique candidate bijection (pair the vertex
    sets sorted by their orders); returns (True, mapping) iff that
    bijection is a graph isomorphism, else (False, None).
    """
    v1 = j1.sorted_vertices()
    v2 = j2.sorted_vertices()
    if len(v1) != len(v2) or len(j1.edge_set) != len(j2.edge_set):
        return False, None
    phi = dict(zip(v1, v2))
    mapped = frozenset(_norm_edge(phi[u], phi[v]) for u, v in j1.edge_set)
    if mapped != j2.edge_set:
        return False, None
    return True, phi


# ---------------------------------------------------------------------------
# pattern-subgraph enumeration


@dataclass
class EnumerationResult:
    subgraphs: list
    complete: bool  # False iff the cap was hit before exhaustion

    def __len__(self) -> int:
        return len(self.subgraphs)


def _pattern_order(h: Graph) -> list[int]:
    """BFS order of the pattern so every vertex attaches to an earlier one."""
    order = [0]
    seen = {0}
    i = 0
    while i < len(order):
        for u in h.neighbors(order[i]):
            if u not in seen:
                seen.add(u)
                order.append(u)
        i += 1
    if len(order) != h.n:
        raise ValueError("pattern must be connected")
    return order


def enumerate_h_copies(g: Graph, h: Graph, cap: int = 1_000_000) -> EnumerationResult:
    """All distinct copies of h in g, as (vertexset, edgeset) pairs.

    A copy is a subgraph of g isomorphic to h; copies with identical
    vertex and edge sets are reported once. Deterministic lexicographic
    branching. ``complete`` is False when the cap stopped enumeration.
    """
    if h.n < 2 or not h.is_connected():
        raise ValueError("pattern must be connected with at least 2 vertices")
    order = _pattern_order(h)
    anchor = {}  # pattern vertex -> earlier pattern neighbor guiding candidates
    placed: set[int] = set()
    for hv in order:
        back = [u for u in h.neighbors(hv) if u in placed]
        anchor[hv] = back
        placed.add(hv)

    results: list[tuple[frozenset, frozenset]] = []
    seen: set[tuple[frozenset, frozenset]] = set()
    mapping: dict[int, int] = {}
    used: set[int] = set()
    complete = True

    def extend(idx: int) -> bool:
        """Returns False to abort the whole search (cap reached)."""
        nonlocal complete
        if idx == len(order):
            vs = frozenset(mapping.values())
            es = frozenset(_norm_edge(mapping[a], mapping[b]) for a, b in h.edges())
            key = (vs, es)
            if key not in seen:
                if len(results) >= cap:
                    complete = False
                    return False
                seen.add(key)
                results.append(key)
            return True
        hv = order[idx]
        back = anchor[hv]
        if back:
            # anchor on the lowest-degree placed neighbor to keep the
            # candidate set small in the presence of hub vertices
            best = min((mapping[hb] for hb in back), key=g.degree)
            cands = sorted(set(g.neighbors(best)) - used)
        else:
            cands = range(g.n)
        hdeg = h.degree(hv)
        for gv in cands:
            if gv in used or g.degree(gv) < hdeg:
                continue
            ok = True
            for hb in back:
                if not g.has_edge(mapping[hb], gv):
                    ok = False
                    break
            if not ok:
                continue
            mapping[hv] = gv
            used.add(gv)
            alive = extend(idx + 1)
            used.discard(gv)
            del mapping[hv]
            if not alive:
                return False
        return True

    extend(0)
    return EnumerationResult(results, complete)


def enumerate_h_subgraphs(g: OrderedGraph, h: Graph, cap: int = 1_000_000) -> EnumerationResult:
    """Copies of h in g returned as ordered subgraphs with inherited order."""
    raw = enumerate_h_copies(g.graph, h, cap=cap)
    subs = [OrderedSubgraph(g, vs, es) for vs, es in raw.subgraphs]
    return EnumerationResult(subs, raw.complete)


# ---------------------------------------------------------------------------
# distance to pattern-freeness


@dataclass
class DistanceResult:
    lower_bound: int  # from a maximal edge-disjoint copy packing
    upper_bound: int  # from the best hitting set found
    exact: bool       # True iff upper_bound is the exact distance
    packing: list = field(default_factory=list)

    @property
    def value(self) -> int:
        if not self.exact:
            raise BruteForceCapError("exact distance not established; use the bounds")
        return self.upper_bound


def greedy_copy_packing(copies: Sequence[frozenset]) -> list[frozenset]:
    """Deterministic maximal edge-disjoint sub-collection of copy edge-sets."""
    taken: list[frozenset] = []
    used: set = set()
    for es in sorted(copies, key=sorted):
        if used.isdisjoint(es):
            taken.append(es)
            used |= es
    return taken


def distance_to_h_freeness(g: Graph, h: Graph, node_budget: int = 200_000,
                           copy_cap: int = 200_000) -> DistanceResult:
    """Edge-deletion distance from g to h-freeness.

    Exact value by branch-and-bound over hitting sets of the enumerated
    copies; always reports the packing lower bound, and falls back to a
    bounds interval when the node budget runs out.
    """
    copies_res = enumerate_h_copies(g, h, cap=copy_cap)
    if not copies_res.complete:
        raise BruteForceCapError("too many pattern copies to enumerate")
    copies = copies_res.subgraphs
    packing = greedy_copy_packing([es for _, es in copies])
    lb_packing = len(packing)
    if not copies:
        return DistanceResult(0, 0, True, packing)

    copy_edge_sets = [es for _, es in copies]
    best = [len(set().union(*copy_edge_sets))]  # delete every participating edge
    nodes = [0]
    exact = [True]

    def packing_bound(remaining: list[frozenset]) -> int:
        return len(greedy_copy_packing(remaining))

    def solve(remaining: list[frozenset], deleted: int) -> None:
        nodes[0] += 1
        if nodes[0] > node_budget:
            exact[0] = False
            return
        if not remaining:
            if deleted < best[0]:
                best[0] = deleted
            return
        if deleted + packing_bound(remaining) >= best[0]:
            return
        target = min(remaining, key=lambda es: (len(es), sorted(es)))
        for edge in sorted(target):
            nxt = [es for es in remaining if edge not in es]
            solve(nxt, deleted + 1)

    solve(copy_edge_sets, 0)
    return DistanceResult(lb_packing, best[0], exact[0], packing)
