"""Order-admissibility machinery.

Admissible paths (descending end, ascending interior, bounded length),
target sets, maximum root-disjoint path packings, admissibility of an
order and of a graph, and chains with their unique decomposition into
admissible segments.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    BruteForceCapError,
    MissingEdgeError,
    NotAChainError,
    InternalInvariantError,
    ResourceBudgetError,
)
from .graphs import Graph, OrderedGraph, Ordering

Path = tuple[int, ...]

DEFAULT_PATH_CAP = 1_000_000
EXACT_ADMISSIBILITY_CAP = 9


def validate_path(g: OrderedGraph, p: Sequence[int]) -> Path:
    """Check simplicity and edge existence; returns the path as a tuple."""
    p = tuple(p)
    if len(p) != len(set(p)):
        raise MissingEdgeError(f"path {p} repeats a vertex")
    for a, b in zip(p, p[1:]):
        if not g.graph.has_edge(a, b):
            raise MissingEdgeError(f"edge ({a},{b}) not in graph")
    return p


def _admissible_shape(g: OrderedGraph, p: Path) -> bool:
    """End below start, all interior vertices above start (no length cap)."""
    if len(p) < 2:
        return False
    start, end = p[0], p[-1]
    if not g.lt(end, start):
        return False
    return all(g.lt(start, w) for w in p[1:-1])


def is_admissible_path(g: OrderedGraph, p: Sequence[int], r: int) -> bool:
    """Admissible path test: length ≤ r, end < start, interior > start."""
    p = validate_path(g, p)
    return len(p) - 1 <= r and _admissible_shape(g, p)


def target_set(g: OrderedGraph, v: int, i: int) -> set[int]:
    """Endpoints of admissible paths from v of length ≤ i.

    Single BFS in the region {v} ∪ {w : w > v}: a vertex u < v is an
    endpoint iff some region neighbor of u is within distance i−1 of v,
    since the region part of any admissible path is simple and its
    shortest realization never needs the endpoint.
    """
    if i < 1:
        raise ValueError("radius must be at least 1")
    pos = g.order.position
    pv = pos[v]
    dist = {v: 0}
    frontier = [v]
    d = 0
    while frontier and d < i - 1:
        nxt = []
        for w in frontier:
            for x in g.graph.neighbors(w):
                if pos[x] > pv and x not in dist:
                    dist[x] = d + 1
                    nxt.append(x)
        frontier = nxt
        d += 1
    out: set[int] = set()
    for w in dist:
        for u in g.graph.neighbors(w):
            if pos[u] < pv:
                out.add(u)
    return out


def enumerate_admissible_paths(
    g: OrderedGraph,
    v: int,
    r: int,
    cap: int = DEFAULT_PATH_CAP,
    end: Optional[int] = None,
    exact_length: Optional[int] = None,
) -> list[Path]:
    """All admissible paths from v of length ≤ r, deterministic order.

    Optional filters: fixed endpoint and exact length. Raises a resource
    error past ``cap`` paths.
    """
    pos = g.order.position
    pv = pos[v]
    out: list[Path] = []
    stack: list[int] = [v]
    on_stack = {v}

    def dfs() -> None:
        depth = len(stack) - 1
        for x in g.graph.neighbors(stack[-1]):
            if x in on_stack:
                continue
            if pos[x] < pv:
                if end is not None and x != end:
                    continue
                if exact_length is not None and depth + 1 != exact_length:
                    continue
                if len(out) >= cap:
                    raise ResourceBudgetError(
                        f"more than {cap} admissible paths from vertex {v}"
                    )
                out.append(tuple(stack) + (x,))
            elif depth + 1 < r and (exact_length is None or depth + 1 < exact_length):
                stack.append(x)
                on_stack.add(x)
                dfs()
                on_stack.discard(x)
                stack.pop()

    if r >= 1:
        dfs()
    return out


@dataclass
class PathPacking:
    """Root-disjoint family of admissible paths from a common root."""

    root: int
    paths: list[Path]

    @property
    def size(self) -> int:
        return len(self.paths)

    def check(self, g: OrderedGraph, r: int) -> None:
        used: set[int] = set()
        ends: set[int] = set()
        for p in self.paths:
            if p[0] != self.root or not is_admissible_path(g, p, r):
                raise InternalInvariantError(f"non-admissible packing path {p}")
            tail = set(p[1:])
            if used & tail or p[-1] in ends:
                raise InternalInvariantError("packing paths are not root-disjoint")
            used |= tail
            ends.add(p[-1])


def _flow_upper_bound(g: OrderedGraph, v: int) -> int:
    """Max root-disjoint descending-path count with the length cap dropped.

    Unit-capacity vertex-split max flow from v: interior vertices must be
    above v, endpoints below v; a valid relaxation of any packing.
    """
    pos = g.order.position
    pv = pos[v]
    # node encoding: ('in', x) / ('out', x); source = ('out', v); sink = 'T'
    cap: dict[tuple, dict[tuple, int]] = {}

    def add(a, b, c):
        cap.setdefault(a, {})[b] = cap.get(a, {}).get(b, 0) + c
        cap.setdefault(b, {}).setdefault(a, 0)

    source = ("out", v)
    sink = ("T",)
    for x in range(g.n):
        if pos[x] > pv:
            add(("in", x), ("out", x), 1)
        elif x != v:
            add(("in", x), sink, 1)
    for a, b in g.graph.edges():
        for s, t in ((a, b), (b, a)):
            if (s == v or pos[s] > pv) and t != v:
                add(("out", s), ("in", t), 1)
    flow = 0
    while True:
        # BFS augmenting path on the unit network
        parent = {source: None}
        queue = deque([source])
        found = False
        while queue and not found:
            a = queue.popleft()
            for b, c in cap.get(a, {}).items():
                if c > 0 and b not in parent:
                    parent[b] = a
                    if b == sink:
                        found = True
                        break
                    queue.append(b)
        if not found:
            return flow
        b = sink
        while parent[b] is not None:
            a = parent[b]
            cap[a][b] -= 1
            cap[b][a] += 1
            b = a
        flow += 1


def max_path_packing(
    g: OrderedGraph, v: int, r: int, cap: int = DEFAULT_PATH_CAP
) -> tuple[int, PathPacking]:
    """Exact maximum admissible path packing at root v, with witness.

    Branch and bound grouped by endpoint (endpoints are below v and can
    never be interior vertices, so the only cross-endpoint conflicts are
    interior overlaps); the flow relaxation caps the search.
    """
    paths = enumerate_admissible_paths(g, v, r, cap=cap)
    if not paths:
        return 0, PathPacking(v, [])
    by_end: dict[int, list[Path]] = {}
    for p in sorted(paths, key=lambda q: (len(q), q)):
        by_end.setdefault(p[-1], []).append(p)
    ends = sorted(by_end)
    ub_flow = _flow_upper_bound(g, v)

    best_size = 0
    best_paths: list[Path] = []
    chosen: list[Path] = []
    used: set[int] = set()

    def solve(idx: int) -> None:
        nonlocal best_size, best_paths
        if len(chosen) > best_size:
            best_size = len(chosen)
            best_paths = list(chosen)
        if best_size >= ub_flow or idx == len(ends):
            return
        if len(chosen) + (len(ends) - idx) <= best_size:
            return
        for p in by_end[ends[idx]]:
            if used.isdisjoint(p[1:-1]):
                interior = set(p[1:-1])
                used.update(interior)
                chosen.append(p)
                solve(idx + 1)
                chosen.pop()
                used.difference_update(interior)
                if best_size >= ub_flow:
                    return
        solve(idx + 1)  # skip this endpoint

    solve(0)
    packing = PathPacking(v, best_paths)
    packing.check(g, r)
    return best_size, packing


def admissibility_of_order(g: OrderedGraph, r: int, cap: int = DEFAULT_PATH_CAP) -> int:
    """Max over vertices of the maximum packing size under g's order."""
    return max((max_path_packing(g, v, r, cap=cap)[0] for v in range(g.n)), default=0)


def _packing_with_below_set(g: Graph, v: int, below: frozenset[int], r: int) -> int:
    """Packing size at v when exactly ``below`` precedes v in the order.

    Admissibility at v only distinguishes below-v from above-v, so any
    order consistent with the split gives the same value.
    """
    rest = [x for x in range(g.n) if x != v and x not in below]
    order = Ordering(sorted(below) + [v] + sorted(rest))
    return max_path_packing(OrderedGraph(g, order), v, r)[0]


def exact_admissibility(
    g: Graph, r: int, cap: int = EXACT_ADMISSIBILITY_CAP
) -> tuple[int, Ordering]:
    """Minimum over all vertex orders of the order admissibility.

    Dynamic program over vertex subsets: a subset T forming the lowest
    |T| positions has optimum min over choices of its top vertex v of
    max(optimum of T\\{v}, packing size of v over below-set T\\{v}).
    Equivalent to brute force over all |V|! orders.
    """
    n = g.n
    if n > cap:
        raise BruteForceCapError(
            f"exact admissibility capped at {cap} vertices "
            f"(got {n}); use greedy_admissibility_order"
        )
    if n == 0:
        return 0, Ordering([])
    all_verts = list(range(n))
    f: dict[int, int] = {0: 0}
    choice: dict[int, int] = {}
    masks_by_popcount: list[list[int]] = [[] for _ in range(n + 1)]
    for mask in range(1, 1 << n):
        masks_by_popcount[bin(mask).count("1")].append(mask)
    for k in range(1, n + 1):
        for mask in masks_by_popcount[k]:
            best = None
            best_v = -1
            for v in all_verts:
                if not (mask >> v) & 1:
                    continue
                rest_mask = mask ^ (1 << v)
                below = frozenset(x for x in all_verts if (rest_mask >> x) & 1)
                val = max(f[rest_mask], _packing_with_below_set(g, v, below, r))
                if best is None or val < best:
                    best, best_v = val, v
            f[mask] = best  # type: ignore[assignment]
            choice[mask] = best_v
    seq = [0] * n
    mask = (1 << n) - 1
    pos = n - 1
    while mask:
        v = choice[mask]
        seq[pos] = v
        mask ^= 1 << v
        pos -= 1
    return f[(1 << n) - 1], Ordering(seq)


def greedy_admissibility_order(g: Graph, r: int) -> tuple[Ordering, int]:
    """Right-to-left greedy order; ties break toward the smallest id.

    Repeatedly places, at the highest open position, the unplaced vertex
    whose packing size over the remaining (lower) vertices is minimal.
    Returns the order and the admissibility it achieves.
    """
    n = g.n
    remaining = set(range(n))
    seq = [0] * n
    achieved = 0
    for pos in range(n - 1, -1, -1):
        best_v = -1
        best_val = None
        for v in sorted(remaining):
            below = frozenset(remaining - {v})
            val = _packing_with_below_set(g, v, below, r)
            if best_val is None or val < best_val:
                best_val, best_v = val, v
        seq[pos] = best_v
        remaining.discard(best_v)
        achieved = max(achieved, best_val)  # type: ignore[arg-type]
    return Ordering(seq), achieved


# ---------------------------------------------------------------------------
# chains


def is_chain(g: OrderedGraph, p: Sequence[int], r: int) -> bool:
    """Chain test: prefix stays above the end, no admissible subpath
    (in either traversal direction) longer than r."""
    p = validate_path(g, p)
    if len(p) < 2:
        return False
    end = p[-1]
    if not all(g.lt(end, w) for w in p[:-1]):
        return False
    m = len(p)
    for i in range(m):
        for j in range(i + r + 1, m):
            seg = p[i : j + 1]
            if _admissible_shape(g, seg) or _admissible_shape(g, seg[::-1]):
                return False
    return True


@dataclass
class ChainDecomposition:
    segments: list[Path]

    def concatenated(self) -> Path:
        out = list(self.segments[0])
        for seg in self.segments[1:]:
            out.extend(seg[1:])
        return tuple(out)


def chain_decomposition(g: OrderedGraph, p: Sequence[int], r: int) -> ChainDecomposition:
    """Unique split of a chain into admissible segments.

    Each segment runs from its start to the next vertex on the path that
    lies below that start; the chain property makes every such segment
    admissible of length ≤ r.
    """
    p = validate_path(g, p)
    if not is_chain(g, p, r):
        raise NotAChainError(f"path {p} is not a chain at radius {r}")
    segments: list[Path] = []
    i = 0
    while i < len(p) - 1:
        start = p[i]
        j = next(k for k in range(i + 1, len(p)) if g.lt(p[k], start))
        seg = p[i : j + 1]
        if not (_admissible_shape(g, seg) and len(seg) - 1 <= r):
            raise InternalInvariantError(f"segment {seg} of chain {p} not admissible")
        segments.append(seg)
        i = j
    return ChainDecomposition(segments)


def enumerate_chains(
    g: OrderedGraph, x: int, r: int, max_length: int, cap: int = DEFAULT_PATH_CAP
) -> list[Path]:
    """All chains from x of length ≤ max_length ending below x."""
    pos = g.order.position
    out: list[Path] = []
    stack = [x]
    on_stack = {x}

    def dfs() -> None:
        if len(stack) >= 2:
            end = stack[-1]
            if all(pos[w] > pos[end] for w in stack[:-1]) and is_chain(g, tuple(stack), r):
                if pos[end] < pos[x]:
                    if len(out) >= cap:
                        raise ResourceBudgetError(f"more than {cap} chains from {x}")
                    out.append(tuple(stack))
        if len(stack) - 1 >= max_length:
            return
        for y in g.graph.neighbors(stack[-1]):
            if y not in on_stack:
                stack.append(y)
                on_stack.add(y)
                dfs()
                on_stack.discard(y)
                stack.pop()

    dfs()
    return out
