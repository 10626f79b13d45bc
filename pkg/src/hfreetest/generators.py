"""Seeded instance generators with re-verifiable certificates.

Every generated test instance carries an InstanceCertificate recording
an edge-disjoint pattern-copy packing (a farness lower bound) and,
when requested, an explicit vertex order witnessing an admissibility
bound — both re-checkable against the analysis modules.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .admissibility import admissibility_of_order, exact_admissibility, greedy_admissibility_order
from .errors import GenerationError
from .graphs import Graph, OrderedGraph, Ordering, _norm_edge, enumerate_h_copies
from .rng import SplitMix64


def pattern_graph(name: str) -> Graph:
    """Small named patterns used throughout tests and experiments."""
    name = name.strip().lower()
    table = {
        "edge": (2, [(0, 1)]),
        "p2": (2, [(0, 1)]),
        "k3": (3, [(0, 1), (0, 2), (1, 2)]),
        "triangle": (3, [(0, 1), (0, 2), (1, 2)]),
        "p3": (3, [(0, 1), (1, 2)]),
        "c4": (4, [(0, 1), (1, 2), (2, 3), (0, 3)]),
        "paw": (4, [(0, 1), (0, 2), (1, 2), (2, 3)]),
        "k4": (4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        "p4": (4, [(0, 1), (1, 2), (2, 3)]),
    }
    if name not in table:
        raise GenerationError(f"unknown pattern {name!r}; known: {sorted(table)}")
    n, edges = table[name]
    return Graph(n, edges)


@dataclass
class InstanceCertificate:
    """Re-verifiable claims about a generated instance."""

    generator: str
    params: dict
    seed: Optional[int]
    n: int
    pattern_edges: list[tuple[int, int]]            # the pattern as an edge list
    farness_lower_bound: int
    packing: list[list[tuple[int, int]]]            # edge-disjoint copy edge sets
    adm_radius: Optional[int] = None
    adm_bound: Optional[int] = None
    adm_order: Optional[list[int]] = None           # order achieving the bound

    def verify(self, g: Graph) -> None:
        """Re-check every claim; raises GenerationError on any failure."""
        pat_n = 1 + max((v for e in self.pattern_edges for v in e), default=0)
        pattern = Graph(pat_n, self.pattern_edges)
        used: set[tuple[int, int]] = set()
        for copy_edges in self.packing:
            edges = [_norm_edge(a, b) for a, b in copy_edges]
            if any(not g.has_edge(a, b) for a, b in edges):
                raise GenerationError("certificate packing edge missing from graph")
            if used & set(edges):
                raise GenerationError("certificate packing is not edge-disjoint")
            used |= set(edges)
            verts = sorted({v for e in edges for v in e})
            idx = {v: i for i, v in enumerate(verts)}
            member = Graph(len(verts), [(idx[a], idx[b]) for a, b in edges])
            if not enumerate_h_copies(member, pattern, cap=1).subgraphs:
                raise GenerationError("certificate packing member is not a pattern copy")
        if len(self.packing) < self.farness_lower_bound:
            raise GenerationError("packing smaller than the claimed farness bound")
        if self.adm_bound is not None:
            if self.adm_order is None or self.adm_radius is None:
                raise GenerationError("admissibility claim without an order witness")
            got = admissibility_of_order(OrderedGraph(g, Ordering(self.adm_order)), self.adm_radius)
            if got > self.adm_bound:
                raise GenerationError(
                    f"witness order achieves admissibility {got} > claimed {self.adm_bound}"
                )


def subdivide(g: Graph, t: int) -> Graph:
    """Replace every edge by a path of t edges through t−1 fresh vertices."""
    if t < 1:
        raise ValueError("subdivision length must be at least 1")
    if t == 1:
        return Graph(g.n, g.edges())
    edges: list[tuple[int, int]] = []
    nxt = g.n
    for a, b in g.sorted_edges():
        prev = a
        for _ in range(t - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, b))
    return Graph(nxt, edges)


def disjoint_copies(
    h: Graph, k: int, pad: int = 0, radius: Optional[int] = None
) -> tuple[Graph, InstanceCertificate]:
    """k vertex-disjoint copies of h plus pad isolated vertices.

    The copies form an edge-disjoint packing, so the distance to
    h-freeness is at least k. With ``radius`` given (and h small) the
    certificate also carries an admissibility witness built by ordering
    each copy by h's optimal order.
    """
    if k < 1 or pad < 0:
        raise GenerationError("need at least one copy and nonnegative padding")
    n = h.n * k + pad
    edges = []
    packing = []
    for c in range(k):
        off = c * h.n
        copy_edges = [(a + off, b + off) for a, b in h.sorted_edges()]
        edges.extend(copy_edges)
        packing.append(copy_edges)
    g = Graph(n, edges)
    adm_bound = adm_order = None
    if radius is not None:
        bound, h_order = exact_admissibility(h, radius)
        seq = []
        # interleave nothing: per-copy orders concatenate; admissibility of a
        # disjoint union under this order equals the per-copy value
        for c in range(k):
            seq.extend(v + c * h.n for v in h_order.sequence)
        seq.extend(range(h.n * k, n))
        adm_bound, adm_order = bound, seq
    cert = InstanceCertificate(
        generator="disjoint_copies",
        params={"k": k, "pad": pad},
        seed=None,
        n=n,
        pattern_edges=h.sorted_edges(),
        farness_lower_bound=k,
        packing=packing,
        adm_radius=radius,
        adm_bound=adm_bound,
        adm_order=adm_order,
    )
    return g, cert


def grid(w: int, hgt: int) -> Graph:
    if w < 1 or hgt < 1:
        raise GenerationError("grid dimensions must be positive")
    edges = []
    for y in range(hgt):
        for x in range(w):
            v = y * w + x
            if x + 1 < w:
                edges.append((v, v + 1))
            if y + 1 < hgt:
                edges.append((v, v + w))
    return Graph(w * hgt, edges)


def random_bounded_degree(n: int, d: int, seed: int) -> Graph:
    """Random simple graph with maximum degree ≤ d, deterministic per seed."""
    if n < 1 or d < 0:
        raise GenerationError("need n ≥ 1 and d ≥ 0")
    rng = SplitMix64(seed)
    deg = [0] * n
    edges: set[tuple[int, int]] = set()
    attempts = n * max(d, 1) * 4
    for _ in range(attempts):
        u = rng.below(n)
        v = rng.below(n)
        if u == v:
            continue
        e = _norm_edge(u, v)
        if e in edges or deg[u] >= d or deg[v] >= d:
            continue
        edges.add(e)
        deg[u] += 1
        deg[v] += 1
    return Graph(n, sorted(edges))


def planted_far_instance(
    h: Graph,
    n: int,
    epsilon,
    background_degree: int = 0,
    seed: int = 0,
    radius: Optional[int] = None,
) -> tuple[Graph, InstanceCertificate]:
    """⌈ε·n⌉ vertex-disjoint pattern copies plus optional sparse background.

    The planted packing certifies the instance ε-far from h-freeness
    (extra background edges can only add copies, never weaken the
    packing bound). Background edges respect the degree cap and never
    duplicate planted edges.
    """
    from fractions import Fraction
    from math import ceil

    eps = Fraction(epsilon)
    k = int(ceil(eps * n))
    if k < 1:
        raise GenerationError("epsilon too small: no copies to plant")
    if k * h.n > n:
        raise GenerationError(
            f"cannot plant {k} vertex-disjoint copies of a {h.n}-vertex pattern in {n} vertices"
        )
    edges: set[tuple[int, int]] = set()
    packing = []
    for c in range(k):
        off = c * h.n
        copy_edges = [(a + off, b + off) for a, b in h.sorted_edges()]
        edges.update(copy_edges)
        packing.append(copy_edges)
    deg = [0] * n
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    if background_degree > 0:
        rng = SplitMix64(seed)
        for _ in range(n * background_degree * 4):
            u = rng.below(n)
            v = rng.below(n)
            if u == v:
                continue
            e = _norm_edge(u, v)
            if e in edges or deg[u] >= background_degree or deg[v] >= background_degree:
                continue
            edges.add(e)
            deg[u] += 1
            deg[v] += 1
    g = Graph(n, sorted(edges))
    adm_bound = adm_order = None
    if radius is not None:
        order, achieved = greedy_admissibility_order(g, radius)
        adm_bound, adm_order = achieved, list(order.sequence)
    cert = InstanceCertificate(
        generator="planted_far_instance",
        params={"n": n, "epsilon": str(eps), "background_degree": background_degree},
        seed=seed,
        n=n,
        pattern_edges=h.sorted_edges(),
        farness_lower_bound=k,
        packing=packing,
        adm_radius=radius,
        adm_bound=adm_bound,
        adm_order=adm_order,
    )
    return g, cert
