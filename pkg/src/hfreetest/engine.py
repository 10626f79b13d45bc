"""Knowledge-graph exploration engine.

Runs the seeded breadth-growth loop shared by the tester and the
experiment harness: seed a set of uniform vertices, then for a fixed
number of rounds ask a fixed number of random-neighbor queries from
every vertex known at the start of the round, recording when each vertex
and edge was first discovered.

Two interchangeable implementations exist: a pure-Python loop working
against any session object, and a compiled kernel (``_fastengine``)
operating directly on the standard oracle's adjacency arrays. Both
consume the random stream identically and produce bit-identical results;
the compiled path is used automatically when available and applicable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .errors import IsolatedVertexError, QueryBudgetExceededError
from .graphs import _norm_edge
from .oracle import RandomNeighborOracle
from .rng import _GAMMA, _MASK64

try:  # optional compiled kernel
    from . import _fastengine  # type: ignore[attr-defined]
except ImportError:  # pragma: no cover - build-env dependent
    _fastengine = None


def compiled_available() -> bool:
    return _fastengine is not None


@dataclass
class ExploreResult:
    """Discovery record of one exploration run."""

    vertices: list[int]                      # discovery order
    vertex_round: dict[int, int]             # vertex -> round first seen
    edge_round: dict[tuple[int, int], int]   # edge -> round first seen
    queries_per_round: list[int]             # index = round (round 0 free)
    rounds_executed: int
    backend: str = "pure"

    @property
    def total_queries(self) -> int:
        return sum(self.queries_per_round)

    def edges(self) -> list[tuple[int, int]]:
        return sorted(self.edge_round)


# A round hook receives (round, vertices-so-far, edge_round) after each
# completed round and returns True to stop exploration early.
RoundHook = Callable[[int, list[int], dict[tuple[int, int], int]], bool]


def _explore_pure(
    session,
    num_seeds: int,
    num_rounds: int,
    queries_per_vertex: int,
    forced_seeds: Sequence[int],
    round_hook: Optional[RoundHook],
    query_budget: Optional[int],
) -> ExploreResult:
    vertex_round: dict[int, int] = {}
    vertices: list[int] = []

    def add_vertex(v: int, rnd: int) -> None:
        if v not in vertex_round:
            vertex_round[v] = rnd
            vertices.append(v)

    for v in forced_seeds:
        add_vertex(v, 0)
    for _ in range(num_seeds):
        add_vertex(session.uniform_vertex(), 0)

    edge_round: dict[tuple[int, int], int] = {}
    queries_per_round = [0]
    executed = 0
    total = 0
    for s in range(1, num_rounds + 1):
        snapshot = list(vertices)
        q = 0
        for v in snapshot:
            for _ in range(queries_per_vertex):
                q += 1
                total += 1
                if query_budget is not None and total > query_budget:
                    raise QueryBudgetExceededError(
                        f"query budget {query_budget} exceeded in round {s}"
                    )
                try:
                    u = session.random_neighbor(v)
                except IsolatedVertexError:
                    continue
                add_vertex(u, s)
                e = _norm_edge(v, u)
                if e not in edge_round:
                    edge_round[e] = s
        queries_per_round.append(q)
        executed = s
        if round_hook is not None and round_hook(s, vertices, edge_round):
            break
    return ExploreResult(vertices, vertex_round, edge_round, queries_per_round, executed, "pure")


def _explore_compiled(
    session: RandomNeighborOracle,
    num_seeds: int,
    num_rounds: int,
    queries_per_vertex: int,
    forced_seeds: Sequence[int],
    query_budget: Optional[int],
) -> ExploreResult:
    import numpy as np

    indptr, flat = session._csr_arrays()
    forced = np.asarray(list(forced_seeds), dtype=np.int64)
    res = _fastengine.explore(
        indptr,
        flat,
        session.n,
        session.rng.state,
        forced,
        num_seeds,
        num_rounds,
        queries_per_vertex,
        -1 if query_budget is None else query_budget,
    )
    (disc_v, disc_r, e_a, e_b, e_r, qpr, executed, draws, neighbor_queries, over_budget) = res
    # keep the session's stream and accounting exactly as the pure loop would
    session.rng.state = (session.rng.state + draws * _GAMMA) & _MASK64
    session.query_count += int(neighbor_queries)
    if over_budget:
        raise QueryBudgetExceededError(
            f"query budget {query_budget} exceeded in round {executed}"
        )
    vertices = [int(v) for v in disc_v]
    vertex_round = {int(v): int(r) for v, r in zip(disc_v, disc_r)}
    edge_round = {
        _norm_edge(int(a), int(b)): int(r) for a, b, r in zip(e_a, e_b, e_r)
    }
    return ExploreResult(
        vertices, vertex_round, edge_round, [int(x) for x in qpr], int(executed), "compiled"
    )


def explore(
    session,
    num_seeds: int,
    num_rounds: int,
    queries_per_vertex: int,
    forced_seeds: Sequence[int] = (),
    round_hook: Optional[RoundHook] = None,
    query_budget: Optional[int] = None,
    backend: str = "auto",
) -> ExploreResult:
    """Run the exploration loop; see the module docstring.

    ``backend``: "auto" picks the compiled kernel when it is built, the
    session is a standard oracle, and no round hook is installed;
    "pure"/"compiled" force a choice (forcing "compiled" when unusable
    is an error).
    """
    if min(num_seeds, num_rounds, queries_per_vertex) < 0:
        raise ValueError("loop counts must be nonnegative")
    can_compile = (
        _fastengine is not None
        and isinstance(session, RandomNeighborOracle)
        and round_hook is None
    )
    if backend == "auto":
        use_compiled = can_compile
    elif backend == "pure":
        use_compiled = False
    elif backend == "compiled":
        if not can_compile:
            raise ValueError("compiled backend unavailable for this session/configuration")
        use_compiled = True
    else:
        raise ValueError(f"unknown backend {backend!r}")
    if use_compiled:
        return _explore_compiled(
            session, num_seeds, num_rounds, queries_per_vertex, forced_seeds, query_budget
        )
    return _explore_pure(
        session, num_seeds, num_rounds, queries_per_vertex, forced_seeds, round_hook, query_budget
    )
