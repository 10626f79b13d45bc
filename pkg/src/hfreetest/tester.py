"""One-sided pattern-freeness tester under random-neighbor queries.

Derives the loop parameters (exactly, in rational arithmetic, for theory
mode; verbatim for practical mode), runs the seeded exploration loop,
and rejects exactly when the discovered knowledge graph contains a copy
of the pattern — which is then a certificate valid in the hidden graph.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .engine import ExploreResult, explore
from .errors import InternalInvariantError, ParamsBudgetError
from .graphs import Graph, enumerate_h_copies

Rational = Union[int, Fraction]

DEFAULT_QUERY_BUDGET = 10_000_000_000
LOG_BASE = 2  # base of the logarithm in the sparsity exponent


def _ceil_fraction(x: Rational) -> int:
    x = Fraction(x)
    return -((-x.numerator) // x.denominator)


def _sparsity_exponent(radius: int) -> int:
    """Smallest integer ≥ 16·radius²·log₂(radius)."""
    # exact: smallest k with 2**k >= radius**(16 * radius**2)
    target = radius ** (16 * radius * radius)
    k = target.bit_length() - 1
    if 2**k < target:
        k += 1
    return k


@dataclass(frozen=True)
class TesterParams:
    epsilon: Fraction
    adm_bound: int                 # admissibility bound the analysis assumes
    radius: int                    # admissibility radius; also caps |V(h)|
    mode: str                      # "theory" | "practical"
    epsilon_eff: Fraction          # half of epsilon
    degree_bound: Fraction         # threshold for heavy vertices
    sparsity_bound: Fraction       # threshold for sparse families
    weakness_bound: Fraction       # threshold for weak nadirs
    num_seeds: int                 # initial uniform vertex draws
    num_rounds: int                # outer growth rounds
    queries_per_vertex: int        # neighbor draws per known vertex per round
    query_budget: Optional[int] = DEFAULT_QUERY_BUDGET

    def worst_case_queries(self) -> int:
        """Hard ceiling: every known vertex is queried queries_per_vertex
        times per round and each query can add one vertex."""
        total = 0
        known_bound = self.num_seeds
        for _ in range(self.num_rounds):
            total += known_bound * self.queries_per_vertex
            known_bound *= 1 + self.queries_per_vertex
        return total

    def fingerprint(self) -> str:
        payload = (
            str(self.epsilon), self.adm_bound, self.radius, self.mode,
            self.num_seeds, self.num_rounds, self.queries_per_vertex,
            str(self.degree_bound), str(self.sparsity_bound), str(self.weakness_bound),
        )
        import hashlib

        return hashlib.sha256(repr(payload).encode()).hexdigest()[:16]

    def to_json(self) -> str:
        doc = {
            "epsilon": str(self.epsilon),
            "adm_bound": self.adm_bound,
            "radius": self.radius,
            "mode": self.mode,
            "epsilon_eff": str(self.epsilon_eff),
            "degree_bound": str(self.degree_bound),
            "sparsity_bound": str(self.sparsity_bound),
            "weakness_bound": str(self.weakness_bound),
            "num_seeds": self.num_seeds,
            "num_rounds": self.num_rounds,
            "queries_per_vertex": self.queries_per_vertex,
            "query_budget": self.query_budget,
        }
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "TesterParams":
        doc = json.loads(text)
        return cls(
            epsilon=Fraction(doc["epsilon"]),
            adm_bound=int(doc["adm_bound"]),
            radius=int(doc["radius"]),
            mode=doc["mode"],
            epsilon_eff=Fraction(doc["epsilon_eff"]),
            degree_bound=Fraction(doc["degree_bound"]),
            sparsity_bound=Fraction(doc["sparsity_bound"]),
            weakness_bound=Fraction(doc["weakness_bound"]),
            num_seeds=int(doc["num_seeds"]),
            num_rounds=int(doc["num_rounds"]),
            queries_per_vertex=int(doc["queries_per_vertex"]),
            query_budget=doc.get("query_budget"),
        )


def derive_parameters(
    epsilon: Rational,
    adm_bound: int,
    radius: int,
    mode: str = "theory",
    overrides: Optional[dict] = None,
    query_budget: Optional[int] = DEFAULT_QUERY_BUDGET,
    force: bool = False,
) -> TesterParams:
    """Build tester parameters.

    Theory mode evaluates the analysis formulas in exact rational
    arithmetic (the sparsity exponent rounds 16r²·log₂r up to an
    integer; queries_per_vertex rounds up to a multiple of the radius).
    Practical mode takes the loop counts from ``overrides`` verbatim.
    Construction is refused when the worst-case query ceiling exceeds
    the budget, unless forced.
    """
    epsilon = Fraction(epsilon)
    if not (0 < epsilon <= 1):
        raise ValueError("epsilon must be in (0, 1]")
    if adm_bound < 2 or radius < 2:
        raise ValueError("admissibility bound and radius must be at least 2")
    eps_eff = epsilon / 2
    if mode == "theory":
        if overrides:
            raise ValueError("theory mode takes no overrides")
        p, r = adm_bound, radius
        degree_bound = Fraction(8 * p * p) / eps_eff
        sparsity_bound = Fraction(8 * p ** _sparsity_exponent(r)) / eps_eff
        weakness_bound = Fraction(2**12) * sparsity_bound**3 * r
        num_seeds = _ceil_fraction(Fraction(20) * degree_bound / eps_eff)
        num_rounds = r * r + 3 * r + 1
        base = _ceil_fraction(Fraction(20) * r * weakness_bound)
        queries_per_vertex = ((base + r - 1) // r) * r  # round up to a multiple of r
    elif mode == "practical":
        overrides = dict(overrides or {})
        try:
            num_seeds = int(overrides.pop("num_seeds"))
            num_rounds = int(overrides.pop("num_rounds"))
            queries_per_vertex = int(overrides.pop("queries_per_vertex"))
        except KeyError as exc:
            raise ValueError(f"practical mode requires override {exc}") from None
        degree_bound = Fraction(overrides.pop("degree_bound", Fraction(8 * adm_bound**2) / eps_eff))
        sparsity_bound = Fraction(overrides.pop("sparsity_bound", 1))
        weakness_bound = Fraction(overrides.pop("weakness_bound", 1))
        if overrides:
            raise ValueError(f"unknown overrides {sorted(overrides)}")
        if min(num_seeds, num_rounds, queries_per_vertex) < 1:
            raise ValueError("loop counts must be positive")
        if min(degree_bound, sparsity_bound, weakness_bound) <= 0:
            raise ValueError("thresholds must be positive")
    else:
        raise ValueError(f"unknown mode {mode!r}")
    params = TesterParams(
        epsilon=epsilon,
        adm_bound=adm_bound,
        radius=radius,
        mode=mode,
        epsilon_eff=eps_eff,
        degree_bound=degree_bound,
        sparsity_bound=sparsity_bound,
        weakness_bound=weakness_bound,
        num_seeds=num_seeds,
        num_rounds=num_rounds,
        queries_per_vertex=queries_per_vertex,
        query_budget=query_budget,
    )
    if not force and query_budget is not None and params.worst_case_queries() > query_budget:
        raise ParamsBudgetError(
            f"worst-case query count {params.worst_case_queries()} exceeds "
            f"budget {query_budget}; pass force=True to construct anyway"
        )
    return params


@dataclass
class Verdict:
    verdict: str  # "accept" | "reject"
    witness_vertices: Optional[list[int]]
    witness_edges: Optional[list[tuple[int, int]]]
    queries: int
    rounds: int
    vertices_discovered: int
    edges_discovered: int
    exploration: ExploreResult
    params_fingerprint: str

    @property
    def rejected(self) -> bool:
        return self.verdict == "reject"


def _find_pattern(vertices: Sequence[int], edge_round: dict, h: Graph):
    """First pattern copy among the discovered vertices/edges, or None."""
    idx = {v: i for i, v in enumerate(sorted(vertices))}
    back = {i: v for v, i in idx.items()}
    kg = Graph(len(idx), [(idx[a], idx[b]) for a, b in edge_round])
    found = enumerate_h_copies(kg, h, cap=1)
    if not found.subgraphs:
        return None
    vs, es = found.subgraphs[0]
    return (
        sorted(back[i] for i in vs),
        sorted((min(back[a], back[b]), max(back[a], back[b])) for a, b in es),
    )


def test_h_freeness(
    session,
    h: Graph,
    params: TesterParams,
    early_exit: bool = False,
    forced_seeds: Sequence[int] = (),
    backend: str = "auto",
) -> Verdict:
    """Run the tester against an oracle session.

    Seeds ``num_seeds`` uniform vertices, grows the knowledge graph for
    ``num_rounds`` rounds with ``queries_per_vertex`` neighbor draws per
    known vertex, then rejects iff a copy of h was discovered. With
    ``early_exit`` the copy check runs after every round (this can only
    stop sooner; the verdict is unchanged).
    """
    if h.n < 2 or not h.is_connected():
        raise ValueError("pattern must be connected with at least 2 vertices")
    if h.n > params.radius:
        raise ValueError("pattern must fit within the admissibility radius")

    hook = None
    if early_exit:
        def hook(s, vertices, edge_round):
            return _find_pattern(vertices, edge_round, h) is not None

    result = explore(
        session,
        params.num_seeds,
        params.num_rounds,
        params.queries_per_vertex,
        forced_seeds=forced_seeds,
        round_hook=hook,
        query_budget=params.query_budget,
        backend=backend,
    )
    ceiling = params.worst_case_queries()
    if result.total_queries > ceiling:
        raise InternalInvariantError(
            f"observed {result.total_queries} queries above the ceiling {ceiling}"
        )
    witness = _find_pattern(result.vertices, result.edge_round, h)
    if witness is not None:
        wv, we = witness
        return Verdict(
            "reject", wv, we, result.total_queries, result.rounds_executed,
            len(result.vertices), len(result.edge_round), result, params.fingerprint(),
        )
    return Verdict(
        "accept", None, None, result.total_queries, result.rounds_executed,
        len(result.vertices), len(result.edge_round), result, params.fingerprint(),
    )


def query_trace(verdict: Verdict) -> list[dict]:
    """Per-round query and discovery counts for a finished run."""
    res = verdict.exploration
    rows = []
    for s, q in enumerate(res.queries_per_round):
        rows.append(
            {
                "round": s,
                "queries": q,
                "vertices_discovered": sum(1 for r in res.vertex_round.values() if r == s),
                "edges_discovered": sum(1 for r in res.edge_round.values() if r == s),
            }
        )
    return rows
