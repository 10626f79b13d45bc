"""Batch experiment harness.

Monte-Carlo trials of the tester over generated instances, query-scaling
experiments, and empirical spot checks of the probability bounds the
analysis relies on, each run against a hand-built fixture whose
hypotheses are re-verified by the structure/trimming modules.

Reproducibility contract: per-trial seeds are derived from the config's
seed root by trial index, so the output CSV is byte-identical regardless
of parallelism width (wall-time recording must be disabled for
byte-stability, since timings are the only nondeterministic column).
"""

from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from ._version import __version__
from .admissibility import is_admissible_path, is_chain
from .engine import ExploreResult, compiled_available, explore
from .errors import ConfigError, HFreeTestError, QueryBudgetExceededError, ResourceBudgetError
from .generators import (
    disjoint_copies,
    grid,
    pattern_graph,
    planted_far_instance,
    random_bounded_degree,
)
from .graphs import Graph, OrderedGraph, distance_to_h_freeness, enumerate_h_subgraphs, parse_graph
from .oracle import RandomNeighborOracle
from .rng import derive_seed
from .structure import UsefulPair, _outside_prefix_edges, _strata_candidates, max_disjoint_edge_sets
from .tester import DEFAULT_QUERY_BUDGET, TesterParams, derive_parameters, test_h_freeness
from .trimming import _weak_nadirs, trim

CSV_COLUMNS = ("instance_id", "gen_seed", "test_seed", "n", "params_fp", "verdict", "queries", "rounds", "ms")


# ---------------------------------------------------------------------------
# instance generators addressable from a config


def _line_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def _cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ConfigError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def _star_graph(n: int) -> Graph:
    return Graph(n, [(0, i) for i in range(1, n)])


def build_instance(generator: dict, pattern: str, gen_seed: int):
    """Materialize (graph, certificate-or-None) from a generator spec."""
    spec = dict(generator)
    try:
        name = spec.pop("name")
    except KeyError:
        raise ConfigError("generator spec needs a 'name'") from None
    h = pattern_graph(pattern)
    builders = {
        "disjoint_copies": lambda: disjoint_copies(
            h, int(spec.pop("k")), pad=int(spec.pop("pad", 0)), radius=spec.pop("radius", None)
        ),
        "planted": lambda: planted_far_instance(
            h, int(spec.pop("n")), Fraction(spec.pop("epsilon")),
            background_degree=int(spec.pop("background_degree", 0)),
            seed=gen_seed, radius=spec.pop("radius", None),
        ),
        "grid": lambda: (grid(int(spec.pop("width")), int(spec.pop("height"))), None),
        "random_bounded_degree": lambda: (
            random_bounded_degree(int(spec.pop("n")), int(spec.pop("degree")), gen_seed), None
        ),
        "path": lambda: (_line_graph(int(spec.pop("n"))), None),
        "cycle": lambda: (_cycle_graph(int(spec.pop("n"))), None),
        "star": lambda: (_star_graph(int(spec.pop("n"))), None),
        "empty": lambda: (Graph(int(spec.pop("n")), []), None),
        "file": lambda: (parse_graph(open(spec.pop("path")).read()), None),
    }
    if name not in builders:
        raise ConfigError(f"unknown generator {name!r}; known: {sorted(builders)}")
    try:
        result = builders[name]()
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError(f"bad generator spec for {name!r}: {exc}") from None
    if spec:
        raise ConfigError(f"unknown generator options {sorted(spec)}")
    return result


# ---------------------------------------------------------------------------
# experiment configuration


@dataclass
class ExperimentConfig:
    """Fully serializable description of one batch experiment."""

    generator: dict
    pattern: str
    params: dict          # arguments for derive_parameters (epsilon, mode, ...)
    trials: int
    seed_root: int
    jobs: int = 1
    out: Optional[str] = None
    record_timing: bool = True
    early_exit: bool = False
    backend: str = "auto"

    def to_json(self) -> str:
        doc = {
            "generator": self.generator,
            "pattern": self.pattern,
            "params": self.params,
            "trials": self.trials,
            "seed_root": self.seed_root,
            "jobs": self.jobs,
            "out": self.out,
            "record_timing": self.record_timing,
            "early_exit": self.early_exit,
            "backend": self.backend,
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid config JSON: {exc}") from None
        if not isinstance(doc, dict):
            raise ConfigError("config JSON must be an object")
        try:
            return cls(
                generator=dict(doc["generator"]),
                pattern=str(doc["pattern"]),
                params=dict(doc["params"]),
                trials=int(doc["trials"]),
                seed_root=int(doc["seed_root"]),
                jobs=int(doc.get("jobs", 1)),
                out=doc.get("out"),
                record_timing=bool(doc.get("record_timing", True)),
                early_exit=bool(doc.get("early_exit", False)),
                backend=str(doc.get("backend", "auto")),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad experiment config: {exc}") from None


def build_params(params: dict) -> TesterParams:
    """derive_parameters from a plain-JSON dict; config errors are typed."""
    p = dict(params)
    try:
        epsilon = Fraction(p.pop("epsilon"))
        adm_bound = int(p.pop("adm_bound"))
        radius = int(p.pop("radius"))
    except KeyError as exc:
        raise ConfigError(f"params need {exc}") from None
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"bad params: {exc}") from None
    mode = p.pop("mode", "practical")
    overrides = p.pop("overrides", None)
    query_budget = p.pop("query_budget", DEFAULT_QUERY_BUDGET)
    force = bool(p.pop("force", False))
    if p:
        raise ConfigError(f"unknown params keys {sorted(p)}")
    try:
        return derive_parameters(
            epsilon, adm_bound, radius, mode=mode, overrides=overrides,
            query_budget=query_budget, force=force,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


# ---------------------------------------------------------------------------
# trial execution


@dataclass
class TrialRecord:
    instance_id: str
    gen_seed: int
    test_seed: int
    n: int
    params_fp: str
    verdict: str  # accept | reject | abort
    queries: int
    rounds: int
    ms: int

    def csv_row(self) -> str:
        return ",".join(
            str(x)
            for x in (
                self.instance_id, self.gen_seed, self.test_seed, self.n,
                self.params_fp, self.verdict, self.queries, self.rounds, self.ms,
            )
        )


def _run_one_trial(args):
    """Worker body; must stay module-level for process pools."""
    graph, h, params, test_seed, early_exit, backend, record_timing = args
    oracle = RandomNeighborOracle(graph, test_seed)
    start = time.perf_counter()
    witness = None
    try:
        verdict = test_h_freeness(oracle, h, params, early_exit=early_exit, backend=backend)
        verdict_str = verdict.verdict
        queries, rounds = verdict.queries, verdict.rounds
        witness = verdict.witness_edges
    except HFreeTestError:
        verdict_str, queries, rounds = "abort", oracle.query_count, 0
    ms = int(round((time.perf_counter() - start) * 1000)) if record_timing else 0
    return verdict_str, queries, rounds, ms, witness


def wilson_interval(successes: int, trials: int, z: float = 1.96) -> tuple[float, float]:
    """Wilson score 95% interval for a binomial proportion."""
    if trials == 0:
        return 0.0, 0.0
    phat = successes / trials
    denom = 1 + z * z / trials
    center = phat + z * z / (2 * trials)
    spread = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials))
    return (center - spread) / denom, (center + spread) / denom


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    records: list[TrialRecord]
    summary: dict
    csv_text: str = ""


def run_trials(config: ExperimentConfig) -> ExperimentResult:
    """Run the configured Monte-Carlo batch.

    Per-trial failures become 'abort' rows; they never stop the batch.
    The CSV is a pure function of (config minus timing, seed root).
    """
    if config.trials < 0 or config.jobs < 1:
        raise ConfigError("need trials >= 0 and jobs >= 1")
    gen_seed = derive_seed(config.seed_root, 0)
    graph, certificate = build_instance(config.generator, config.pattern, gen_seed)
    if certificate is not None:
        certificate.verify(graph)
    h = pattern_graph(config.pattern)
    params = build_params(config.params)
    fp = params.fingerprint()
    instance_id = f"{config.generator['name']}-{gen_seed:016x}"

    payloads = [
        (graph, h, params, derive_seed(config.seed_root, i + 1),
         config.early_exit, config.backend, config.record_timing)
        for i in range(config.trials)
    ]
    if config.jobs > 1 and payloads:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            outcomes = list(pool.map(_run_one_trial, payloads, chunksize=max(1, len(payloads) // (4 * config.jobs))))
    else:
        outcomes = [_run_one_trial(p) for p in payloads]

    records = []
    example_witness = None
    for payload, (verdict_str, queries, rounds, ms, witness) in zip(payloads, outcomes):
        records.append(
            TrialRecord(instance_id, gen_seed, payload[3], graph.n, fp,
                        verdict_str, queries, rounds, ms)
        )
        if witness is not None and example_witness is None:
            example_witness = [list(e) for e in witness]

    csv_text = "\n".join([",".join(CSV_COLUMNS)] + [r.csv_row() for r in records]) + "\n"
    rejects = sum(1 for r in records if r.verdict == "reject")
    accepts = sum(1 for r in records if r.verdict == "accept")
    aborts = sum(1 for r in records if r.verdict == "abort")
    lo, hi = wilson_interval(rejects, len(records))
    queries_list = [r.queries for r in records]
    summary = {
        "version": __version__,
        "instance_id": instance_id,
        "generator": config.generator["name"],
        "pattern": config.pattern,
        "n": graph.n,
        "params_fingerprint": fp,
        "worst_case_queries": params.worst_case_queries(),
        "trials": len(records),
        "accepts": accepts,
        "rejects": rejects,
        "aborts": aborts,
        "rejection_rate": (rejects / len(records)) if records else 0.0,
        "rejection_wilson_low": lo,
        "rejection_wilson_high": hi,
        "queries_max": max(queries_list) if queries_list else 0,
        "queries_mean": (sum(queries_list) / len(queries_list)) if queries_list else 0.0,
        "certified_farness_lower_bound": (
            certificate.farness_lower_bound if certificate is not None else None
        ),
        "example_witness_edges": example_witness,
    }
    result = ExperimentResult(config, records, summary, csv_text)
    if config.out:
        base, ext = os.path.splitext(config.out)
        csv_path = config.out if ext == ".csv" else config.out + ".csv"
        with open(csv_path, "w") as fh:
            fh.write(csv_text)
        with open((base if ext == ".csv" else config.out) + ".summary.json", "w") as fh:
            fh.write(json.dumps(summary, sort_keys=True, indent=2) + "\n")
    return result


def report(result: ExperimentResult) -> tuple[str, str]:
    """Human-readable text plus machine JSON for a finished experiment."""
    s = result.summary
    lines = [
        f"hfreetest {s['version']} experiment report",
        f"instance   {s['instance_id']} (n={s['n']}, pattern={s['pattern']})",
        f"params     fp={s['params_fingerprint']} ceiling={s['worst_case_queries']}",
        f"trials     {s['trials']}  accept={s['accepts']} reject={s['rejects']} abort={s['aborts']}",
        f"rejection  rate={s['rejection_rate']:.4f} wilson95=[{s['rejection_wilson_low']:.4f}, {s['rejection_wilson_high']:.4f}]",
        f"queries    max={s['queries_max']} mean={s['queries_mean']:.1f}",
    ]
    if s.get("example_witness_edges"):
        lines.append(f"witness    edges={s['example_witness_edges']}")
    return "\n".join(lines) + "\n", json.dumps(s, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# query scaling


def query_scaling_experiment(
    pattern: str,
    sizes: Sequence[int],
    params: dict,
    trials: int,
    seed_root: int,
    epsilon: Optional[Fraction] = None,
    jobs: int = 1,
    backend: str = "auto",
) -> dict:
    """Max/mean observed queries per instance size under fixed parameters.

    The worst-case ceiling depends only on the parameters, never on n;
    every observed maximum is asserted to stay below it.
    """
    tparams = build_params(params)
    ceiling = tparams.worst_case_queries()
    h = pattern_graph(pattern)
    eps = Fraction(epsilon) if epsilon is not None else tparams.epsilon
    rows = []
    for n in sizes:
        if int(n) < h.n:
            raise ConfigError(f"size {n} smaller than the pattern")
        cfg = ExperimentConfig(
            generator={"name": "planted", "n": int(n), "epsilon": str(eps)},
            pattern=pattern,
            params=params,
            trials=trials,
            seed_root=derive_seed(seed_root, int(n)),
            jobs=jobs,
            record_timing=False,
            backend=backend,
        )
        res = run_trials(cfg)
        if res.summary["queries_max"] > ceiling:
            raise ResourceBudgetError(
                f"observed {res.summary['queries_max']} queries above the ceiling {ceiling} at n={n}"
            )
        rows.append(
            {
                "n": int(n),
                "trials": trials,
                "queries_max": res.summary["queries_max"],
                "queries_mean": res.summary["queries_mean"],
                "ceiling": ceiling,
            }
        )
    return {"version": __version__, "pattern": pattern, "ceiling": ceiling, "rows": rows}


# ---------------------------------------------------------------------------
# probability-bound spot checks
#
# Each check ships one hand-built fixture at practical constants: the
# hypotheses of the corresponding bound are re-verified exactly by the
# structure/trimming modules, then the event frequency over seeded
# exploration runs is compared one-directionally against the formula.
# At theory-scale constants every formula here is vacuous or the run
# infeasible, so the constants below are deliberately small.


@dataclass
class LemmaFixture:
    name: str
    graph: Graph
    pattern: Graph
    forced_seeds: tuple[int, ...]
    num_seeds: int
    num_rounds: int
    queries_per_vertex: int
    bound: Fraction                      # the formula value at these constants
    event: Callable[[ExploreResult], bool]
    hypotheses: list[tuple[str, Callable[[], bool]]]
    default_trials: int
    constants: dict = field(default_factory=dict)
    needs_compiled: bool = False


def _merge_constants(defaults: dict, overrides: Optional[dict]) -> dict:
    c = dict(defaults)
    for k, v in (overrides or {}).items():
        if k not in defaults:
            raise ConfigError(f"unknown constant {k!r}; known: {sorted(defaults)}")
        c[k] = int(v)
    return c


def _trim_is_identity(g: Graph, h: Graph, radius: int, alpha: int, beta: int, delta: int) -> bool:
    _, rep = trim(OrderedGraph(g), h, radius, alpha, beta, delta)
    return rep.total_removed == 0


def _fixture_seed_hits_copy(overrides: Optional[dict]) -> LemmaFixture:
    # ε′-far instance: 25 disjoint triangles + 225 isolated pads (n=300),
    # ε′ = 25/300; a uniform seed hits a surviving-copy vertex.
    c = _merge_constants(
        {"copies": 25, "pad": 225, "degree_bound": 32, "num_seeds": 240}, overrides
    )
    h = pattern_graph("k3")
    g, cert = disjoint_copies(h, c["copies"], pad=c["pad"])
    cert.verify(g)
    n = g.n
    eps_eff = Fraction(c["copies"], n)
    bound = 1 - (1 - eps_eff / c["degree_bound"]) ** c["num_seeds"]
    big = 10**9
    copy_vertices = frozenset(
        v for sub in enumerate_h_subgraphs(OrderedGraph(g), h).subgraphs for v in sub.vertices
    )

    def far_after_trim() -> bool:
        trimmed, _ = trim(OrderedGraph(g), h, 3, c["degree_bound"], big, big)
        dist = distance_to_h_freeness(trimmed.graph, h)
        return dist.exact and dist.value >= eps_eff * n

    hyps = [
        ("trimmed graph is identical and still eps'-far from pattern-freeness",
         lambda: _trim_is_identity(g, h, 3, c["degree_bound"], big, big) and far_after_trim()),
        ("every pattern copy has a vertex of degree <= degree_bound",
         lambda: all(
             min(g.degree(v) for v in sub.vertices) <= c["degree_bound"]
             for sub in enumerate_h_subgraphs(OrderedGraph(g), h).subgraphs
         )),
    ]

    def event(res: ExploreResult) -> bool:
        return any(v in copy_vertices for v in res.vertices if res.vertex_round[v] == 0)

    return LemmaFixture(
        "seed-hits-copy", g, h, (), c["num_seeds"], 0, 0, bound, event, hyps, 100, c
    )


def _fixture_chain_end_discovery(overrides: Optional[dict]) -> LemmaFixture:
    # 3-vertex fixture with the chain (1, 2, 0) of length 2: starting from
    # the discovered vertex 1, the chain's end 0 is found within 2 rounds.
    c = _merge_constants(
        {"alpha": 4, "beta": 100, "delta": 4, "queries_per_vertex": 8, "radius": 3}, overrides
    )
    g = Graph(3, [(0, 2), (1, 2)])
    h = pattern_graph("p3")
    chain = (1, 2, 0)
    length = len(chain) - 1
    bound = 1 - length * (1 - Fraction(1, c["delta"])) ** c["queries_per_vertex"]
    hyps = [
        ("degree threshold <= weakness threshold", lambda: c["alpha"] <= c["delta"]),
        ("trimming is the identity at these thresholds",
         lambda: _trim_is_identity(g, h, c["radius"], c["alpha"], c["beta"], c["delta"])),
        ("the witness path is a chain ending below its start",
         lambda: is_chain(OrderedGraph(g), chain, c["radius"])
         and chain[-1] < min(chain[:-1])),
        ("chain length fits in the round budget", lambda: length <= 2),
    ]

    def event(res: ExploreResult) -> bool:
        return res.vertex_round.get(chain[-1], 10**9) <= length

    return LemmaFixture(
        "chain-end-discovery", g, h, (chain[0],), 0, length,
        c["queries_per_vertex"], bound, event, hyps, 200, c,
    )


def _fixture_minimum_discovery(overrides: Optional[dict]) -> LemmaFixture:
    # a triangle: from any discovered copy vertex (forced seed 2), the
    # order-minimum vertex of the copy is discovered within radius rounds.
    c = _merge_constants(
        {"alpha": 4, "beta": 100, "delta": 4, "queries_per_vertex": 8, "radius": 3}, overrides
    )
    g = Graph(3, [(0, 1), (0, 2), (1, 2)])
    h = pattern_graph("k3")
    r = c["radius"]
    bound = 1 - r * (1 - Fraction(1, c["delta"])) ** c["queries_per_vertex"]
    hyps = [
        ("degree threshold <= weakness threshold", lambda: c["alpha"] <= c["delta"]),
        ("trimming is the identity at these thresholds",
         lambda: _trim_is_identity(g, h, r, c["alpha"], c["beta"], c["delta"])),
        ("a pattern copy containing the seed survives trimming, with minimum 0",
         lambda: any(
             2 in sub.vertices and sub.min_vertex() == 0
             for sub in enumerate_h_subgraphs(OrderedGraph(g), h).subgraphs
         )),
    ]

    def event(res: ExploreResult) -> bool:
        return res.vertex_round.get(0, 10**9) <= r

    return LemmaFixture(
        "minimum-discovery", g, h, (2,), 0, r, c["queries_per_vertex"], bound, event, hyps, 200, c
    )


def _fixture_nadir_discovery(overrides: Optional[dict]) -> LemmaFixture:
    # theta fixture: 6 edge-disjoint admissible paths (1, w, 0); from the
    # discovered high endpoint 1, the low endpoint 0 is found within
    # radius rounds.
    c = _merge_constants(
        {"alpha": 8, "beta": 100, "delta": 8, "queries_per_vertex": 24, "radius": 3}, overrides
    )
    mids = range(2, 8)
    g = Graph(8, [(0, w) for w in mids] + [(1, w) for w in mids])
    h = pattern_graph("p3")
    r = c["radius"]
    paths = [(1, w, 0) for w in mids]
    bound = 1 - r * (1 - Fraction(1, c["delta"])) ** c["queries_per_vertex"]
    hyps = [
        ("degree threshold <= weakness threshold", lambda: c["alpha"] <= c["delta"]),
        ("trimming is the identity at these thresholds",
         lambda: _trim_is_identity(g, h, r, c["alpha"], c["beta"], c["delta"])),
        ("the paths are admissible, edge-disjoint, and number >= deg/delta",
         lambda: all(is_admissible_path(OrderedGraph(g), p, r) for p in paths)
         and len({e for p in paths for e in zip(p, p[1:])}) == 2 * len(paths)
         and len(paths) * c["delta"] >= g.degree(1)),
    ]

    def event(res: ExploreResult) -> bool:
        return res.vertex_round.get(0, 10**9) <= r

    return LemmaFixture(
        "nadir-discovery", g, h, (1,), 0, r, c["queries_per_vertex"], bound, event, hyps, 100, c
    )


def _fixture_many_nadirs(overrides: Optional[dict]) -> LemmaFixture:
    # apex vertex 0 shared by 5184 otherwise-disjoint triangles: these
    # form a weakness strata with prefix {0}; within radius rounds the
    # exploration discovers many of its nadir vertices.
    c = _merge_constants(
        {"triangles": 5184, "alpha": 10368, "beta": 3, "delta": 10368,
         "queries_per_vertex": 14496, "radius": 3},
        overrides,
    )
    k, beta, delta, r = c["triangles"], c["beta"], c["delta"], c["radius"]
    xi3 = c["queries_per_vertex"]
    edges = []
    for i in range(k):
        x, y = 2 * i + 1, 2 * i + 2
        edges += [(0, x), (0, y), (x, y)]
    g = Graph(2 * k + 1, edges)
    h = pattern_graph("k3")
    og = OrderedGraph(g)
    hosts = enumerate_h_subgraphs(og, h).subgraphs
    prefix = frozenset({0})
    template = UsefulPair(hosts[0], prefix)
    candidates = _strata_candidates(og, h, prefix, template)
    nadir_vertices = frozenset(2 * i + 1 for i in range(k))
    threshold = -(-delta // (16 * beta * beta))
    bound = 1 - Fraction(1, 20 * r)

    def strata_hypotheses() -> bool:
        if len(candidates) != k:
            return False
        edge_sets = [_outside_prefix_edges(cand) for cand in candidates]
        if len(max_disjoint_edge_sets(edge_sets)) != k:  # pairwise disjoint
            return False
        if k * beta < g.degree(0):  # strata size >= deg(max prefix)/beta
            return False
        weak = _weak_nadirs(candidates, delta, g.degree(0))
        return nadir_vertices <= weak

    hyps = [
        ("(r-1)(1-1/delta)^xi3 < 1/2",
         lambda: (r - 1) * (1 - Fraction(1, delta)) ** xi3 < Fraction(1, 2)),
        ("delta/(64 beta^2) > 16 ln r",
         lambda: delta / (64 * beta * beta) > 16 * math.log(r)),
        ("xi3 > delta/(2 beta)", lambda: 2 * beta * xi3 > delta),
        ("the triangles form a weakness strata of size >= deg/beta at the apex",
         strata_hypotheses),
        ("trimming is the identity at these thresholds",
         lambda: _trim_is_identity(g, h, r, c["alpha"], beta, delta)),
    ]

    def event(res: ExploreResult) -> bool:
        found = sum(1 for w in nadir_vertices if res.vertex_round.get(w, 10**9) <= r)
        return found >= threshold

    return LemmaFixture(
        "many-nadirs", g, h, (0,), 0, r, xi3, bound, event, hyps, 8, c, needs_compiled=True
    )


def _fixture_edge_completion(overrides: Optional[dict]) -> LemmaFixture:
    # all three triangle vertices are pre-seeded; within radius rounds all
    # three edges are discovered.
    c = _merge_constants(
        {"alpha": 4, "beta": 100, "delta": 20, "queries_per_vertex": 8, "radius": 3}, overrides
    )
    g = Graph(3, [(0, 1), (0, 2), (1, 2)])
    h = pattern_graph("k3")
    r = c["radius"]
    bound = 1 - r * r * (1 - Fraction(1, c["alpha"])) ** c["delta"]
    hyps = [
        ("trimming is the identity at these thresholds",
         lambda: _trim_is_identity(g, h, r, c["alpha"], c["beta"], c["delta"])),
        ("each vertex makes at least delta draws over the rounds",
         lambda: r * c["queries_per_vertex"] >= c["delta"]),
        ("all copy vertices are pre-seeded",
         lambda: any(
             sub.vertices <= {0, 1, 2}
             for sub in enumerate_h_subgraphs(OrderedGraph(g), h).subgraphs
         )),
    ]

    def event(res: ExploreResult) -> bool:
        return all(res.edge_round.get(e, 10**9) <= r for e in g.sorted_edges())

    return LemmaFixture(
        "edge-completion", g, h, (0, 1, 2), 0, r, c["queries_per_vertex"], bound, event, hyps, 300, c
    )


LEMMA_CHECKS: dict[str, Callable[[Optional[dict]], LemmaFixture]] = {
    "seed-hits-copy": _fixture_seed_hits_copy,
    "chain-end-discovery": _fixture_chain_end_discovery,
    "minimum-discovery": _fixture_minimum_discovery,
    "nadir-discovery": _fixture_nadir_discovery,
    "many-nadirs": _fixture_many_nadirs,
    "edge-completion": _fixture_edge_completion,
}


def lemma_check(
    name: str,
    trials: Optional[int] = None,
    seed_root: int = 0,
    overrides: Optional[dict] = None,
    verify_hypotheses: bool = True,
    backend: str = "auto",
) -> dict:
    """Empirical one-directional check of one probability bound.

    PASS when the observed event frequency is >= the formula value,
    INCONCLUSIVE when the formula is vacuous (<= 0 or >= 1) or a
    hypothesis re-verification fails, FAIL otherwise.
    """
    if name not in LEMMA_CHECKS:
        raise ConfigError(f"unknown check {name!r}; known: {sorted(LEMMA_CHECKS)}")
    fx = LEMMA_CHECKS[name](overrides)
    trials = fx.default_trials if trials is None else int(trials)
    if trials < 1:
        raise ConfigError("need at least one trial")
    if fx.needs_compiled and backend != "pure" and not compiled_available():
        raise ResourceBudgetError(
            f"check {name!r} needs the compiled exploration kernel "
            "(hundreds of millions of queries per trial)"
        )

    hyp_rows = []
    hyps_ok = True
    if verify_hypotheses:
        for desc, fn in fx.hypotheses:
            holds = bool(fn())
            hyp_rows.append({"description": desc, "holds": holds})
            hyps_ok = hyps_ok and holds

    bound = fx.bound
    vacuous = bound <= 0 or bound >= 1
    successes = 0
    observed = None
    if not vacuous:
        for i in range(trials):
            oracle = RandomNeighborOracle(fx.graph, derive_seed(seed_root, i + 1))
            res = explore(
                oracle, fx.num_seeds, fx.num_rounds, fx.queries_per_vertex,
                forced_seeds=fx.forced_seeds, backend=backend,
            )
            if fx.event(res):
                successes += 1
        observed = Fraction(successes, trials)

    if vacuous:
        status = "INCONCLUSIVE"
    elif verify_hypotheses and not hyps_ok:
        status = "INCONCLUSIVE"
    elif observed >= bound:
        status = "PASS"
    else:
        status = "FAIL"
    return {
        "version": __version__,
        "name": name,
        "status": status,
        "bound": float(bound),
        "observed": None if observed is None else float(observed),
        "successes": successes,
        "trials": 0 if vacuous else trials,
        "constants": fx.constants,
        "hypotheses": hyp_rows,
        "hypotheses_verified": verify_hypotheses,
        "n": fx.graph.n,
    }
