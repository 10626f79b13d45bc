"""Pattern-freeness property testing for sparse ordered graphs.

A one-sided tester in the random-neighbor query model, the ordered-graph
structure toolkit its analysis rests on (admissibility, chains, useful
pairs, stratas, trimming), certified instance generators, and a
reproducible Monte-Carlo experiment harness.
"""

from ._version import __version__
from .admissibility import (
    admissibility_of_order,
    chain_decomposition,
    enumerate_admissible_paths,
    enumerate_chains,
    exact_admissibility,
    greedy_admissibility_order,
    is_admissible_path,
    is_chain,
    max_path_packing,
    target_set,
)
from .engine import ExploreResult, compiled_available, explore
from .errors import (
    ConfigError,
    GenerationError,
    HFreeTestError,
    InternalInvariantError,
    IsolatedVertexError,
    ParamsBudgetError,
    ParseError,
    QueryBudgetExceededError,
    ResourceBudgetError,
)
from .generators import (
    InstanceCertificate,
    disjoint_copies,
    grid,
    pattern_graph,
    planted_far_instance,
    random_bounded_degree,
    subdivide,
)
from .graphs import (
    Graph,
    OrderedGraph,
    OrderedSubgraph,
    Ordering,
    distance_to_h_freeness,
    enumerate_h_copies,
    enumerate_h_subgraphs,
    is_order_isomorphic,
    parse_edge_list,
    parse_graph,
    parse_json_graph,
)
from .harness import (
    ExperimentConfig,
    ExperimentResult,
    LEMMA_CHECKS,
    TrialRecord,
    lemma_check,
    query_scaling_experiment,
    report,
    run_trials,
    wilson_interval,
)
from .oracle import RandomNeighborOracle, ReplayOracle
from .rng import SplitMix64, derive_seed
from .structure import (
    Spine,
    Strata,
    UsefulPair,
    are_similar,
    classify_nadir,
    enumerate_useful_pairs,
    is_prefix,
    is_stable,
    is_useful_pair,
    is_weakness_strata,
    max_strata,
    nadir,
    spine,
)
from .tester import (
    DEFAULT_QUERY_BUDGET,
    TesterParams,
    Verdict,
    derive_parameters,
    query_trace,
    test_h_freeness,
)
from .trimming import TrimReport, trim, verify_light_edges

__all__ = [
    "__version__",
    # graphs
    "Graph", "Ordering", "OrderedGraph", "OrderedSubgraph",
    "parse_graph", "parse_edge_list", "parse_json_graph",
    "enumerate_h_copies", "enumerate_h_subgraphs", "is_order_isomorphic",
    "distance_to_h_freeness",
    # admissibility / chains
    "target_set", "enumerate_admissible_paths", "max_path_packing",
    "admissibility_of_order", "exact_admissibility", "greedy_admissibility_order",
    "is_admissible_path", "is_chain", "chain_decomposition", "enumerate_chains",
    # structure
    "UsefulPair", "Strata", "Spine", "is_prefix", "is_useful_pair", "are_similar",
    "nadir", "spine", "is_stable", "enumerate_useful_pairs", "max_strata",
    "classify_nadir", "is_weakness_strata",
    # trimming
    "trim", "TrimReport", "verify_light_edges",
    # oracle / engine
    "RandomNeighborOracle", "ReplayOracle", "explore", "ExploreResult",
    "compiled_available",
    # tester
    "TesterParams", "derive_parameters", "test_h_freeness", "Verdict",
    "query_trace", "DEFAULT_QUERY_BUDGET",
    # generators
    "pattern_graph", "disjoint_copies", "planted_far_instance", "grid",
    "random_bounded_degree", "subdivide", "InstanceCertificate",
    # harness
    "ExperimentConfig", "ExperimentResult", "TrialRecord", "run_trials",
    "query_scaling_experiment", "lemma_check", "LEMMA_CHECKS", "report",
    "wilson_interval",
    # rng
    "SplitMix64", "derive_seed",
    # errors
    "HFreeTestError", "ParseError", "ConfigError", "GenerationError",
    "ParamsBudgetError", "QueryBudgetExceededError", "ResourceBudgetError",
    "IsolatedVertexError", "InternalInvariantError",
]
