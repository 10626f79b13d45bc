"""Command-line interface.

Subcommands: gen, adm, trim, dist, struct, test, bench, lemma-check.
Every subcommand takes its structured options through --params, either
inline JSON or a path to a JSON file. Exit codes: 0 success, 1 when any
trial aborts or a check fails, 2 on configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from ._version import __version__
from .admissibility import admissibility_of_order, exact_admissibility, greedy_admissibility_order
from .errors import (
    ConfigError,
    GenerationError,
    HFreeTestError,
    ParamsBudgetError,
    ParseError,
)
from .generators import pattern_graph
from .graphs import Graph, OrderedGraph, Ordering, distance_to_h_freeness, parse_json_graph
from .harness import (
    ExperimentConfig,
    LEMMA_CHECKS,
    build_instance,
    lemma_check,
    query_scaling_experiment,
    report,
    run_trials,
)
from .rng import derive_seed
from .structure import UsefulPair, enumerate_useful_pairs, is_stable, nadir, spine
from .trimming import trim, verify_light_edges

EXIT_OK = 0
EXIT_ABORT = 1
EXIT_CONFIG = 2


def _load_params(value: Optional[str]) -> dict:
    if value is None:
        return {}
    text = value.strip()
    if not text.startswith("{"):
        try:
            with open(text) as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read params file: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid params JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError("params must be a JSON object")
    return doc


def _read_graph_file(path: str) -> OrderedGraph:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read graph file: {exc}") from None
    if text.lstrip().startswith("{"):
        g, order = parse_json_graph(text)
        return OrderedGraph(g, order)
    from .graphs import parse_edge_list

    return OrderedGraph(parse_edge_list(text))


def _emit(doc, out: Optional[str]) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _pop(params: dict, key: str, default=None, required: bool = False):
    if required and key not in params:
        raise ConfigError(f"--params needs {key!r}")
    return params.pop(key, default)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_gen(args) -> int:
    params = _load_params(args.params)
    pattern = _pop(params, "pattern", required=True)
    gen_seed = derive_seed(args.seed, 0)
    graph, cert = build_instance(params, pattern, gen_seed)
    order = None
    if cert is not None and cert.adm_order is not None:
        order = Ordering(cert.adm_order)
    graph_text = graph.to_json_doc(order)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(graph_text)
    else:
        sys.stdout.write(graph_text)
    if cert is not None:
        cert_doc = {
            "generator": cert.generator,
            "params": cert.params,
            "seed": cert.seed,
            "n": cert.n,
            "pattern_edges": [list(e) for e in cert.pattern_edges],
            "farness_lower_bound": cert.farness_lower_bound,
            "packing_size": len(cert.packing),
            "adm_radius": cert.adm_radius,
            "adm_bound": cert.adm_bound,
        }
        _emit(cert_doc, args.out + ".cert.json" if args.out else None)
    return EXIT_OK


def _cmd_adm(args) -> int:
    params = _load_params(args.params)
    radius = int(_pop(params, "radius", required=True))
    method = _pop(params, "method", "exact")
    if params:
        raise ConfigError(f"unknown params keys {sorted(params)}")
    og = _read_graph_file(args.graph)
    if method == "order":
        value = admissibility_of_order(og, radius)
        doc = {"method": "order", "admissibility": value, "order": list(og.order.sequence)}
    elif method == "exact":
        value, order = exact_admissibility(og.graph, radius)
        doc = {"method": "exact", "admissibility": value, "order": list(order.sequence)}
    elif method == "greedy":
        order, value = greedy_admissibility_order(og.graph, radius)
        doc = {"method": "greedy", "admissibility": value, "order": list(order.sequence)}
    else:
        raise ConfigError(f"unknown method {method!r}; use exact, greedy, or order")
    doc.update({"n": og.n, "radius": radius})
    _emit(doc, args.out)
    return EXIT_OK


def _cmd_trim(args) -> int:
    params = _load_params(args.params)
    pattern = _pop(params, "pattern", required=True)
    radius = int(_pop(params, "radius", required=True))
    alpha = int(_pop(params, "degree_bound", required=True))
    beta = int(_pop(params, "sparsity_bound", required=True))
    delta = int(_pop(params, "weakness_bound", required=True))
    if params:
        raise ConfigError(f"unknown params keys {sorted(params)}")
    og = _read_graph_file(args.graph)
    h = pattern_graph(pattern)
    trimmed, rep = trim(og, h, radius, alpha, beta, delta)
    light_ok, offending = verify_light_edges(trimmed, og.graph, alpha)
    doc = {
        "n": og.n,
        "edges_before": og.graph.m,
        "edges_after": trimmed.graph.m,
        "removed_per_step": {str(k): v for k, v in rep.removed_per_step.items()},
        "rounds": rep.rounds,
        "light_edges_ok": light_ok,
        "light_edges_offender": list(offending) if offending else None,
        "trimmed_edges": [list(e) for e in trimmed.graph.sorted_edges()],
    }
    _emit(doc, args.out)
    return EXIT_OK


def _cmd_dist(args) -> int:
    params = _load_params(args.params)
    pattern = _pop(params, "pattern", required=True)
    if params:
        raise ConfigError(f"unknown params keys {sorted(params)}")
    og = _read_graph_file(args.graph)
    h = pattern_graph(pattern)
    res = distance_to_h_freeness(og.graph, h)
    doc = {
        "n": og.n,
        "pattern": pattern,
        "lower_bound": res.lower_bound,
        "upper_bound": res.upper_bound,
        "exact": res.exact,
        "packing_size": len(res.packing),
    }
    _emit(doc, args.out)
    return EXIT_OK


def _cmd_struct(args) -> int:
    params = _load_params(args.params)
    pattern = _pop(params, "pattern", required=True)
    u = _pop(params, "u")
    if params:
        raise ConfigError(f"unknown params keys {sorted(params)}")
    og = _read_graph_file(args.graph)
    h = pattern_graph(pattern)
    pairs = enumerate_useful_pairs(og, h)
    doc: dict = {
        "n": og.n,
        "pattern": pattern,
        "useful_pairs": [
            {
                "host_vertices": sorted(host.vertices),
                "vertices": sorted(up.subgraph.vertices),
                "edges": [list(e) for e in sorted(up.subgraph.edge_set)],
                "prefix": sorted(up.prefix),
                "nadir": nadir(up) if up.body else None,
            }
            for host, up in pairs
        ],
    }
    if u is not None:
        u = frozenset(int(v) for v in u)
        spines = []
        seen = set()
        for host, _ in pairs:
            if host.key() in seen:
                continue
            seen.add(host.key())
            sp = spine(host, u)
            spines.append(
                {
                    "host_vertices": sorted(host.vertices),
                    "stable": is_stable(host, u),
                    "spine_pairs": [
                        {"vertices": sorted(p.subgraph.vertices), "prefix": sorted(p.prefix)}
                        for p in sp.pairs
                    ],
                }
            )
        doc["u"] = sorted(u)
        doc["spines"] = spines
    _emit(doc, args.out)
    return EXIT_OK


def _cmd_test(args) -> int:
    params = _load_params(args.params)
    pattern = _pop(params, "pattern", required=True)
    generator = _pop(params, "generator", required=True)
    tester_params = dict(_pop(params, "params", required=True))
    record_timing = bool(_pop(params, "record_timing", True))
    early_exit = bool(_pop(params, "early_exit", False))
    backend = _pop(params, "backend", "auto")
    if params:
        raise ConfigError(f"unknown params keys {sorted(params)}")
    if args.mode:
        tester_params["mode"] = args.mode
    config = ExperimentConfig(
        generator=dict(generator),
        pattern=pattern,
        params=tester_params,
        trials=args.trials,
        seed_root=args.seed,
        jobs=args.jobs,
        out=args.out,
        record_timing=record_timing,
        early_exit=early_exit,
        backend=backend,
    )
    result = run_trials(config)
    text, _ = report(result)
    sys.stdout.write(text)
    return EXIT_ABORT if result.summary["aborts"] else EXIT_OK


def _cmd_bench(args) -> int:
    params = _load_params(args.params)
    pattern = _pop(params, "pattern", required=True)
    sizes = _pop(params, "sizes", required=True)
    tester_params = dict(_pop(params, "params", required=True))
    epsilon = _pop(params, "epsilon")
    if params:
        raise ConfigError(f"unknown params keys {sorted(params)}")
    if args.mode:
        tester_params["mode"] = args.mode
    table = query_scaling_experiment(
        pattern,
        [int(n) for n in sizes],
        tester_params,
        trials=args.trials,
        seed_root=args.seed,
        epsilon=None if epsilon is None else Fraction(epsilon),
        jobs=args.jobs,
    )
    _emit(table, args.out)
    return EXIT_OK


def _cmd_lemma_check(args) -> int:
    params = _load_params(args.params)
    overrides = _pop(params, "overrides")
    verify = bool(_pop(params, "verify_hypotheses", True))
    backend = _pop(params, "backend", "auto")
    if params:
        raise ConfigError(f"unknown params keys {sorted(params)}")
    names = sorted(LEMMA_CHECKS) if args.name == "all" else [args.name]
    reports = []
    worst = EXIT_OK
    for name in names:
        rep = lemma_check(
            name,
            trials=args.trials if args.trials_given else None,
            seed_root=args.seed,
            overrides=overrides,
            verify_hypotheses=verify,
            backend=backend,
        )
        reports.append(rep)
        line = f"{rep['name']}: {rep['status']}  bound={rep['bound']:.4f}"
        if rep["observed"] is not None:
            line += f" observed={rep['observed']:.4f} ({rep['successes']}/{rep['trials']})"
        sys.stdout.write(line + "\n")
        if rep["status"] == "FAIL":
            worst = EXIT_ABORT
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(json.dumps(reports, sort_keys=True, indent=2) + "\n")
    return worst


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hfreetest",
        description="Pattern-freeness property testing toolkit for sparse ordered graphs",
    )
    parser.add_argument("--version", action="version", version=f"hfreetest {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, graph_arg=False, name_arg=False):
        if graph_arg:
            p.add_argument("graph", help="graph file (edge-list or JSON format)")
        if name_arg:
            p.add_argument("name", help="check name or 'all'")
        p.add_argument("--seed", type=int, default=0, help="seed root (default 0)")
        p.add_argument("--trials", type=int, default=100, help="trial count (default 100)")
        p.add_argument("--jobs", type=int, default=1, help="parallel workers (default 1)")
        p.add_argument("--params", help="inline JSON object or path to a JSON file")
        p.add_argument("--mode", choices=["theory", "practical"], help="parameter mode")
        p.add_argument("--out", help="output path")
        return p

    common(sub.add_parser("gen", help="generate a certified instance"))
    common(sub.add_parser("adm", help="compute admissibility of a graph"), graph_arg=True)
    common(sub.add_parser("trim", help="run the trimming fixpoint"), graph_arg=True)
    common(sub.add_parser("dist", help="edge-deletion distance to pattern-freeness"), graph_arg=True)
    common(sub.add_parser("struct", help="dump useful pairs / spines as JSON"), graph_arg=True)
    common(sub.add_parser("test", help="Monte-Carlo tester trials over an instance"))
    common(sub.add_parser("bench", help="query-scaling experiment across sizes"))
    common(sub.add_parser("lemma-check", help="empirical probability-bound checks"), name_arg=True)
    return parser


_COMMANDS = {
    "gen": _cmd_gen,
    "adm": _cmd_adm,
    "trim": _cmd_trim,
    "dist": _cmd_dist,
    "struct": _cmd_struct,
    "test": _cmd_test,
    "bench": _cmd_bench,
    "lemma-check": _cmd_lemma_check,
}


def main(argv: Optional[list[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage and 0 on --help/--version
        return EXIT_CONFIG if exc.code not in (0, None) else EXIT_OK
    args.trials_given = any(a == "--trials" or a.startswith("--trials=") for a in argv)
    try:
        return _COMMANDS[args.command](args)
    except (ConfigError, ParseError, GenerationError, ParamsBudgetError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG
    except HFreeTestError as exc:
        sys.stderr.write(f"aborted: {exc}\n")
        return EXIT_ABORT


if __name__ == "__main__":
    sys.exit(main())
