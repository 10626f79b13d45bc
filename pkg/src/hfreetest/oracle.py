"""Random-neighbor query sessions.

The tester may only learn about the hidden graph through these sessions:
it knows the vertex count, may sample a uniform vertex (free), and may
ask for a uniform random neighbor of a known vertex (counted). A
scripted replay variant makes tester paths deterministic in tests.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .errors import (
    InvalidScriptAnswerError,
    IsolatedVertexError,
    ScriptExhaustedError,
)
from .graphs import Graph
from .rng import SplitMix64


class RandomNeighborOracle:
    """Seeded oracle over a hidden graph.

    One shared random stream serves both query kinds, consumed in call
    order, so a session is fully determined by (graph, seed, query
    sequence). Neighbor queries on isolated vertices raise after being
    counted and consume no randomness.
    """

    def __init__(self, graph: Graph, seed: int):
        self._graph = graph
        self.n = graph.n
        self.rng = SplitMix64(seed)
        self.query_count = 0
        self._csr: Optional[tuple[np.ndarray, np.ndarray]] = None

    def random_neighbor(self, v: int) -> int:
        if not (0 <= v < self.n):
            raise ValueError(f"vertex {v} out of range")
        self.query_count += 1
        nbrs = self._graph.neighbors(v)
        if not nbrs:
            raise IsolatedVertexError(f"vertex {v} has no neighbors")
        return nbrs[self.rng.below(len(nbrs))]

    def uniform_vertex(self) -> int:
        return self.rng.below(self.n)

    # --- internals for the compiled exploration kernel -------------------
    def _csr_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Adjacency in CSR form (indptr, flat sorted neighbor lists)."""
        if self._csr is None:
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            for v in range(self.n):
                indptr[v + 1] = indptr[v] + self._graph.degree(v)
            flat = np.empty(int(indptr[-1]), dtype=np.int64)
            for v in range(self.n):
                flat[int(indptr[v]) : int(indptr[v + 1])] = self._graph.neighbors(v)
            self._csr = (indptr, flat)
        return self._csr


class ReplayOracle:
    """Deterministic session answering from pre-recorded scripts.

    ``neighbor_script`` feeds random_neighbor answers in consumption
    order; ``vertex_script`` feeds uniform_vertex. Each answer is
    validated against the graph when one is supplied.
    """

    def __init__(
        self,
        n: int,
        neighbor_script: Sequence[int],
        vertex_script: Sequence[int] = (),
        graph: Optional[Graph] = None,
    ):
        self.n = n
        self._graph = graph
        self._neighbors = list(neighbor_script)
        self._vertices = list(vertex_script)
        self._ni = 0
        self._vi = 0
        self.query_count = 0

    def random_neighbor(self, v: int) -> int:
        if not (0 <= v < self.n):
            raise ValueError(f"vertex {v} out of range")
        self.query_count += 1
        if self._graph is not None and self._graph.degree(v) == 0:
            raise IsolatedVertexError(f"vertex {v} has no neighbors")
        if self._ni >= len(self._neighbors):
            raise ScriptExhaustedError("neighbor script exhausted")
        ans = self._neighbors[self._ni]
        self._ni += 1
        if self._graph is not None and not self._graph.has_edge(v, ans):
            raise InvalidScriptAnswerError(f"scripted answer {ans} is not a neighbor of {v}")
        return ans

    def uniform_vertex(self) -> int:
        if self._vi >= len(self._vertices):
            raise ScriptExhaustedError("vertex script exhausted")
        ans = self._vertices[self._vi]
        self._vi += 1
        if not (0 <= ans < self.n):
            raise InvalidScriptAnswerError(f"scripted vertex {ans} out of range")
        return ans
