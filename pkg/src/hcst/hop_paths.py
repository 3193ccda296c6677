"""Hop-bounded shortest paths via layered relaxation.

A HopTable answers "cheapest way to reach v from any source using at most
h edges beyond the source's start layer, without passing through blocked
vertices". Sources may sit at arbitrary start layers, which is how the
solvers seed searches from partially built trees: a tree vertex at depth d
becomes a source at layer d, so layer arithmetic enforces the hop budget of
any attachment automatically.

Construction runs in O(E * H). Completed tables are immutable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Tuple

import numpy as np

from . import kernels
from .errors import UnreachableError
from .graph import Graph
from .kernels import INF


@dataclass(frozen=True)
class Path:
    """A simple path: vertex sequence plus its total cost."""

    vertices: Tuple[int, ...]
    cost: int

    @property
    def hops(self) -> int:
        return len(self.vertices) - 1

    def edges(self) -> Iterable[Tuple[int, int]]:
        return zip(self.vertices, self.vertices[1:])

    def prefix_to(self, vertex: int, graph: Graph) -> "Path":
        """The leading sub-path ending at `vertex`."""
        idx = self.vertices.index(vertex)
        verts = self.vertices[: idx + 1]
        cost = sum(graph.cost_of(a, b) for a, b in zip(verts, verts[1:]))
        return Path(verts, cost)


class HopTable:
    """Layered distance table with predecessor links.

    Costs are non-increasing in the layer index: each cell stores the best
    cost reachable at that layer or below. Unreachable cells report math.inf
    through the public accessors; internally a saturating integer sentinel is
    used so all finite arithmetic stays exact.
    """

    __slots__ = ("graph", "hop_limit", "sources", "blocked", "_dist", "_hops", "_pred")

    def __init__(self, graph: Graph, hop_limit: int, sources, blocked,
                 dist, hops, pred):
        self.graph = graph
        self.hop_limit = hop_limit
        self.sources: FrozenSet[Tuple[int, int]] = frozenset(sources)
        self.blocked: FrozenSet[int] = frozenset(blocked)
        self._dist = dist
        self._hops = hops
        self._pred = pred

    def cost(self, vertex: int, layer: int):
        """Cost of the best chain into (vertex, layer); math.inf if none."""
        c = int(self._dist[layer, vertex])
        return math.inf if c >= INF else c

    def reachable(self, vertex: int, layer: int) -> bool:
        return self._dist[layer, vertex] < INF

    def best(self, vertex: int):
        """(cost, first_layer) at the full hop budget.

        first_layer is the smallest layer already achieving the best cost,
        i.e. the depth at which the reconstructed path arrives.
        """
        top = self.hop_limit
        c = self._dist[top, vertex]
        if c >= INF:
            return math.inf, None
        h = top
        while h > 0 and self._dist[h - 1, vertex] == c:
            h -= 1
        return int(c), h

    def extract(self, vertex: int, layer: int) -> Path:
        """Reconstruct one optimal path into (vertex, layer)."""
        if self._dist[layer, vertex] >= INF:
            raise UnreachableError(
                f"vertex {vertex} is not reachable within layer {layer}"
            )
        cost = int(self._dist[layer, vertex])
        rev = [vertex]
        v, h = vertex, layer
        while True:
            p = int(self._pred[h, v])
            if p == -1:
                break
            if p != v:
                rev.append(p)
                v = p
            h -= 1
        return Path(tuple(reversed(rev)), cost)


def hop_limited_sssp(graph: Graph, sources, hop_limit: int, blocked=frozenset()) -> HopTable:
    """Build the layered table for a multi-source hop-bounded search.

    sources: iterable of (vertex, start_layer) pairs with start layers in
        [0, hop_limit]. Blocked vertices may appear as sources and as path
        endpoints but never as path interiors.
    """
    sources = frozenset((int(v), int(l)) for v, l in sources)
    if not sources:
        raise ValueError("sources must be non-empty")
    if hop_limit < 0:
        raise ValueError("hop_limit must be non-negative")
    n = graph.vertex_count
    for v, layer in sources:
        if not 1 <= v <= n:
            raise ValueError(f"source vertex {v} out of range")
        if not 0 <= layer <= hop_limit:
            raise ValueError(f"source layer {layer} outside [0, {hop_limit}]")

    blocked = frozenset(int(b) for b in blocked)
    blocked_arr = np.zeros(n + 1, dtype=np.uint8)
    for b in blocked:
        blocked_arr[b] = 1

    ordered = sorted(sources)
    src_v = np.array([v for v, _ in ordered], dtype=np.int64)
    src_layer = np.array([l for _, l in ordered], dtype=np.int64)

    src, dst, cst, seg_offsets, seg_targets, seg_ids = graph.incidence_arrays()
    dist, hops, pred, _ = kernels.relax_layers(
        n, hop_limit, src, dst, cst, seg_offsets, seg_targets, seg_ids,
        src_v, src_layer, blocked_arr,
    )
    return HopTable(graph, hop_limit, sources, blocked, dist, hops, pred)


def extract_path(table: HopTable, target: int, layer: int) -> Path:
    """Reconstruct one optimal path to (target, layer) from its table."""
    return table.extract(target, layer)
