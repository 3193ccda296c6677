"""Graph and instance model plus OR-Library STP text format support.

Vertex ids are 1-based throughout. Graphs are undirected and simple: self
loops are rejected and duplicate edges collapse to the minimum cost. Costs
are non-negative integers, which keeps every comparison in the greedy
solvers exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import ParseError
from .rng import SplitMix64

Edge = Tuple[int, int, int]


def normalize_edge(u: int, v: int, cost: int) -> Edge:
    return (u, v, cost) if u < v else (v, u, cost)


class Graph:
    """Immutable undirected graph with integer edge costs.

    Attributes:
        vertex_count: number of vertices, ids are 1..vertex_count.
        edges: tuple of (u, v, cost) with u < v, input order preserved.
        adjacency: adjacency[v] is a tuple of (neighbor, cost, edge_index).
        duplicate_collapses: tuple of (u, v, kept_cost, dropped_cost) records,
            one per duplicate edge that was merged away during construction.
    """

    __slots__ = (
        "vertex_count",
        "edges",
        "adjacency",
        "duplicate_collapses",
        "_cost_by_pair",
        "_incidence",
    )

    def __init__(self, vertex_count: int, edges: Iterable[Tuple[int, int, int]]):
        if vertex_count < 1:
            raise ValueError("vertex_count must be positive")
        self.vertex_count = int(vertex_count)

        kept: Dict[Tuple[int, int], int] = {}
        order: List[Tuple[int, int]] = []
        collapses: List[Tuple[int, int, int, int]] = []
        for u, v, cost in edges:
            u, v, cost = int(u), int(v), int(cost)
            if not (1 <= u <= vertex_count and 1 <= v <= vertex_count):
                raise ValueError(f"vertex id out of range in edge ({u}, {v})")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if cost < 0:
                raise ValueError(f"negative cost on edge ({u}, {v})")
            a, b = (u, v) if u < v else (v, u)
            if (a, b) in kept:
                old = kept[(a, b)]
                lo, hi = (cost, old) if cost < old else (old, cost)
                kept[(a, b)] = lo
                collapses.append((a, b, lo, hi))
            else:
                kept[(a, b)] = cost
                order.append((a, b))

        self.edges: Tuple[Edge, ...] = tuple((a, b, kept[(a, b)]) for a, b in order)
        self.duplicate_collapses = tuple(collapses)
        self._cost_by_pair = kept

        adj: List[List[Tuple[int, int, int]]] = [[] for _ in range(vertex_count + 1)]
        for idx, (a, b, cost) in enumerate(self.edges):
            adj[a].append((b, cost, idx))
            adj[b].append((a, cost, idx))
        self.adjacency: Tuple[Tuple[Tuple[int, int, int], ...], ...] = tuple(
            tuple(lst) for lst in adj
        )
        self._incidence = None

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def cost_of(self, u: int, v: int) -> Optional[int]:
        """Cost of the edge {u, v}, or None if absent."""
        a, b = (u, v) if u < v else (v, u)
        return self._cost_by_pair.get((a, b))

    def has_edge(self, u: int, v: int) -> bool:
        return self.cost_of(u, v) is not None

    def incidence_arrays(self):
        """Directed incidence arrays for the relaxation kernels.

        Returns (src, dst, cost, seg_offsets, seg_targets, seg_ids): every
        undirected edge appears in both directions, sorted by (dst, src).
        seg_offsets/seg_targets describe the contiguous runs of equal dst,
        and seg_ids[k] is the run index of directed edge k. Built lazily,
        cached, and shared by all hop tables over this graph.
        """
        if self._incidence is None:
            m2 = 2 * len(self.edges)
            src = np.empty(m2, dtype=np.int64)
            dst = np.empty(m2, dtype=np.int64)
            cst = np.empty(m2, dtype=np.int64)
            k = 0
            for a, b, c in self.edges:
                src[k], dst[k], cst[k] = a, b, c
                src[k + 1], dst[k + 1], cst[k + 1] = b, a, c
                k += 2
            order = np.lexsort((src, dst))
            src, dst, cst = src[order], dst[order], cst[order]
            if m2:
                boundaries = np.flatnonzero(np.diff(dst)) + 1
                seg_offsets = np.concatenate(([0], boundaries)).astype(np.int64)
                seg_targets = dst[seg_offsets]
                seg_ids = np.zeros(m2, dtype=np.int64)
                seg_ids[boundaries] = 1
                seg_ids = np.cumsum(seg_ids)
            else:
                seg_offsets = np.zeros(0, dtype=np.int64)
                seg_targets = np.zeros(0, dtype=np.int64)
                seg_ids = np.zeros(0, dtype=np.int64)
            self._incidence = (src, dst, cst, seg_offsets, seg_targets, seg_ids)
        return self._incidence

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertex_count == other.vertex_count and sorted(self.edges) == sorted(
            other.edges
        )

    def __hash__(self):
        return hash((self.vertex_count, tuple(sorted(self.edges))))

    def __repr__(self) -> str:
        return f"Graph(n={self.vertex_count}, m={self.edge_count})"


@dataclass(frozen=True)
class Instance:
    """A solver input: graph, root, basic vertices and hop budget.

    The root is implicitly mandatory and never part of `terminals`.
    """

    graph: Graph
    root: int
    terminals: FrozenSet[int]
    hop_limit: int

    def __post_init__(self):
        n = self.graph.vertex_count
        if not 1 <= self.root <= n:
            raise ValueError(f"root {self.root} out of range 1..{n}")
        object.__setattr__(self, "terminals", frozenset(int(t) for t in self.terminals))
        for t in self.terminals:
            if not 1 <= t <= n:
                raise ValueError(f"terminal {t} out of range 1..{n}")
            if t == self.root:
                raise ValueError("root must not be listed among the terminals")
        if self.hop_limit < 1:
            raise ValueError("hop_limit must be at least 1")


@dataclass(frozen=True)
class SteinerTree:
    """A feasible solution: a tree rooted at the instance root.

    depth maps every tree vertex to its hop count from the root.
    """

    edges: FrozenSet[Edge]
    vertices: FrozenSet[int]
    total_cost: int
    depth: Dict[int, int] = field(compare=False)

    @property
    def max_depth(self) -> int:
        return max(self.depth.values()) if self.depth else 0


# ---------------------------------------------------------------------------
# OR-Library STP text format
# ---------------------------------------------------------------------------

_TOKEN = re.compile(rb"\S+")


def parse_orlib(text) -> Tuple[Graph, FrozenSet[int]]:
    """Parse the OR-Library Steiner format: ``n m``, then m cost triples
    ``u v c``, then ``t`` followed by t terminal ids. Whitespace of any kind
    separates tokens.

    Returns the graph and the file's declared terminal set. The declared set
    is informational: the benchmark harness samples its own terminal vectors.
    """
    if isinstance(text, str):
        data = text.encode("utf-8")
    elif isinstance(text, (bytes, bytearray)):
        data = bytes(text)
    else:  # file-like
        data = text.read()
        if isinstance(data, str):
            data = data.encode("utf-8")

    tokens = [(m.group(0), m.start()) for m in _TOKEN.finditer(data)]
    pos = 0

    def take(what: str) -> Tuple[int, int]:
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError(f"unexpected end of input, expected {what}", len(data))
        raw, offset = tokens[pos]
        pos += 1
        try:
            return int(raw), offset
        except ValueError:
            raise ParseError(f"expected integer {what}, got {raw!r}", offset) from None

    n, off_n = take("vertex count")
    if n < 1:
        raise ParseError("vertex count must be positive", off_n)
    m, off_m = take("edge count")
    if m < 0:
        raise ParseError("edge count must be non-negative", off_m)

    edges = []
    for _ in range(m):
        u, off_u = take("edge endpoint")
        v, off_v = take("edge endpoint")
        c, off_c = take("edge cost")
        if not 1 <= u <= n:
            raise ParseError(f"vertex id {u} out of range 1..{n}", off_u)
        if not 1 <= v <= n:
            raise ParseError(f"vertex id {v} out of range 1..{n}", off_v)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", off_u)
        if c < 0:
            raise ParseError(f"negative edge cost {c}", off_c)
        edges.append((u, v, c))

    t, off_t = take("terminal count")
    if t < 0:
        raise ParseError("terminal count must be non-negative", off_t)
    terminals = set()
    for _ in range(t):
        q, off_q = take("terminal id")
        if not 1 <= q <= n:
            raise ParseError(f"terminal id {q} out of range 1..{n}", off_q)
        terminals.add(q)

    if pos != len(tokens):
        raise ParseError("trailing tokens after terminal list", tokens[pos][1])

    return Graph(n, edges), frozenset(terminals)


def serialize_orlib(graph: Graph, terminals: Iterable[int] = ()) -> str:
    """Render a graph (and optional terminal set) in OR-Library format."""
    lines = [f"{graph.vertex_count} {graph.edge_count}"]
    lines.extend(f"{u} {v} {c}" for u, v, c in graph.edges)
    terms = sorted(set(int(t) for t in terminals))
    lines.append(str(len(terms)))
    if terms:
        lines.append(" ".join(str(t) for t in terms))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Terminal sampling and diagnostics
# ---------------------------------------------------------------------------


def select_terminals(graph: Graph, root: int, count: int, seed: int) -> FrozenSet[int]:
    """Deterministic sample of `count` distinct non-root vertices.

    Same (graph, root, count, seed) always produces the same set; the draw is
    a splitmix64-driven partial Fisher-Yates over the sorted candidate list.
    """
    if not 1 <= root <= graph.vertex_count:
        raise ValueError(f"root {root} out of range")
    if count < 1:
        raise ValueError("count must be positive")
    if count > graph.vertex_count - 1:
        raise ValueError(
            f"cannot sample {count} terminals from {graph.vertex_count - 1} non-root vertices"
        )
    pool = [v for v in range(1, graph.vertex_count + 1) if v != root]
    rng = SplitMix64(seed)
    return frozenset(rng.sample(pool, count))


@dataclass(frozen=True)
class GraphDiagnostics:
    """Pure report produced by validate_graph; nothing here raises."""

    vertex_count: int
    isolated_vertices: Tuple[int, ...]
    duplicate_collapses: Tuple[Tuple[int, int, int, int], ...]
    root_component_size: int
    fully_connected: bool

    @property
    def warnings(self) -> Tuple[str, ...]:
        out = []
        if self.isolated_vertices:
            out.append(f"isolated vertices: {list(self.isolated_vertices)}")
        for u, v, kept, dropped in self.duplicate_collapses:
            out.append(f"duplicate edge ({u},{v}) collapsed, kept cost {kept}, dropped {dropped}")
        if not self.fully_connected:
            out.append(
                f"root component covers {self.root_component_size} of "
                f"{self.vertex_count} vertices"
            )
        return tuple(out)


def validate_graph(graph: Graph, root: int = 1) -> GraphDiagnostics:
    """Report isolated vertices, duplicate-edge collapses and connectivity of
    the component containing `root`."""
    isolated = tuple(
        v for v in range(1, graph.vertex_count + 1) if not graph.adjacency[v]
    )
    seen = {root}
    stack = [root]
    while stack:
        u = stack.pop()
        for w, _, _ in graph.adjacency[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return GraphDiagnostics(
        vertex_count=graph.vertex_count,
        isolated_vertices=isolated,
        duplicate_collapses=graph.duplicate_collapses,
        root_component_size=len(seen),
        fully_connected=len(seen) == graph.vertex_count,
    )
