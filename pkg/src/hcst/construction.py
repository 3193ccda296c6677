"""Shared growth phase and the constructive baseline.

Phase 1 grows a set G outward from the root, Prim-style but over hop-feasible
paths instead of single edges: each round attaches the cheapest remaining
basic vertex through fresh intermediate vertices. Along the way it records,
for every vertex, the hop depth at which it entered (its U label), and for
every basic vertex, its entry order (itr label) and the path segment that
attached it (its G-path). The baseline solution is simply this set G with
non-terminal leaves pruned, which under the growth rule is a no-op.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Tuple

from .errors import InfeasibleInstanceError, StructureError
from .graph import Edge, Graph, Instance, SteinerTree, normalize_edge
from .hop_paths import Path, hop_limited_sssp


@dataclass(frozen=True)
class GrowthState:
    """Output of phase 1.

    g_path maps each terminal to the prefix of its attaching path that ends
    at the terminal, starting from the attachment vertex already in G.
    """

    g_vertices: FrozenSet[int]
    g_edges: FrozenSet[Edge]
    u_label: Dict[int, int]
    itr_label: Dict[int, int]
    g_path: Dict[int, Path]
    attach_order: Tuple[Path, ...]


def phase1_grow(instance: Instance) -> GrowthState:
    """Grow G from the root until it contains every basic vertex.

    Each round builds a multi-source hop table seeded at every G vertex at
    its U label, with G itself blocked, and attaches the terminal whose best
    path is cheapest (ties: lower cost, then lower arrival layer, then lower
    terminal id). Raises InfeasibleInstanceError when some terminal admits no
    hop-feasible attachment.
    """
    if not instance.terminals:
        raise ValueError("phase 1 requires a non-empty terminal set")
    graph = instance.graph
    hop = instance.hop_limit
    root = instance.root

    g_vertices = {root}
    g_edges: set = set()
    u_label = {root: 0}
    itr_label: Dict[int, int] = {}
    g_path: Dict[int, Path] = {}
    attach_order: List[Path] = []
    remaining = set(instance.terminals)
    next_itr = 1

    while remaining:
        table = hop_limited_sssp(
            graph,
            sources=((v, u_label[v]) for v in g_vertices),
            hop_limit=hop,
            blocked=g_vertices,
        )
        best = None
        for t in sorted(remaining):
            cost, layer = table.best(t)
            if layer is None:
                continue
            key = (cost, layer, t)
            if best is None or key < best:
                best = key
        if best is None:
            raise InfeasibleInstanceError(
                min(remaining),
                f"terminals {sorted(remaining)} have no hop-feasible connection to the grown set",
            )

        _, layer, terminal = best
        path = table.extract(terminal, layer)
        attach = path.vertices[0]
        for i, v in enumerate(path.vertices[1:], start=1):
            u_label[v] = u_label[attach] + i
            g_vertices.add(v)
        for a, b in path.edges():
            g_edges.add(normalize_edge(a, b, graph.cost_of(a, b)))
        for v in path.vertices[1:]:
            if v in remaining:
                itr_label[v] = next_itr
                next_itr += 1
                remaining.discard(v)
                g_path[v] = path.prefix_to(v, graph)
        attach_order.append(path)

    return GrowthState(
        g_vertices=frozenset(g_vertices),
        g_edges=frozenset(g_edges),
        u_label=dict(u_label),
        itr_label=dict(itr_label),
        g_path=dict(g_path),
        attach_order=tuple(attach_order),
    )


def build_tree(edges: Iterable[Edge], instance: Instance, require_terminals: bool = True) -> SteinerTree:
    """Assemble and verify a SteinerTree from an edge set.

    Checks tree shape (edge count, connectivity from the root) and, when
    require_terminals is set, terminal coverage. Depths are recomputed by BFS.
    """
    norm = {normalize_edge(u, v, c) for u, v, c in edges}
    vertices = {instance.root}
    for u, v, _ in norm:
        vertices.add(u)
        vertices.add(v)
    if len(norm) != len(vertices) - 1:
        raise StructureError(
            f"edge set is not a tree: {len(norm)} edges over {len(vertices)} vertices"
        )

    adj: Dict[int, List[int]] = {v: [] for v in vertices}
    for u, v, _ in norm:
        adj[u].append(v)
        adj[v].append(u)
    depth = {instance.root: 0}
    frontier = [instance.root]
    while frontier:
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if w not in depth:
                    depth[w] = depth[u] + 1
                    nxt.append(w)
        frontier = nxt
    if len(depth) != len(vertices):
        raise StructureError("edge set is disconnected from the root")
    if require_terminals and not instance.terminals <= vertices:
        missing = sorted(instance.terminals - vertices)
        raise StructureError(f"tree misses terminals {missing}")

    return SteinerTree(
        edges=frozenset(norm),
        vertices=frozenset(vertices),
        total_cost=sum(c for _, _, c in norm),
        depth=depth,
    )


def prune_non_terminal_leaves(tree_edges: Iterable[Edge], instance: Instance) -> SteinerTree:
    """Strip degree-1 vertices that are neither the root nor terminals.

    The input must already form a tree containing the root. Phase-1 output
    never has such leaves, so for the baseline this is defensive cleanup.
    """
    tree = build_tree(tree_edges, instance, require_terminals=False)
    edges = set(tree.edges)
    degree: Dict[int, int] = {}
    for u, v, _ in edges:
        degree[u] = degree.get(u, 0) + 1
        degree[v] = degree.get(v, 0) + 1

    keep = instance.terminals | {instance.root}
    candidates = [v for v, d in degree.items() if d == 1 and v not in keep]
    while candidates:
        leaf = candidates.pop()
        if degree.get(leaf, 0) != 1:
            continue
        edge = next(e for e in edges if leaf in (e[0], e[1]))
        edges.remove(edge)
        other = edge[0] if edge[1] == leaf else edge[1]
        degree[leaf] = 0
        degree[other] -= 1
        if degree[other] == 1 and other not in keep:
            candidates.append(other)

    return build_tree(edges, instance)


def voss_baseline(instance: Instance) -> SteinerTree:
    """The constructive baseline: phase-1 G itself, leaf-pruned."""
    growth = phase1_grow(instance)
    return prune_non_terminal_leaves(growth.g_edges, instance)
