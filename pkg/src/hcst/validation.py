"""Feasibility checking and an exhaustive exact oracle for tiny instances."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from .graph import Edge, Instance, SteinerTree, normalize_edge


@dataclass(frozen=True)
class FeasibilityReport:
    """Structural verdict on a candidate solution. Never raises; every
    finding lands in `violations`."""

    is_tree: bool
    connected: bool
    spans_terminals: bool
    max_depth: int
    hop_feasible: bool
    cost_ok: bool
    violations: Tuple[str, ...]

    @property
    def passed(self) -> bool:
        return (
            self.is_tree
            and self.connected
            and self.spans_terminals
            and self.hop_feasible
            and self.cost_ok
        )


def check_feasible(tree: SteinerTree, instance: Instance) -> FeasibilityReport:
    """Verify edge existence, tree shape, terminal coverage, hop depths and
    the recorded cost of a solution against its instance."""
    graph = instance.graph
    violations: List[str] = []

    edges = {normalize_edge(u, v, c) for u, v, c in tree.edges}
    for u, v, c in sorted(edges):
        actual = graph.cost_of(u, v)
        if actual is None:
            violations.append(f"edge ({u},{v}) does not exist in the graph")
        elif actual != c:
            violations.append(f"edge ({u},{v}) carries cost {c}, graph says {actual}")

    vertices = {instance.root}
    for u, v, _ in edges:
        vertices.update((u, v))
    if vertices != set(tree.vertices):
        violations.append("vertex set does not match the edge set plus root")

    is_tree = len(edges) == len(vertices) - 1
    if not is_tree:
        violations.append(f"{len(edges)} edges over {len(vertices)} vertices is not a tree")

    adj: Dict[int, List[int]] = {v: [] for v in vertices}
    for u, v, _ in edges:
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
    connected = len(depth) == len(vertices)
    if not connected:
        violations.append("structure is disconnected from the root")

    spans = instance.terminals <= vertices
    if not spans:
        violations.append(f"missing terminals {sorted(instance.terminals - vertices)}")

    max_depth = max(depth.values()) if depth else 0
    hop_feasible = max_depth <= instance.hop_limit
    if not hop_feasible:
        violations.append(f"max depth {max_depth} exceeds hop limit {instance.hop_limit}")

    recomputed = sum(c for _, _, c in edges)
    cost_ok = recomputed == tree.total_cost
    if not cost_ok:
        violations.append(f"recorded cost {tree.total_cost} != recomputed {recomputed}")

    return FeasibilityReport(
        is_tree=is_tree,
        connected=connected,
        spans_terminals=spans,
        max_depth=max_depth,
        hop_feasible=hop_feasible,
        cost_ok=cost_ok,
        violations=tuple(violations),
    )


@dataclass(frozen=True)
class OracleResult:
    """Exact optimum, or an infeasibility verdict (a value, not an error:
    small random instances legitimately have no hop-feasible tree)."""

    feasible: bool
    cost: Optional[int]
    tree: Optional[SteinerTree]


def exact_hcst(instance: Instance, vertex_cap: int = 12) -> OracleResult:
    """Exhaustive optimum by branch and bound.

    For every subset of optional vertices, enumerates spanning trees of the
    induced subgraph on root + terminals + subset via edge inclusion and
    exclusion, pruning on partial cost and on root-side depths. Only meant
    for desk-scale inputs; refuses anything above `vertex_cap` vertices.
    """
    n = instance.graph.vertex_count
    if n > vertex_cap:
        raise ValueError(f"instance has {n} vertices, oracle cap is {vertex_cap}")

    required = set(instance.terminals) | {instance.root}
    optional = sorted(set(range(1, n + 1)) - required)

    best: List = [None, None]  # cost, edge tuple

    for size in range(len(optional) + 1):
        for subset in combinations(optional, size):
            _search_subset(instance, required | set(subset), best)

    if best[0] is None:
        return OracleResult(feasible=False, cost=None, tree=None)
    from .construction import build_tree

    tree = build_tree(best[1], instance)
    return OracleResult(feasible=True, cost=tree.total_cost, tree=tree)


def _search_subset(instance: Instance, wanted: set, best: List) -> None:
    graph = instance.graph
    root = instance.root
    hop = instance.hop_limit
    verts = sorted(wanted)
    k = len(verts)

    edges = sorted(
        (e for e in graph.edges if e[0] in wanted and e[1] in wanted),
        key=lambda e: (e[2], e[0], e[1]),
    )
    m = len(edges)
    if m < k - 1:
        return

    # optimistic completion bound: sum of the cheapest `need` costs among the
    # not-yet-considered edges (edges are cost-sorted, so that is a prefix)
    costs = [c for _, _, c in edges]
    suffix: List[List[int]] = []
    for i in range(m + 1):
        tail = costs[i:]
        row = [0] * k
        for need in range(1, k):
            row[need] = sum(tail[:need]) if need <= len(tail) else -1
        suffix.append(row)

    parent = {v: v for v in verts}
    size = {v: 1 for v in verts}
    depth = {v: -1 for v in verts}
    depth[root] = 0
    chosen_adj: Dict[int, List[Tuple[int, int]]] = {v: [] for v in verts}
    picked: List[Edge] = []

    def find(v: int) -> int:
        while parent[v] != v:
            v = parent[v]
        return v

    def union(a: int, b: int) -> Optional[Tuple[int, int]]:
        ra, rb = find(a), find(b)
        if ra == rb:
            return None
        if size[ra] < size[rb]:
            ra, rb = rb, ra
        parent[rb] = ra
        size[ra] += size[rb]
        return ra, rb

    def assign_depths(seed: int) -> Tuple[List[int], bool]:
        """Propagate known depths into a freshly merged component."""
        assigned = []
        ok = True
        stack = [seed]
        while stack:
            u = stack.pop()
            for w, _ in chosen_adj[u]:
                if depth[w] == -1:
                    depth[w] = depth[u] + 1
                    assigned.append(w)
                    if depth[w] > hop:
                        ok = False
                    stack.append(w)
        return assigned, ok

    def rec(i: int, cost: int) -> None:
        need = k - 1 - len(picked)
        if need == 0:
            if best[0] is None or cost < best[0]:
                best[0] = cost
                best[1] = tuple(picked)
            return
        if i >= m or m - i < need:
            return
        bound = suffix[i][need]
        if bound < 0:
            return
        if best[0] is not None and cost + bound >= best[0]:
            return

        u, v, c = edges[i]
        merged = union(u, v)
        if merged is not None:
            ra, rb = merged
            picked.append(edges[i])
            chosen_adj[u].append((v, c))
            chosen_adj[v].append((u, c))
            assigned: List[int] = []
            ok = True
            if depth[u] != -1 and depth[v] == -1:
                depth[v] = depth[u] + 1
                assigned.append(v)
                ok = depth[v] <= hop
                if ok:
                    more, ok = assign_depths(v)
                    assigned.extend(more)
            elif depth[v] != -1 and depth[u] == -1:
                depth[u] = depth[v] + 1
                assigned.append(u)
                ok = depth[u] <= hop
                if ok:
                    more, ok = assign_depths(u)
                    assigned.extend(more)
            if ok:
                rec(i + 1, cost + c)
            for w in assigned:
                depth[w] = -1
            chosen_adj[u].pop()
            chosen_adj[v].pop()
            picked.pop()
            parent[rb] = rb
            size[ra] -= size[rb]

        rec(i + 1, cost)

    rec(0, 0)
