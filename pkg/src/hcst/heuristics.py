"""The three rebuilding heuristics and their combination.

All four consume the same GrowthState. The two depth-ordered heuristics
throw the grown set away and re-attach terminals from scratch, in ascending
(minhig) or descending (maxhig) U order; mm simply keeps the cheaper of the
two. The forest-based nrbi walks terminals in reverse entry order and, per
terminal, chooses between a fresh attachment into the existing forest and
the terminal's own phase-1 path segment, Kruskal-style: the structure may be
a forest mid-run and only connects once the low-order terminals are placed.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Set

from .construction import GrowthState, build_tree, prune_non_terminal_leaves
from .errors import HcstError, SolverPostconditionError, StructureError
from .graph import Edge, Instance, SteinerTree, normalize_edge
from .hop_paths import hop_limited_sssp


def tree_cost_and_depths(edges: Iterable[Edge], instance: Instance) -> SteinerTree:
    """Verify an edge set is a tree spanning root and terminals; compute cost
    and BFS depths."""
    return build_tree(edges, instance, require_terminals=True)


def _rebuild(instance: Instance, growth: GrowthState, levels: Iterable[int]) -> SteinerTree:
    """Re-attach terminals level by level against a growing tree.

    For each terminal of the current level not yet absorbed into the tree,
    builds a table seeded at every tree vertex at its depth, blocked on the
    tree, and adds the cheapest path whose arrival depth stays within the
    hop budget.
    """
    graph = instance.graph
    hop = instance.hop_limit
    root = instance.root

    by_level: Dict[int, List[int]] = {}
    for t in instance.terminals:
        by_level.setdefault(growth.u_label[t], []).append(t)

    tree_vertices: Set[int] = {root}
    depth = {root: 0}
    edges: Set[Edge] = set()

    for level in levels:
        for t in sorted(by_level.get(level, ())):
            if t in tree_vertices:
                continue
            table = hop_limited_sssp(
                graph,
                sources=((v, depth[v]) for v in tree_vertices),
                hop_limit=hop,
                blocked=tree_vertices,
            )
            cost, layer = table.best(t)
            if layer is None:
                # cannot happen once phase 1 succeeded; a terminal always has
                # some hop-feasible route from the tree
                raise HcstError(
                    f"internal invariant violation: no feasible attachment for terminal {t}"
                )
            path = table.extract(t, layer)
            attach = path.vertices[0]
            for i, v in enumerate(path.vertices[1:], start=1):
                depth[v] = depth[attach] + i
                tree_vertices.add(v)
            for a, b in path.edges():
                edges.add(normalize_edge(a, b, graph.cost_of(a, b)))

    return build_tree(edges, instance)


def minhig(instance: Instance, growth: GrowthState) -> SteinerTree:
    """Rebuild attaching terminals in ascending U order."""
    return _rebuild(instance, growth, range(1, instance.hop_limit + 1))


def maxhig(instance: Instance, growth: GrowthState) -> SteinerTree:
    """Rebuild attaching terminals in descending U order."""
    return _rebuild(instance, growth, range(instance.hop_limit, 0, -1))


def mm(instance: Instance, growth: GrowthState) -> SteinerTree:
    """The cheaper of minhig and maxhig; ties go to minhig."""
    lo = minhig(instance, growth)
    hi = maxhig(instance, growth)
    return lo if lo.total_cost <= hi.total_cost else hi


class _Forest:
    """Union-find plus labels, adjacency and edge bookkeeping for nrbi."""

    def __init__(self, root: int):
        self.parent: Dict[int, int] = {root: root}
        self.label: Dict[int, int] = {root: 0}
        self.adj: Dict[int, List[int]] = {root: []}
        self.edges: Set[Edge] = set()
        self.root = root

    def __contains__(self, v: int) -> bool:
        return v in self.parent

    def vertices(self):
        return self.parent.keys()

    def find(self, v: int) -> int:
        r = v
        while self.parent[r] != r:
            r = self.parent[r]
        while self.parent[v] != r:
            self.parent[v], v = r, self.parent[v]
        return r

    def add_vertex(self, v: int, label: int, keep_existing: bool = False):
        if v not in self.parent:
            self.parent[v] = v
            self.adj[v] = []
        if keep_existing:
            self.label.setdefault(v, label)
        else:
            self.label[v] = label

    def add_edge(self, a: int, b: int, cost: int) -> bool:
        """Union endpoints and record the edge; refuses cycle closers."""
        e = normalize_edge(a, b, cost)
        if e in self.edges:
            return False
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        self.edges.add(e)
        self.adj[a].append(b)
        self.adj[b].append(a)
        return True

    def refresh_root_depths(self):
        """Set labels of root-component vertices to their exact tree depths.

        Other components keep their planned labels (phase-1 U values), which
        upper-bound the depth they will have once connected.
        """
        depth = {self.root: 0}
        frontier = [self.root]
        while frontier:
            nxt = []
            for u in frontier:
                for w in self.adj[u]:
                    if w not in depth:
                        depth[w] = depth[u] + 1
                        nxt.append(w)
            frontier = nxt
        self.label.update(depth)


def nrbi(instance: Instance, growth: GrowthState) -> SteinerTree:
    """Forest insertion in descending entry order.

    Per terminal v, candidate A is the cheapest fresh path from v to any
    forest vertex u* outside v's own component whose arrival label respects
    v's budget (label(u*) + |P| <= U_v, path interiors outside the forest);
    candidate B re-adds the missing edges of v's phase-1 path segment,
    connecting v to its anchor even when that anchor is not placed yet, so
    the structure is a forest mid-run. The cheaper side wins, ties go to B.

    Two safeguards make the greedy choice safe on every input. Interiors of
    candidate A avoid the segment vertices reserved by not yet processed
    terminals, so later segment replays never hang off foreign structure at
    the wrong depth. And when other components are already waiting on
    vertices of v's own segment, the segment prefix up to the highest such
    anchor is added regardless of the choice (abandoning it would strand
    those components), and candidate A then competes only against the
    remaining segment tail. Both rules are inert on inputs where the plain
    greedy choice already yields a feasible tree.
    """
    graph = instance.graph
    root = instance.root
    forest = _Forest(root)

    reserved: Dict[int, int] = {}
    order = sorted(instance.terminals, key=lambda t: growth.itr_label[t], reverse=True)
    for t in order:
        for x in growth.g_path[t].vertices:
            reserved[x] = reserved.get(x, 0) + 1

    for v in order:
        u_v = growth.u_label[v]
        seg = growth.g_path[v]
        for x in seg.vertices:
            reserved[x] -= 1

        root_comp = forest.find(root)
        own = forest.find(v) if v in forest else None
        if own == root_comp:
            continue  # already connected; nothing to add

        # highest segment position where some other component waits
        cut = 0
        for i, x in enumerate(seg.vertices):
            if x in forest and forest.find(x) not in (root_comp, own):
                cut = i
        glue = seg.vertices[: cut + 1]

        path_a = None
        sources = [
            (u, forest.label[u])
            for u in forest.vertices()
            if forest.label[u] <= u_v and (own is None or forest.find(u) != own)
        ]
        if sources:
            blocked = set(forest.vertices())
            blocked.update(x for x, n in reserved.items() if n > 0)
            blocked.update(glue)
            table = hop_limited_sssp(graph, sources, hop_limit=u_v, blocked=blocked)
            cost_a, layer = table.best(v)
            tail_cost = sum(
                c
                for a, b in zip(seg.vertices[cut:], seg.vertices[cut + 1:])
                if (c := _missing_cost(graph, forest, a, b)) is not None
            )
            if layer is not None and cost_a < tail_cost:
                path_a = table.extract(v, layer)

        if path_a is not None:
            _replay_segment(forest, graph, growth, glue)
            attach = path_a.vertices[0]
            base = forest.label[attach]
            for i, x in enumerate(path_a.vertices[1:], start=1):
                forest.add_vertex(x, base + i)
            for a, b in path_a.edges():
                forest.add_edge(a, b, graph.cost_of(a, b))
        else:
            _replay_segment(forest, graph, growth, seg.vertices)
        forest.refresh_root_depths()

    try:
        tree = build_tree(forest.edges, instance)
    except StructureError as exc:
        raise SolverPostconditionError(
            f"forest insertion produced an invalid structure: {exc}", forest.edges
        ) from exc
    if tree.max_depth > instance.hop_limit:
        raise SolverPostconditionError(
            f"forest insertion exceeded the hop budget: depth {tree.max_depth} > {instance.hop_limit}",
            forest.edges,
        )
    return tree


def _missing_cost(graph, forest: _Forest, a: int, b: int) -> Optional[int]:
    c = graph.cost_of(a, b)
    e = normalize_edge(a, b, c)
    return None if e in forest.edges else c


def _replay_segment(forest: _Forest, graph, growth: GrowthState, vertices) -> None:
    """Re-add a phase-1 segment stretch, keeping existing labels intact."""
    for x in vertices:
        forest.add_vertex(x, growth.u_label[x], keep_existing=True)
    for a, b in zip(vertices, vertices[1:]):
        forest.add_edge(a, b, graph.cost_of(a, b))


ALGORITHMS = ("voss", "minhig", "maxhig", "mm", "nrbi")


def run_algorithm(name: str, instance: Instance, growth: GrowthState) -> SteinerTree:
    """Dispatch by algorithm name against a shared GrowthState."""
    if name == "voss":
        return prune_non_terminal_leaves(growth.g_edges, instance)
    if name == "minhig":
        return minhig(instance, growth)
    if name == "maxhig":
        return maxhig(instance, growth)
    if name == "mm":
        return mm(instance, growth)
    if name == "nrbi":
        return nrbi(instance, growth)
    raise ValueError(f"unknown algorithm {name!r}, expected one of {ALGORITHMS}")
