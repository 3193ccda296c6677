"""Three small bundled example instances used by the golden tests and CLI.

Each network is tiny enough to trace by hand and exercises a distinct
behaviour of the solvers: fig1 rewards rebuilding terminals in ascending
depth order, fig2 in descending order, and fig3 rewards the forest-based
insertion. Vertex 1 is always the root.
"""

from __future__ import annotations

from .graph import Graph, Instance

# name -> (vertex_count, hop_limit, terminals, edge list)
_FIXTURES = {
    "fig1": (
        6,
        3,
        frozenset({4, 6}),
        [(1, 2, 4), (2, 4, 4), (1, 3, 3), (3, 5, 2), (5, 6, 2), (4, 6, 2)],
    ),
    "fig2": (
        10,
        4,
        frozenset({7, 9, 10}),
        [
            (1, 3, 2),
            (3, 7, 3),
            (1, 2, 2),
            (2, 5, 2),
            (5, 9, 2),
            (1, 4, 5),
            (4, 6, 1),
            (6, 8, 1),
            (8, 10, 1),
            (8, 9, 1),
            (4, 7, 1),
        ],
    ),
    "fig3": (
        8,
        5,
        frozenset({3, 6, 8}),
        [
            (1, 2, 4),
            (2, 3, 4),
            (3, 5, 2),
            (5, 7, 2),
            (7, 8, 2),
            (1, 4, 5),
            (4, 6, 12),
            (3, 4, 7),
        ],
    ),
}

FIXTURE_NAMES = tuple(sorted(_FIXTURES))


def load_fixture(name: str) -> Instance:
    """Return one of the bundled example instances (fig1, fig2 or fig3)."""
    key = name.lower()
    if key not in _FIXTURES:
        raise ValueError(f"unknown fixture {name!r}, expected one of {FIXTURE_NAMES}")
    n, hop, terminals, edges = _FIXTURES[key]
    return Instance(graph=Graph(n, edges), root=1, terminals=terminals, hop_limit=hop)
