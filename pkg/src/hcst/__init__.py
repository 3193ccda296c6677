"""Heuristic toolkit for the hop-constrained Steiner tree problem.

Given an undirected graph with non-negative integer edge costs, a root, a
set of basic vertices and a hop limit H, the solvers build a tree rooted at
the root that contains every basic vertex with all tree depths at most H.
The package bundles a shared growth phase, four rebuilding heuristics on top
of it, a feasibility checker, an exact brute-force oracle for tiny inputs
and a benchmark harness with CSV reporting.
"""

__version__ = "0.1.0"

from .errors import (
    HcstError,
    InfeasibleInstanceError,
    PairingError,
    ParseError,
    SolverPostconditionError,
    StructureError,
    UnreachableError,
)
from .graph import (
    Graph,
    GraphDiagnostics,
    Instance,
    SteinerTree,
    parse_orlib,
    select_terminals,
    serialize_orlib,
    validate_graph,
)
from .fixtures import FIXTURE_NAMES, load_fixture
from .hop_paths import HopTable, Path, extract_path, hop_limited_sssp
from .construction import GrowthState, phase1_grow, prune_non_terminal_leaves, voss_baseline
from .heuristics import (
    ALGORITHMS,
    maxhig,
    minhig,
    mm,
    nrbi,
    run_algorithm,
    tree_cost_and_depths,
)
from .validation import FeasibilityReport, OracleResult, check_feasible, exact_hcst
from .bench import (
    ExperimentConfig,
    PairwiseStats,
    RunRecord,
    emit_reports,
    generate_vectors,
    improvement_pct,
    pairwise_stats,
    random_connected_graph,
    run_matrix,
    tiered_network_graph,
)
from .kernels import ACTIVE_KERNEL

__all__ = [
    "ACTIVE_KERNEL",
    "ALGORITHMS",
    "ExperimentConfig",
    "FIXTURE_NAMES",
    "FeasibilityReport",
    "Graph",
    "GraphDiagnostics",
    "GrowthState",
    "HcstError",
    "HopTable",
    "InfeasibleInstanceError",
    "Instance",
    "OracleResult",
    "PairingError",
    "PairwiseStats",
    "ParseError",
    "Path",
    "RunRecord",
    "SolverPostconditionError",
    "SteinerTree",
    "StructureError",
    "UnreachableError",
    "check_feasible",
    "emit_reports",
    "exact_hcst",
    "extract_path",
    "generate_vectors",
    "hop_limited_sssp",
    "improvement_pct",
    "load_fixture",
    "maxhig",
    "minhig",
    "mm",
    "nrbi",
    "pairwise_stats",
    "parse_orlib",
    "phase1_grow",
    "prune_non_terminal_leaves",
    "random_connected_graph",
    "run_algorithm",
    "run_matrix",
    "select_terminals",
    "serialize_orlib",
    "tiered_network_graph",
    "tree_cost_and_depths",
    "validate_graph",
    "voss_baseline",
]
