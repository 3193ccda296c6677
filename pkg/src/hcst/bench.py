"""Experiment harness: terminal vectors, algorithm matrix runs, pairwise
win/loss tables and improvement summaries, serialized as CSV plus a JSON
manifest.

The protocol: for each instance and hop limit H, draw 100*H terminal vectors
from consecutive seeds, run every requested algorithm on every vector against
one shared growth phase, then compare algorithms pairwise. Aggregation is
order-insensitive and rows are sorted before writing, so reruns of the same
config reproduce the output files byte for byte, parallel or not.
"""

from __future__ import annotations

import csv
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path as FsPath
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from . import __version__ as _pkg_version
from .construction import phase1_grow
from .errors import InfeasibleInstanceError, PairingError
from .graph import Graph, Instance, select_terminals
from .heuristics import ALGORITHMS, run_algorithm
from .kernels import ACTIVE_KERNEL
from .rng import SplitMix64

SPARSE_GROUP = frozenset({"c5", "c10", "d5", "d10"})
DENSE_GROUP = frozenset({"c15", "c20", "d15", "d20"})


@dataclass(frozen=True)
class RunRecord:
    instance_name: str
    hop: int
    vector_seed: int
    algorithm: str
    cost: int
    feasible: bool
    runtime_ms: float

    def sort_key(self):
        return (self.instance_name, self.hop, self.vector_seed, self.algorithm)


@dataclass(frozen=True)
class PairwiseStats:
    """Win counts and total winning margins for an ordered algorithm pair."""

    fos: int
    sfos: int
    sof: int
    ssof: int


@dataclass(frozen=True)
class ExperimentConfig:
    instances: Tuple[Tuple[str, Graph], ...]
    hops: Tuple[int, ...]
    terminal_count: int
    base_seed: int
    algorithms: Tuple[str, ...] = ALGORITHMS
    multiplier: int = 100
    root: int = 1
    fixed_terminals: Optional[FrozenSet[int]] = None
    keep_failures: bool = False

    def __post_init__(self):
        for a in self.algorithms:
            if a not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {a!r}")
        if self.multiplier < 1:
            raise ValueError("multiplier must be positive")

    def vectors_for(self, hop: int) -> int:
        return 1 if self.fixed_terminals is not None else self.multiplier * hop


def generate_vectors(instance: Instance, hop: int, terminal_count: int,
                     base_seed: int, multiplier: int = 100) -> List[FrozenSet[int]]:
    """multiplier*hop terminal sets drawn with seeds base_seed, base_seed+1, ..."""
    return [
        select_terminals(instance.graph, instance.root, terminal_count, base_seed + i)
        for i in range(multiplier * hop)
    ]


def _run_cell(name: str, graph: Graph, root: int, hop: int, seed: int,
              terminals: FrozenSet[int], algorithms: Sequence[str],
              keep_failures: bool) -> List[RunRecord]:
    """All requested algorithms on one (instance, hop, vector) cell."""
    instance = Instance(graph=graph, root=root, terminals=terminals, hop_limit=hop)
    try:
        growth = phase1_grow(instance)
    except InfeasibleInstanceError:
        if not keep_failures:
            return []
        return [
            RunRecord(name, hop, seed, algo, 0, False, 0.0) for algo in algorithms
        ]
    records = []
    for algo in algorithms:
        start = time.perf_counter()
        tree = run_algorithm(algo, instance, growth)
        elapsed = (time.perf_counter() - start) * 1000.0
        records.append(RunRecord(name, hop, seed, algo, tree.total_cost, True, elapsed))
    return records


def _run_task(task) -> List[RunRecord]:
    name, graph, root, hop, seed_terminal_pairs, algorithms, keep_failures = task
    out: List[RunRecord] = []
    for seed, terminals in seed_terminal_pairs:
        out.extend(_run_cell(name, graph, root, hop, seed, terminals, algorithms, keep_failures))
    return out


def run_matrix(config: ExperimentConfig, jobs: int = 1) -> List[RunRecord]:
    """Run the full (instance, hop, vector) x algorithm matrix.

    Records come back sorted by (instance, hop, seed, algorithm), so the
    result is identical regardless of `jobs`.
    """
    tasks = []
    for name, graph in config.instances:
        for hop in config.hops:
            if config.fixed_terminals is not None:
                pairs = [(config.base_seed, config.fixed_terminals)]
            else:
                pairs = [
                    (
                        config.base_seed + i,
                        select_terminals(graph, config.root, config.terminal_count,
                                         config.base_seed + i),
                    )
                    for i in range(config.multiplier * hop)
                ]
            chunk = 25
            for lo in range(0, len(pairs), chunk):
                tasks.append(
                    (name, graph, config.root, hop, pairs[lo: lo + chunk],
                     config.algorithms, config.keep_failures)
                )

    records: List[RunRecord] = []
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for batch in pool.map(_run_task, tasks):
                records.extend(batch)
    else:
        for task in tasks:
            records.extend(_run_task(task))

    records.sort(key=RunRecord.sort_key)
    return records


def pairwise_stats(records_a: Sequence[RunRecord], records_b: Sequence[RunRecord]) -> PairwiseStats:
    """Compare two record sequences paired on (instance, hop, vector_seed).

    fos counts the cells where the first sequence is strictly cheaper and
    sfos accumulates those margins; sof/ssof mirror for the second sequence.
    """
    def index(records):
        out = {}
        for r in records:
            out[(r.instance_name, r.hop, r.vector_seed)] = r.cost
        return out

    a, b = index(records_a), index(records_b)
    if set(a) != set(b):
        odd = (set(a) ^ set(b)).pop()
        raise PairingError(odd)

    fos = sfos = sof = ssof = 0
    for key, cost_a in a.items():
        cost_b = b[key]
        if cost_a < cost_b:
            fos += 1
            sfos += cost_b - cost_a
        elif cost_b < cost_a:
            sof += 1
            ssof += cost_a - cost_b
    return PairwiseStats(fos=fos, sfos=sfos, sof=sof, ssof=ssof)


def improvement_pct(voss_mean: float, alg_mean: float) -> float:
    """Percentage improvement of a mean cost over the baseline mean."""
    if voss_mean <= 0:
        raise ValueError("baseline mean must be positive")
    return 100.0 * (voss_mean - alg_mean) / voss_mean


def group_of(instance_name: str) -> str:
    stem = instance_name.lower()
    if stem in SPARSE_GROUP:
        return "sparse"
    if stem in DENSE_GROUP:
        return "dense"
    return instance_name


def emit_reports(records: Sequence[RunRecord], config: ExperimentConfig,
                 out_dir, include_timings: bool = False) -> Dict[str, FsPath]:
    """Write runs.csv, pairwise.csv, summary.csv and manifest.json.

    Timing columns are zeroed unless include_timings is set, so that reruns
    of an identical config produce byte-identical files.
    """
    if not records:
        raise ValueError("no records to report")
    out = FsPath(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    paths = {
        "runs": out / "runs.csv",
        "pairwise": out / "pairwise.csv",
        "summary": out / "summary.csv",
        "manifest": out / "manifest.json",
    }

    with open(paths["runs"], "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["instance", "hop", "vector_seed", "algo", "cost", "feasible", "runtime_ms"])
        for r in sorted(records, key=RunRecord.sort_key):
            rt = r.runtime_ms if include_timings else 0.0
            w.writerow([
                r.instance_name, r.hop, r.vector_seed, r.algorithm, r.cost,
                "true" if r.feasible else "false", f"{rt:.3f}",
            ])

    feasible = [r for r in records if r.feasible]
    cells: Dict[Tuple[str, int, str], List[RunRecord]] = {}
    for r in feasible:
        cells.setdefault((group_of(r.instance_name), r.hop, r.algorithm), []).append(r)

    groups = sorted({g for g, _, _ in cells})
    hops = sorted({h for _, h, _ in cells})
    algos = list(config.algorithms)

    with open(paths["pairwise"], "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["group", "hop", "algo_a", "algo_b", "fos", "sfos", "sof", "ssof"])
        for g in groups:
            for h in hops:
                for a in algos:
                    for b in algos:
                        if a == b:
                            continue
                        ra = cells.get((g, h, a))
                        rb = cells.get((g, h, b))
                        if not ra or not rb:
                            continue
                        st = pairwise_stats(ra, rb)
                        w.writerow([g, h, a, b, st.fos, st.sfos, st.sof, st.ssof])

    with open(paths["summary"], "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["group", "hop", "algo", "mean_cost", "imp_pct_vs_voss"])
        for g in groups:
            for h in hops:
                voss_rows = cells.get((g, h, "voss"))
                voss_mean = (
                    sum(r.cost for r in voss_rows) / len(voss_rows) if voss_rows else None
                )
                for a in algos:
                    rows = cells.get((g, h, a))
                    if not rows:
                        continue
                    mean = sum(r.cost for r in rows) / len(rows)
                    if voss_mean:
                        imp = f"{improvement_pct(voss_mean, mean):.2f}"
                    else:
                        imp = ""
                    w.writerow([g, h, a, f"{mean:.4f}", imp])

    manifest = {
        "version": _pkg_version,
        "kernel": ACTIVE_KERNEL,
        "config": {
            "instances": [name for name, _ in config.instances],
            "hops": list(config.hops),
            "terminal_count": config.terminal_count,
            "base_seed": config.base_seed,
            "algorithms": list(config.algorithms),
            "multiplier": config.multiplier,
            "root": config.root,
            "fixed_terminals": sorted(config.fixed_terminals) if config.fixed_terminals else None,
            "keep_failures": config.keep_failures,
        },
        "vector_seeds": {
            str(hop): [config.base_seed, config.base_seed + config.vectors_for(hop) - 1]
            for hop in config.hops
        },
        "record_count": len(records),
    }
    with open(paths["manifest"], "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")

    return paths


def tiered_network_graph(n: int, m: int, max_cost: int, seed: int,
                         mesh_cost_div: int = 2) -> Graph:
    """Dense test topology shaped like a tiered access network.

    The root feeds a small hub tier, hubs feed concentrators, and every
    bottom-tier vertex has exactly one expensive uplink; the bottom tier
    itself carries a dense mesh of cheap edges. Within three hops of the
    root only the uplink routes exist, so tight hop limits force the
    routing, while loose limits open the mesh. Uplink costs are uniform in
    [max_cost/2, max_cost], mesh costs in [1, max_cost/mesh_cost_div].
    """
    rng = SplitMix64(seed)
    n1 = max(2, n // 20)
    n2 = max(4, n // 8)
    tier1 = list(range(2, 2 + n1))
    tier2 = list(range(2 + n1, 2 + n1 + n2))
    tier3 = list(range(2 + n1 + n2, n + 1))
    if not tier3:
        raise ValueError("n too small for a three-tier layout")

    def uplink() -> int:
        return rng.randint(max_cost // 2, max_cost)

    def mesh() -> int:
        return rng.randint(1, max(1, max_cost // mesh_cost_div))

    edges = [(1, v, uplink()) for v in tier1]
    edges += [(tier1[rng.randrange(n1)], v, uplink()) for v in tier2]
    edges += [(tier2[rng.randrange(n2)], v, uplink()) for v in tier3]
    seen = {(min(u, v), max(u, v)) for u, v, _ in edges}
    limit = len(edges) + len(tier3) * (len(tier3) - 1) // 2
    while len(edges) < min(m, limit):
        u = tier3[rng.randrange(len(tier3))]
        v = tier3[rng.randrange(len(tier3))]
        if u == v:
            continue
        key = (min(u, v), max(u, v))
        if key in seen:
            continue
        seen.add(key)
        edges.append((u, v, mesh()))
    return Graph(n, edges)


def random_connected_graph(n: int, extra_edges: int, max_cost: int, seed: int) -> Graph:
    """Random connected test graph: a random spanning tree plus extra random
    edges, integer costs uniform in [1, max_cost]. Deterministic in seed."""
    rng = SplitMix64(seed)
    order = rng.sample(range(1, n + 1), n)
    edges = []
    seen = set()
    for i in range(1, n):
        u = order[i]
        v = order[rng.randrange(i)]
        a, b = (u, v) if u < v else (v, u)
        seen.add((a, b))
        edges.append((a, b, rng.randint(1, max_cost)))
    added = 0
    limit = n * (n - 1) // 2 - (n - 1)
    while added < min(extra_edges, limit):
        u = rng.randint(1, n)
        v = rng.randint(1, n)
        if u == v:
            continue
        a, b = (u, v) if u < v else (v, u)
        if (a, b) in seen:
            continue
        seen.add((a, b))
        edges.append((a, b, rng.randint(1, max_cost)))
        added += 1
    return Graph(n, edges)
