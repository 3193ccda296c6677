"""Command-line interface.

Subcommands: solve, bench, validate, oracle, fixtures. See README for
examples; `hcst <cmd> --help` lists every option.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bench import ExperimentConfig, emit_reports, run_matrix
from .construction import phase1_grow
from .errors import HcstError
from .fixtures import FIXTURE_NAMES, load_fixture
from .graph import Graph, Instance, SteinerTree, parse_orlib, select_terminals, serialize_orlib
from .heuristics import ALGORITHMS, run_algorithm, tree_cost_and_depths
from .validation import check_feasible, exact_hcst


def _read_instance_file(path: str):
    with open(path, "rb") as fh:
        return parse_orlib(fh.read())


def _parse_int_list(text: str):
    return [int(tok) for tok in text.replace(",", " ").split()]


def _resolve_terminals(args, graph: Graph, declared):
    if getattr(args, "terminals", None):
        return frozenset(_parse_int_list(args.terminals))
    if getattr(args, "terminal_count", None):
        return select_terminals(graph, args.root, args.terminal_count, args.seed)
    if declared:
        return frozenset(declared) - {args.root}
    raise SystemExit("no terminals: pass --terminals or --terminal-count, or use a file that declares them")


def _tree_json(instance_path: str, algo: str, instance: Instance, tree: SteinerTree) -> dict:
    report = check_feasible(tree, instance)
    return {
        "instance": instance_path,
        "algo": algo,
        "hop": instance.hop_limit,
        "cost": tree.total_cost,
        "edges": [[u, v, c] for u, v, c in sorted(tree.edges)],
        "depths": {str(v): d for v, d in sorted(tree.depth.items())},
        "feasible": report.passed,
    }


def cmd_solve(args) -> int:
    graph, declared = _read_instance_file(args.instance)
    terminals = _resolve_terminals(args, graph, declared)
    instance = Instance(graph=graph, root=args.root, terminals=terminals, hop_limit=args.hop)
    growth = phase1_grow(instance)
    tree = run_algorithm(args.algo, instance, growth)
    payload = _tree_json(args.instance, args.algo, instance, tree)
    if args.out == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"algorithm: {args.algo}")
        print(f"cost: {tree.total_cost}")
        print(f"feasible: {str(payload['feasible']).lower()}")
        print("edges:")
        for u, v, c in sorted(tree.edges):
            print(f"  {u} {v} {c}")
        print("depths:")
        for v, d in sorted(tree.depth.items()):
            print(f"  {v}: {d}")
    return 0


def cmd_bench(args) -> int:
    inst_dir = Path(args.instances)
    files = sorted(p for p in inst_dir.iterdir() if p.is_file())
    if not files:
        raise SystemExit(f"no instance files under {inst_dir}")
    instances = []
    for p in files:
        graph, _ = _read_instance_file(str(p))
        instances.append((p.stem, graph))
    config = ExperimentConfig(
        instances=tuple(instances),
        hops=tuple(_parse_int_list(args.hops)),
        terminal_count=args.terminal_count,
        base_seed=args.seed,
        algorithms=tuple(args.algos.split(",")) if args.algos else ALGORITHMS,
        multiplier=args.multiplier,
        root=args.root,
        keep_failures=args.keep_failures,
    )
    records = run_matrix(config, jobs=args.jobs)
    paths = emit_reports(records, config, args.out, include_timings=args.timings)
    for key in ("runs", "pairwise", "summary", "manifest"):
        print(paths[key])
    return 0


def cmd_validate(args) -> int:
    graph, declared = _read_instance_file(args.instance)
    with open(args.tree) as fh:
        payload = json.load(fh)
    edges = [(int(u), int(v), int(c)) for u, v, c in payload["edges"]]
    terminals = _resolve_terminals(args, graph, declared)
    instance = Instance(graph=graph, root=args.root, terminals=terminals, hop_limit=args.hop)
    try:
        tree = tree_cost_and_depths(edges, instance)
    except HcstError as exc:
        print(f"FAIL: {exc}")
        return 1
    report = check_feasible(tree, instance)
    verdict = "PASS" if report.passed else "FAIL"
    print(f"{verdict}: cost={tree.total_cost} max_depth={report.max_depth} hop_limit={instance.hop_limit}")
    for v in report.violations:
        print(f"  violation: {v}")
    return 0 if report.passed else 1


def cmd_oracle(args) -> int:
    graph, declared = _read_instance_file(args.instance)
    terminals = _resolve_terminals(args, graph, declared)
    instance = Instance(graph=graph, root=args.root, terminals=terminals, hop_limit=args.hop)
    result = exact_hcst(instance, vertex_cap=args.cap)
    if not result.feasible:
        print("infeasible")
        return 0
    print(f"optimum: {result.cost}")
    for u, v, c in sorted(result.tree.edges):
        print(f"  {u} {v} {c}")
    return 0


def cmd_fixtures(args) -> int:
    instance = load_fixture(args.name)
    sys.stdout.write(serialize_orlib(instance.graph, instance.terminals))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hcst", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run one algorithm on one instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--hop", type=int, required=True)
    p.add_argument("--root", type=int, default=1)
    p.add_argument("--terminals", help="comma-separated terminal ids")
    p.add_argument("--terminal-count", type=int, dest="terminal_count")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--algo", required=True, choices=ALGORITHMS)
    p.add_argument("--out", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="full experiment matrix with CSV reports")
    p.add_argument("--instances", required=True, help="directory of OR-Library files")
    p.add_argument("--hops", required=True, help="comma-separated hop limits")
    p.add_argument("--terminal-count", type=int, required=True, dest="terminal_count")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--multiplier", type=int, default=100)
    p.add_argument("--algos", help="comma-separated subset of algorithms")
    p.add_argument("--root", type=int, default=1)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--keep-failures", action="store_true", dest="keep_failures")
    p.add_argument("--timings", action="store_true",
                   help="write measured runtimes instead of zeros (breaks byte-for-byte reproducibility)")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("validate", help="check a tree JSON against an instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--tree", required=True, help="JSON file with an 'edges' array")
    p.add_argument("--hop", type=int, required=True)
    p.add_argument("--root", type=int, default=1)
    p.add_argument("--terminals")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("oracle", help="exact optimum for a desk-scale instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--hop", type=int, required=True)
    p.add_argument("--root", type=int, default=1)
    p.add_argument("--terminals")
    p.add_argument("--cap", type=int, default=12)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("fixtures", help="print a bundled example instance")
    p.add_argument("--name", required=True, choices=FIXTURE_NAMES)
    p.set_defaults(func=cmd_fixtures)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except HcstError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
