"""Command-line surface: graph file format, trace lines, benchmark harness.

Graph files are plain text with 1-based vertex ids: the first
non-comment line holds the vertex count N, then one line per vertex
``i: n1 n2 ... nk`` (a vertex with no out-edges is written ``i:``).
Lines starting with ``#`` are comments.

Outcome grammar on stdout: ``HAMILTONIAN <cycle>`` / ``NONE`` /
``TIMEOUT`` with exit codes 0 / 1 / 2.  Any input or usage problem
exits 64 with a diagnostic on stderr.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .generators import GeneratorSpec, derive_seeds, generate, RNG_ID
from .graph import Graph, GraphFormatError
from .oracle import brute_force_find, validate_cycle
from .pruning import (
    RULE_ECR,
    RULE_NORMALIZE,
    RULE_SINGLE_DIRECTION,
    RULE_UNIQUE_ADDITIONS,
    RULE_UNIQUE_BASIC,
    RULE_UNIQUE_COMBINATIONS,
)
from .search import FOUND, NOT_HAMILTONIAN, TIMEOUT, SolveResult, SolverOptions, solve

EXIT_FOUND = 0
EXIT_NONE = 1
EXIT_TIMEOUT = 2
EXIT_USAGE = 64

FAMILIES = (
    "directed-regular",
    "directed-irregular",
    "undirected-regular",
    "undirected-irregular",
)

BENCH_COLUMNS = [
    "file",
    "n",
    "family",
    "outcome",
    "stage_reached",
    "elapsed_s",
    "nodes",
    f"removed_{RULE_NORMALIZE}",
    f"removed_{RULE_SINGLE_DIRECTION}",
    f"removed_{RULE_UNIQUE_BASIC}",
    f"removed_{RULE_UNIQUE_ADDITIONS}",
    f"removed_{RULE_UNIQUE_COMBINATIONS}",
    f"removed_{RULE_ECR}",
]


class GraphFileError(ValueError):
    """Malformed graph file; message carries the offending line number."""


# ---- graph file format -----------------------------------------------------


def parse_text(text: str, name: str = "<input>") -> Graph:
    """Parse the adjacency-list format into a Graph (ids converted to 0-based)."""
    n: int | None = None
    lists: list[list[int]] = []
    seen: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            try:
                n = int(line)
            except ValueError:
                raise GraphFileError(f"{name}:{lineno}: expected vertex count, got {line!r}")
            if n < 1:
                raise GraphFileError(f"{name}:{lineno}: vertex count must be >= 1")
            lists = [[] for _ in range(n)]
            continue
        head, sep, rest = line.partition(":")
        if not sep:
            raise GraphFileError(f"{name}:{lineno}: expected 'i: neighbours', got {line!r}")
        try:
            vid = int(head)
        except ValueError:
            raise GraphFileError(f"{name}:{lineno}: bad vertex id {head!r}")
        if not 1 <= vid <= n:
            raise GraphFileError(f"{name}:{lineno}: vertex id {vid} out of range 1..{n}")
        if vid in seen:
            raise GraphFileError(f"{name}:{lineno}: duplicate line for vertex {vid}")
        seen.add(vid)
        nbrs = []
        for tok in rest.split():
            try:
                w = int(tok)
            except ValueError:
                raise GraphFileError(f"{name}:{lineno}: bad neighbour id {tok!r}")
            if not 1 <= w <= n:
                raise GraphFileError(f"{name}:{lineno}: neighbour {w} out of range 1..{n}")
            nbrs.append(w - 1)
        lists[vid - 1] = nbrs
    if n is None:
        raise GraphFileError(f"{name}: empty input")
    if len(seen) != n:
        missing = sorted(set(range(1, n + 1)) - seen)
        raise GraphFileError(f"{name}: missing adjacency lines for vertices {missing}")
    return Graph.from_adjacency_lists(n, lists)


def parse(path: str | Path) -> Graph:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise GraphFileError(f"{p}: {exc}") from exc
    return parse_text(text, name=str(p))


def serialize_text(g: Graph, header: list[str] | None = None) -> str:
    lines = [f"# {h}" for h in header or []]
    lines.append(str(g.n))
    for v in range(g.n):
        nbrs = " ".join(str(w + 1) for w in g.out_neighbors(v))
        lines.append(f"{v + 1}: {nbrs}".rstrip())
    return "\n".join(lines) + "\n"


def serialize(g: Graph, path: str | Path, header: list[str] | None = None) -> None:
    Path(path).write_text(serialize_text(g, header))


# ---- trace line grammar ------------------------------------------------------


def trace_emit(event: tuple) -> str:
    """Render one trace event as a line; vertex ids are printed 1-based."""
    kind = event[0]
    if kind == "rule":
        _, rule, direction, v, edges = event
        removed = ",".join(f"{a + 1}->{b + 1}" for a, b in edges)
        return f"RULE {rule} DIR {direction} V {v + 1} REMOVED {removed}"
    if kind == "hyp":
        _, v, (a, b), flag = event
        return f"HYP {v + 1} EDGE {a + 1}->{b + 1} INFEASIBLE {str(bool(flag)).lower()}"
    if kind == "commit":
        _, (a, b), level = event
        return f"COMMIT {a + 1}->{b + 1} LEVEL {level}"
    if kind == "verdict":
        return f"VERDICT {event[1]}"
    raise ValueError(f"unknown trace event {event!r}")


class TraceWriter:
    """Callable sink writing one formatted line per event."""

    def __init__(self, fh) -> None:
        self.fh = fh

    def __call__(self, event: tuple) -> None:
        self.fh.write(trace_emit(event) + "\n")


# ---- commands ------------------------------------------------------------------


def _parse_stages(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            first, last = int(a), int(b)
        else:
            first = last = int(text)
    except ValueError:
        raise GraphFileError(f"bad --stages value {text!r}, expected like 1..5")
    if not 1 <= first <= last <= 5:
        raise GraphFileError(f"--stages range {first}..{last} outside 1..5")
    return first, last


def _parse_budget(text: str) -> float | None:
    if text == "auto":
        return None  # solver applies the quadratic law itself
    try:
        value = float(text)
    except ValueError:
        raise GraphFileError(f"bad --budget value {text!r}, expected seconds or 'auto'")
    if value <= 0:
        raise GraphFileError("--budget must be positive")
    return value


def _result_json(result: SolveResult) -> str:
    doc = {
        "outcome": result.outcome,
        "cycle": [v + 1 for v in result.cycle] if result.cycle else None,
        "stats": {
            "normalize_removed": result.stats.normalize_removed,
            "total_elapsed": result.stats.total_elapsed,
            "stages": [
                {
                    "stage": s.stage,
                    "outcome": s.outcome,
                    "nodes": s.nodes,
                    "elapsed": s.elapsed,
                    "removed_by_rule": s.removed_by_rule,
                }
                for s in result.stats.stages
            ],
        },
    }
    return json.dumps(doc)


def _print_outcome(result: SolveResult, as_json: bool) -> int:
    if as_json:
        print(_result_json(result))
    elif result.outcome == FOUND:
        print("HAMILTONIAN " + " ".join(str(v + 1) for v in result.cycle))
    elif result.outcome == NOT_HAMILTONIAN:
        print("NONE")
    else:
        print("TIMEOUT")
    return {FOUND: EXIT_FOUND, NOT_HAMILTONIAN: EXIT_NONE, TIMEOUT: EXIT_TIMEOUT}[result.outcome]


def cmd_solve(args: argparse.Namespace) -> int:
    g = parse(args.graph)
    first, last = _parse_stages(args.stages)
    budget = _parse_budget(args.budget)
    trace_fh = open(args.trace, "w") if args.trace else None
    try:
        opts = SolverOptions(
            first_stage=first,
            last_stage=last,
            budget=budget,
            combination_cap=args.combination_cap,
            trace=TraceWriter(trace_fh) if trace_fh else None,
        )
        result = solve(g, opts)
    finally:
        if trace_fh:
            trace_fh.close()
    return _print_outcome(result, args.json)


def cmd_oracle(args: argparse.Namespace) -> int:
    g = parse(args.graph)
    g.normalize()
    cycle = brute_force_find(g)
    if cycle is None:
        print("NONE")
        return EXIT_NONE
    print("HAMILTONIAN " + " ".join(str(v + 1) for v in cycle))
    return EXIT_FOUND


def cmd_verify(args: argparse.Namespace) -> int:
    g = parse(args.graph)
    try:
        tokens = Path(args.cycle).read_text().split()
        seq = [int(t) - 1 for t in tokens]
    except (OSError, ValueError) as exc:
        raise GraphFileError(f"{args.cycle}: bad cycle file ({exc})")
    if validate_cycle(g, seq):
        print("VALID")
        return 0
    print("INVALID")
    return 1


def cmd_generate(args: argparse.Namespace) -> int:
    if args.family not in FAMILIES:
        raise GraphFileError(f"unknown family {args.family!r}")
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    seeds = derive_seeds(args.seed, args.count)
    for idx in range(args.count):
        spec = GeneratorSpec(
            n=args.n,
            undirected_style=args.family.startswith("undirected"),
            irregular=args.family.endswith("irregular"),
            plant_cycle=args.plant,
            seed=seeds[idx],
            density=args.density,
        )
        try:
            g, planted = generate(spec)
        except ValueError as exc:
            raise GraphFileError(str(exc))
        header = [
            f"family: {spec.family}",
            f"n: {spec.n}",
            f"base-seed: {args.seed}",
            f"index: {idx}",
            f"seed: {spec.seed}",
            f"density: {spec.density}",
            f"rng: {RNG_ID}",
        ]
        if planted is not None:
            header.append("planted: " + " ".join(str(v + 1) for v in planted))
        name = f"{args.family}_{args.n}_{args.seed}_{idx}.graph"
        serialize(g, out_dir / name, header)
        print(out_dir / name)
    return 0


def _bench_one(path_str: str, budget: float | None) -> dict:
    """Solve one benchmark file; returns one CSV row (as a dict)."""
    path = Path(path_str)
    row = {c: "" for c in BENCH_COLUMNS}
    row["file"] = path.name
    try:
        g = parse(path)
        family = "unknown"
        for line in path.read_text().splitlines():
            if line.startswith("# family:"):
                family = line.split(":", 1)[1].strip()
                break
        else:
            head = path.name.rsplit("_", 3)[0]
            if head in FAMILIES:
                family = head
        started = time.monotonic()
        result = solve(g, SolverOptions(budget=budget))
        elapsed = time.monotonic() - started
        removed = {}
        for s in result.stats.stages:
            for rule, count in s.removed_by_rule.items():
                removed[rule] = removed.get(rule, 0) + count
        row.update(
            n=g.n,
            family=family,
            outcome={FOUND: "FOUND", NOT_HAMILTONIAN: "NONE", TIMEOUT: "TIMEOUT"}[result.outcome],
            stage_reached=result.stats.stages[-1].stage if result.stats.stages else 0,
            elapsed_s=f"{elapsed:.3f}",
            nodes=sum(s.nodes for s in result.stats.stages),
        )
        row[f"removed_{RULE_NORMALIZE}"] = result.stats.normalize_removed
        for rule in (
            RULE_SINGLE_DIRECTION,
            RULE_UNIQUE_BASIC,
            RULE_UNIQUE_ADDITIONS,
            RULE_UNIQUE_COMBINATIONS,
            RULE_ECR,
        ):
            row[f"removed_{rule}"] = removed.get(rule, 0)
    except Exception as exc:  # noqa: BLE001 - error rows keep the run going
        print(f"hamsolve: bench: {path.name}: {exc}", file=sys.stderr)
        row["outcome"] = "ERROR"
    return row


def cmd_bench(args: argparse.Namespace) -> int:
    directory = Path(args.dir)
    if not directory.is_dir():
        raise GraphFileError(f"{directory}: not a directory")
    files = sorted(directory.glob("*.graph"))
    budget = _parse_budget(args.budget)
    rows: list[dict]
    if args.jobs > 1 and files:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_bench_one, [str(f) for f in files], [budget] * len(files)))
    else:
        rows = [_bench_one(str(f), budget) for f in files]
    with open(args.csv, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=BENCH_COLUMNS)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    print(f"{len(rows)} instances -> {args.csv}")
    return 0


# ---- entry point ---------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hamsolve", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide Hamiltonian-cycle existence")
    p.add_argument("graph")
    p.add_argument("--stages", default="1..5", help="stage range, e.g. 1..5 or 3")
    p.add_argument("--budget", default="auto", help="seconds per stage, or 'auto'")
    p.add_argument("--trace", default=None, help="write trace lines to this file")
    p.add_argument("--json", action="store_true", help="machine-readable result")
    p.add_argument("--combination-cap", type=int, default=64)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="brute-force reference answer")
    p.add_argument("graph")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="check a cycle file against a graph")
    p.add_argument("graph")
    p.add_argument("cycle")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="emit random benchmark graphs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--plant", action="store_true", help="plant a Hamiltonian cycle")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--density", type=float, default=4.0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="solve every .graph file in a directory")
    p.add_argument("--dir", required=True)
    p.add_argument("--csv", required=True)
    p.add_argument("--budget", default="auto")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (GraphFileError, GraphFormatError) as exc:
        print(f"hamsolve: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
