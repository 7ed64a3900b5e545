#!/usr/bin/env python3
"""Random-graph agreement sweep against the brute-force oracle.

Draws small random digraphs across a range of densities and checks the
staged solver's verdict against exhaustive search, printing a summary.
"""
import argparse
import random
import time

from hamsolve.graph import Graph
from hamsolve.oracle import brute_force_find, validate_cycle
from hamsolve.search import SolverOptions, solve


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    g = Graph(n)
    for x in range(n):
        for y in range(n):
            if x != y and rng.random() < p:
                g.add_edge(x, y)
    return g


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=10_000)
    ap.add_argument("--min-n", type=int, default=3)
    ap.add_argument("--max-n", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    probabilities = [0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8]
    opts = SolverOptions(budget=30.0)
    mismatches = hamiltonian = timeouts = 0
    t0 = time.monotonic()
    for i in range(args.count):
        n = args.min_n + i % (args.max_n - args.min_n + 1)
        g = random_graph(rng, n, probabilities[i % len(probabilities)])
        result = solve(g, opts)
        reference = brute_force_find(g)
        if result.outcome == "timeout":
            timeouts += 1
            continue
        if result.found:
            hamiltonian += 1
            assert validate_cycle(g, result.cycle)
        if result.found != (reference is not None):
            mismatches += 1
            print(f"MISMATCH n={n}: solver={result.outcome} oracle={reference}")
    elapsed = time.monotonic() - t0
    print(f"{args.count} graphs in {elapsed:.1f}s | {hamiltonian} Hamiltonian | "
          f"{mismatches} mismatches | {timeouts} timeouts")
    return 0 if mismatches == 0 and timeouts == 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())
