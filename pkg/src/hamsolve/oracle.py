"""Brute-force reference for Hamiltonian cycles.

Plain depth-first path extension with no pruning beyond the visited set.
Exponential on purpose: this module exists to be obviously correct, so
the solver and the rules can be checked against it on small graphs.
"""
from __future__ import annotations

from .graph import Graph, bits


def validate_cycle(g: Graph, seq) -> bool:
    """True iff ``seq`` lists every vertex once and each hop (including
    the closing one) is an edge of g."""
    seq = list(seq)
    if len(seq) != g.n or g.n == 0:
        return False
    if len(set(seq)) != g.n:
        return False
    if not all(0 <= v < g.n for v in seq):
        return False
    for a, b in zip(seq, seq[1:]):
        if not g.has_edge(a, b):
            return False
    return g.has_edge(seq[-1], seq[0])


def brute_force_find(g: Graph) -> tuple[int, ...] | None:
    """First Hamiltonian cycle by depth-first extension from vertex 0."""
    n = g.n
    if n == 0:
        return None
    if n == 1:
        return (0,) if g.has_edge(0, 0) else None
    path = [0]
    visited = 1

    def extend() -> tuple[int, ...] | None:
        nonlocal visited
        last = path[-1]
        if len(path) == n:
            return tuple(path) if g.has_edge(last, 0) else None
        for w in bits(g.out[last] & ~visited):
            path.append(w)
            visited |= 1 << w
            result = extend()
            if result is not None:
                return result
            path.pop()
            visited &= ~(1 << w)
        return None

    return extend()


def enumerate_all(g: Graph, limit_n: int = 12) -> set[tuple[int, ...]]:
    """Every Hamiltonian cycle, canonically rotated to start at vertex 0.

    Directed cycles keep their orientation (a cycle and its reversal are
    distinct).  Guarded to small n; the count can reach (n-1)!.
    """
    n = g.n
    if n > limit_n:
        raise ValueError(f"enumerate_all limited to n <= {limit_n}, got {n}")
    if n == 0:
        return set()
    if n == 1:
        return {(0,)} if g.has_edge(0, 0) else set()
    found: set[tuple[int, ...]] = set()
    path = [0]
    visited = 1

    def extend() -> None:
        nonlocal visited
        last = path[-1]
        if len(path) == n:
            if g.has_edge(last, 0):
                found.add(tuple(path))
            return
        for w in bits(g.out[last] & ~visited):
            path.append(w)
            visited |= 1 << w
            extend()
            path.pop()
            visited &= ~(1 << w)

    extend()
    return found
