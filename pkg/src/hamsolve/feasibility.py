"""Structural stop conditions: proofs that no Hamiltonian cycle can exist,
plus detection of a completed cycle among forced edges.

All checks are read-only.  A vertex whose out-edge (or in-edge) is the only
one left is "forced": that edge must belong to any Hamiltonian cycle, so a
cycle closing among forced edges before covering every vertex rules the
whole graph out, and one covering all vertices solves it.
"""
from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, bits

FORCED_SUBCYCLE = "forced_subcycle"
CLONE_SET = "clone_set"
DEFICIENCY = "deficiency"
DISCONNECTED = "disconnected"
ZERO_DEGREE = "zero_degree"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a feasibility test or an analysis pass."""

    status: str  # "feasible" | "infeasible" | "solved" | "timeout"
    reason: str | None = None
    cycle: tuple[int, ...] | None = None

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"

    @property
    def infeasible(self) -> bool:
        return self.status == "infeasible"

    @property
    def solved(self) -> bool:
        return self.status == "solved"

    @property
    def timeout(self) -> bool:
        return self.status == "timeout"


FEASIBLE = Verdict("feasible")
TIMEOUT = Verdict("timeout")


def infeasible(reason: str) -> Verdict:
    return Verdict("infeasible", reason=reason)


def solved(cycle: tuple[int, ...]) -> Verdict:
    return Verdict("solved", cycle=cycle)


def zero_degree_check(g: Graph) -> Verdict:
    """Infeasible if any vertex has no out-edge or no in-edge."""
    for v in range(g.n):
        if g.out[v] == 0 or g.inn[v] == 0:
            return infeasible(ZERO_DEGREE)
    return FEASIBLE


def forced_chain_check(g: Graph) -> Verdict:
    """Walk chains of degree-1 vertices looking for a closed cycle.

    A cycle among forced out-edges (or, mirrored, forced in-edges) that is
    shorter than n can never extend to a Hamiltonian cycle.  If the forced
    out-edges close a single cycle through all n vertices, that cycle is
    the answer.
    """
    verdict = _forced_walk(g.out, g.n, want_cycle=True)
    if not verdict.feasible:
        return verdict
    return _forced_walk(g.inn, g.n, want_cycle=False)


def _forced_walk(adj: list[int], n: int, want_cycle: bool) -> Verdict:
    visited = 0
    for start in range(n):
        if visited >> start & 1 or adj[start].bit_count() != 1:
            continue
        pos: dict[int, int] = {}
        cur = start
        while adj[cur].bit_count() == 1 and cur not in pos and not (visited >> cur & 1):
            pos[cur] = len(pos)
            cur = adj[cur].bit_length() - 1
        if cur in pos:
            cycle_len = len(pos) - pos[cur]
            if cycle_len == n and want_cycle:
                cycle = [cur]
                nxt = adj[cur].bit_length() - 1
                while nxt != cur:
                    cycle.append(nxt)
                    nxt = adj[nxt].bit_length() - 1
                return solved(tuple(cycle))
            return infeasible(FORCED_SUBCYCLE)
        for v in pos:
            visited |= 1 << v
    return FEASIBLE


def clone_set_check(g: Graph) -> Verdict:
    """Symmetric-list companions forcing a short subcycle.

    Take X with identical in- and out-neighbour sets of size M where
    1 < M < n/2.  Any vertex like X is entered from and exits to that same
    M-set.  If at least M-1 further vertices have symmetric lists contained
    in X's, at least M vertices alternate strictly with the M targets, and
    the cycle through them closes after 2M < n vertices.
    """
    n = g.n
    symmetric = [v for v in range(n) if g.out[v] != 0 and g.out[v] == g.inn[v]]
    for x in symmetric:
        mask = g.out[x]
        m = mask.bit_count()
        if not (1 < m and 2 * m < n):
            continue
        companions = 0
        for y in symmetric:
            if y != x and g.out[y] | mask == mask:
                companions += 1
        if companions >= m - 1:
            return infeasible(CLONE_SET)
    return FEASIBLE


def connectivity_check(g: Graph) -> Verdict:
    """Strong connectivity through vertex 0.

    Every vertex must be reachable from 0 along out-edges and must reach 0
    (equivalently: reachable from 0 along in-edges).
    """
    if g.n == 0:
        return FEASIBLE
    full = (1 << g.n) - 1
    for adj in (g.out, g.inn):
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        if seen != full:
            return infeasible(DISCONNECTED)
    return FEASIBLE


def run_checks(g: Graph) -> Verdict:
    """All stop conditions, cheapest first; first non-feasible verdict wins."""
    for check in (zero_degree_check, forced_chain_check, clone_set_check, connectivity_check):
        verdict = check(g)
        if not verdict.feasible:
            return verdict
    return FEASIBLE
