"""Edge-removal rules and the fixpoint analysis driver.

The central rule is a Hall-style covering argument on adjacency lists.
For a tested vertex V, collect S = {V} plus every vertex whose list is a
subset of V's.  All of S's cycle successors land inside U = adj(V), and
they are pairwise distinct, so if |S| = |U| the vertices of U are spoken
for: any edge into U from outside S can be removed.  If |S| > |U| there
are not enough distinct successors and no Hamiltonian cycle exists.

The same test runs against the in-adjacency ("opposite" direction), and
it stays sound when V's list is temporarily extended with fictitious
edges: real successors still land in the extended U, so the counting
argument is unchanged.  Extensions only ever help by letting more lists
qualify as subsets.
"""
from __future__ import annotations

import time
from collections import Counter, deque
from dataclasses import dataclass, field
from enum import Enum

from .feasibility import (
    DEFICIENCY,
    FEASIBLE,
    TIMEOUT,
    ZERO_DEGREE,
    Verdict,
    infeasible,
    run_checks,
)
from .graph import Edge, Graph, bits
from .stages import StageConfig, stage_config

RULE_NORMALIZE = "normalize"
RULE_SINGLE_DIRECTION = "single_direction"
RULE_UNIQUE_BASIC = "unique_basic"
RULE_UNIQUE_ADDITIONS = "unique_additions"
RULE_UNIQUE_COMBINATIONS = "unique_combinations"
RULE_ECR = "ecr"

RULE_NAMES = (
    RULE_NORMALIZE,
    RULE_SINGLE_DIRECTION,
    RULE_UNIQUE_BASIC,
    RULE_UNIQUE_ADDITIONS,
    RULE_UNIQUE_COMBINATIONS,
    RULE_ECR,
)


class Direction(Enum):
    """Which adjacency side a rule reads: out-lists or in-lists."""

    ORIGINAL = "orig"
    OPPOSITE = "opp"


@dataclass(frozen=True)
class AdditionSet:
    """Fictitious edges appended to one vertex's list for a single trial.

    ``added_mask`` holds the extra targets in the tested direction; none
    of them is already adjacent and none is the vertex itself.
    """

    vertex: int
    direction: Direction
    partner: int
    added_mask: int

    def edges(self) -> list[Edge]:
        return [(self.vertex, w) for w in bits(self.added_mask)]


@dataclass
class AnalysisReport:
    """Result of one analysis pass: what was removed and where it ended.

    On an infeasible (or timed-out) verdict the graph has been rolled back
    to the pass entry state unless in-place mode was requested; the removed
    list still describes everything the pass discovered.
    """

    removed: list[Edge] = field(default_factory=list)
    verdict: Verdict = FEASIBLE


def _adj(g: Graph, direction: Direction) -> list[int]:
    return g.out if direction is Direction.ORIGINAL else g.inn


def _remove_directed(g: Graph, direction: Direction, w: int, t: int) -> Edge:
    """Remove the tested-direction edge w -> t; returns the real edge."""
    if direction is Direction.ORIGINAL:
        g.remove_edge(w, t)
        return (w, t)
    g.remove_edge(t, w)
    return (t, w)


def single_direction_rule(g: Graph, v: int) -> list[Edge]:
    """Drop the reciprocal of a forced edge.

    If v's only out-neighbour is y, edge v -> y is in every Hamiltonian
    cycle, so y -> v would close a 2-cycle and can go; mirrored for v's
    only in-neighbour.  Skipped for n <= 2 where the 2-cycle is the answer.
    """
    if g.n <= 2:
        return []
    removed: list[Edge] = []
    if g.out[v].bit_count() == 1:
        y = g.out[v].bit_length() - 1
        if g.has_edge(y, v):
            g.remove_edge(y, v)
            removed.append((y, v))
    if g.inn[v].bit_count() == 1:
        y = g.inn[v].bit_length() - 1
        if g.has_edge(v, y):
            g.remove_edge(v, y)
            removed.append((v, y))
    return removed


def _subset_rule(
    g: Graph, direction: Direction, v: int, extension: int
) -> list[Edge] | Verdict:
    """Run the covering rule around v with ``extension`` added to its list.

    Returns the removed real edges, or a deficiency verdict when more
    lists fit inside the (extended) target set than it has members.
    """
    adj = _adj(g, direction)
    base = adj[v] | extension
    if base == 0:
        return []
    s_mask = 1 << v
    for u in range(g.n):
        if u == v:
            continue
        au = adj[u]
        if au and au | base == base:
            s_mask |= 1 << u
    s_cnt = s_mask.bit_count()
    u_cnt = base.bit_count()
    if u_cnt < s_cnt:
        return infeasible(DEFICIENCY)
    if u_cnt != s_cnt or s_cnt >= g.n:
        return []
    removed: list[Edge] = []
    for w in range(g.n):
        if s_mask >> w & 1:
            continue
        hits = adj[w] & base
        for t in bits(hits):
            removed.append(_remove_directed(g, direction, w, t))
    return removed


def unique_neighbours_basic(g: Graph, direction: Direction, v: int) -> list[Edge] | Verdict:
    """The covering rule on v's own adjacency list, no extensions."""
    return _subset_rule(g, direction, v, 0)


def candidate_additions(g: Graph, direction: Direction, v: int) -> list[AdditionSet]:
    """One addition set per partner vertex sharing a neighbour with v.

    A partner u contributes the targets on u's list missing from v's
    (loops excluded).  Partners repeating an earlier set are dropped;
    empty sets are never emitted.
    """
    adj = _adj(g, direction)
    base = adj[v]
    not_self = ~(1 << v)
    seen: set[int] = set()
    out: list[AdditionSet] = []
    for u in range(g.n):
        if u == v:
            continue
        au = adj[u]
        if au & base:
            added = au & ~base & not_self
            if added and added not in seen:
                seen.add(added)
                out.append(AdditionSet(v, direction, u, added))
    return out


def unique_neighbours_with_additions(
    g: Graph, direction: Direction, v: int
) -> list[Edge] | Verdict:
    """Try the covering rule once per addition set; removals accumulate.

    Fictitious edges are never removal candidates: the tested vertex sits
    in S by construction, so only true edges from outside S are touched.
    """
    removed: list[Edge] = []
    for aset in candidate_additions(g, direction, v):
        result = _subset_rule(g, direction, v, aset.added_mask)
        if isinstance(result, Verdict):
            return result
        removed.extend(result)
    return removed


def unique_neighbours_combinations(
    g: Graph, direction: Direction, v: int, cap: int = 64
) -> list[Edge] | Verdict:
    """Covering rule over combined addition sets.

    Trials, deduplicated by the resulting extension: the union of every
    addition set, then two-step chains where a first partner's additions
    extend v's list and a second partner is matched against the extended
    list.  At most ``cap`` trials run; the first trial that removes
    anything wins.
    """
    if cap < 1:
        raise ValueError(f"cap must be >= 1, got {cap}")
    first_level = candidate_additions(g, direction, v)
    if not first_level:
        return []
    adj = _adj(g, direction)
    base = adj[v]
    not_self = ~(1 << v)

    def trial_masks():
        union = 0
        for aset in first_level:
            union |= aset.added_mask
        yield union
        for aset in first_level:
            t1 = base | aset.added_mask
            for u2 in range(g.n):
                if u2 == v:
                    continue
                au = adj[u2]
                if au & t1:
                    new = au & ~t1 & not_self
                    if new:
                        yield aset.added_mask | new

    seen: set[int] = set()
    trials = 0
    for mask in trial_masks():
        if mask in seen:
            continue
        seen.add(mask)
        trials += 1
        if trials > cap:
            break
        result = _subset_rule(g, direction, v, mask)
        if isinstance(result, Verdict):
            return result
        if result:
            return result
    return []


class _Stop(Exception):
    def __init__(self, verdict: Verdict) -> None:
        self.verdict = verdict


_DEFAULT_CFG = stage_config(1, float("inf"))


def analyze(
    g: Graph,
    dirty: set[int] | None = None,
    cfg: StageConfig = _DEFAULT_CFG,
    deadline: float | None = None,
    *,
    presearch: bool = False,
    trace=None,
    counters: Counter | None = None,
    rollback_on_infeasible: bool = True,
) -> AnalysisReport:
    """Drive the removal rules to fixpoint, then run the stop conditions.

    The worklist starts from ``dirty`` (None means every vertex).  Each
    removal re-queues both endpoints, and at every quiescent point the
    worklist is refilled with vertices whose current lists are supersets
    of a changed vertex's list in either direction, since only those can
    gain a new subset relation.  Rules per vertex, cheapest first:
    single-direction, then the covering rule both ways, then the addition
    and combination variants when the stage enables them (combinations
    pre-search only).

    Verdicts: infeasible as soon as any test fails (graph rolled back
    unless ``rollback_on_infeasible`` is False), solved when the forced
    edges close a full cycle, timeout past ``deadline``, else feasible.
    """
    n = g.n
    cp = g.checkpoint()
    removed_all: list[Edge] = []
    events: list[tuple] = []
    local_counts: Counter = Counter()

    queue: deque[int] = deque()
    queued = bytearray(n)
    pending: set[int] = set()

    def push(v: int) -> None:
        if not queued[v]:
            queued[v] = 1
            queue.append(v)

    if dirty is None:
        for v in range(n):
            push(v)
    else:
        for v in sorted(set(dirty)):
            push(v)
            pending.add(v)  # schedule supersets of the seed lists too

    def absorb(rule: str, direction: Direction, v: int, result) -> None:
        if isinstance(result, Verdict):
            raise _Stop(result)
        if not result:
            return
        removed_all.extend(result)
        local_counts[rule] += len(result)
        events.append(("rule", rule, direction.value, v, list(result)))
        for x, y in result:
            pending.add(x)
            pending.add(y)
            push(x)
            push(y)
            if g.out[x] == 0 or g.inn[y] == 0:
                raise _Stop(infeasible(ZERO_DEGREE))

    verdict: Verdict
    try:
        while True:
            while queue:
                if deadline is not None and time.monotonic() >= deadline:
                    raise _Stop(TIMEOUT)
                v = queue.popleft()
                queued[v] = 0
                absorb(RULE_SINGLE_DIRECTION, Direction.ORIGINAL, v, single_direction_rule(g, v))
                for direction in (Direction.ORIGINAL, Direction.OPPOSITE):
                    absorb(RULE_UNIQUE_BASIC, direction, v, unique_neighbours_basic(g, direction, v))
                if cfg.additions_enabled:
                    for direction in (Direction.ORIGINAL, Direction.OPPOSITE):
                        absorb(
                            RULE_UNIQUE_ADDITIONS,
                            direction,
                            v,
                            unique_neighbours_with_additions(g, direction, v),
                        )
                if cfg.combinations_presearch and presearch:
                    for direction in (Direction.ORIGINAL, Direction.OPPOSITE):
                        absorb(
                            RULE_UNIQUE_COMBINATIONS,
                            direction,
                            v,
                            unique_neighbours_combinations(g, direction, v, cfg.combination_cap),
                        )
            if pending:
                changed = sorted(pending)
                pending.clear()
                for w in range(n):
                    if queued[w]:
                        continue
                    ow, iw = g.out[w], g.inn[w]
                    for d in changed:
                        od, idm = g.out[d], g.inn[d]
                        if (od and od | ow == ow) or (idm and idm | iw == iw):
                            push(w)
                            break
                continue
            break
        verdict = run_checks(g)
        if verdict.infeasible:
            raise _Stop(verdict)
    except _Stop as stop:
        verdict = stop.verdict

    rolled_back = False
    if (verdict.infeasible or verdict.timeout) and rollback_on_infeasible:
        g.rollback(cp)
        rolled_back = True
    if not rolled_back:
        if trace is not None:
            for ev in events:
                trace(ev)
        if counters is not None:
            counters.update(local_counts)
    return AnalysisReport(removed=removed_all, verdict=verdict)
