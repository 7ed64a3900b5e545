"""Staged backtracking search for a Hamiltonian cycle.

The search commits one out-edge at a time: choosing edge A -> B removes
A's other out-edges on a checkpoint, re-runs the incremental analysis,
and recurses while the graph stays feasible.  Wrong choices are undone
by rolling back to the checkpoint.  A branch vertex is always one with
real choices left (out-degree above one); vertices are preferred in
ascending degree order, and a vertex's out-edges are tried in ascending
order of the target's in-degree, so the likeliest edges come first.

Five driver stages run the same search under different heuristic
switches and a shared per-stage time budget; a definitive answer from
any stage (cycle found, or the search space exhausted) ends the run.
"""
from __future__ import annotations

import sys
import time
from collections import Counter
from dataclasses import dataclass, field

from . import oracle
from .ecr import ecr_pass
from .graph import Edge, Graph, bits
from .pruning import RULE_NORMALIZE, analyze
from .stages import StageConfig, auto_budget, stage_config

FOUND = "found"
NOT_HAMILTONIAN = "not_hamiltonian"
TIMEOUT = "timeout"
_EXHAUSTED = "exhausted"


@dataclass
class SearchState:
    """Recursion bookkeeping: depth and the committed edge stack."""

    level: int = 0
    committed: list[Edge] = field(default_factory=list)

    @property
    def current_edge(self) -> Edge | None:
        return self.committed[-1] if self.committed else None


@dataclass
class StageStats:
    stage: int
    outcome: str
    nodes: int
    elapsed: float
    removed_by_rule: dict[str, int]


@dataclass
class SolveStats:
    stages: list[StageStats] = field(default_factory=list)
    normalize_removed: int = 0
    total_elapsed: float = 0.0


@dataclass
class SolveResult:
    outcome: str  # "found" | "not_hamiltonian" | "timeout"
    cycle: tuple[int, ...] | None
    stats: SolveStats

    @property
    def found(self) -> bool:
        return self.outcome == FOUND


@dataclass
class SolverOptions:
    first_stage: int = 1
    last_stage: int = 5
    budget: float | None = None  # per-stage seconds; None = auto from n
    combination_cap: int = 64
    trace: object = None  # callable sink for trace events, or None

    def __post_init__(self) -> None:
        if not 1 <= self.first_stage <= self.last_stage <= 5:
            raise ValueError(f"invalid stage range {self.first_stage}..{self.last_stage}")


def correct_order(g: Graph) -> list[int]:
    """All vertices by ascending current out-degree, ties by id."""
    return sorted(range(g.n), key=lambda v: (g.out[v].bit_count(), v))


def start_vertex(g: Graph, rule: int, cursor: int = 0) -> int:
    """Where the search begins.

    Rule 1: the first vertex in correct order that still has a choice
    (out-degree above one), falling back to vertex 0.  Rule 2: the
    cursor-th vertex of the correct order, advanced across restarts.
    """
    order = correct_order(g)
    if rule == 1:
        for v in order:
            if g.out[v].bit_count() > 1:
                return v
        return 0
    return order[cursor]


def sort_neighbours(g: Graph, v: int) -> list[int]:
    """v's out-neighbours by ascending in-degree, ties by id."""
    return sorted(bits(g.out[v]), key=lambda w: (g.inn[w].bit_count(), w))


def next_vertex(g: Graph, state: SearchState, rule: int) -> int:
    """The vertex the next recursion level branches on.

    Rule 2 follows the committed edge to its target; if the target is
    already forced (no choice left) it falls back to rule 1.
    """
    if rule == 2 and state.current_edge is not None:
        target = state.current_edge[1]
        if g.out[target].bit_count() > 1:
            return target
    return start_vertex(g, 1)


def commit_edge(g: Graph, a: int, b: int) -> list[Edge]:
    """Decide on edge a -> b: journal-remove a's other out-edges.

    Returns the removed siblings so the caller can seed the incremental
    analysis and restore on backtrack.
    """
    if not g.has_edge(a, b):
        raise ValueError(f"edge ({a}, {b}) not present")
    removed = []
    for x in g.out_neighbors(a):
        if x != b:
            g.remove_edge(a, x)
            removed.append((a, x))
    return removed


def reverse_labels(g: Graph) -> Graph:
    """Relabel through v -> (n - v) mod n; an involution on the edge set."""
    n = g.n
    rev = Graph(n)
    for x in range(n):
        for y in bits(g.out[x]):
            rx, ry = (n - x) % n, (n - y) % n
            rev.out[rx] |= 1 << ry
            rev.inn[ry] |= 1 << rx
    return rev


class _StageRun:
    """One stage's search over a private working graph."""

    def __init__(self, g: Graph, cfg: StageConfig, trace, counters: Counter):
        self.g = g
        self.cfg = cfg
        self.trace = trace
        self.counters = counters
        self.nodes = 0

    def search(self, start: int, deadline: float) -> tuple[str, tuple[int, ...] | None]:
        state = SearchState()
        return self._extend(start, state, deadline)

    def _extend(
        self, a: int, state: SearchState, deadline: float
    ) -> tuple[str, tuple[int, ...] | None]:
        if time.monotonic() >= deadline:
            return (TIMEOUT, None)
        self.nodes += 1
        state.level += 1
        try:
            for b in sort_neighbours(self.g, a):
                cp = self.g.checkpoint()
                removed = commit_edge(self.g, a, b)
                if self.trace is not None:
                    self.trace(("commit", (a, b), state.level))
                dirty = {a, *(t for _, t in removed)}
                report = analyze(
                    self.g,
                    dirty,
                    self.cfg,
                    deadline,
                    presearch=False,
                    trace=self.trace,
                    counters=self.counters,
                )
                verdict = report.verdict
                if verdict.solved:
                    self.g.rollback(cp)
                    return (FOUND, verdict.cycle)
                if verdict.timeout:
                    self.g.rollback(cp)
                    return (TIMEOUT, None)
                if verdict.feasible:
                    state.committed.append((a, b))
                    nxt = next_vertex(self.g, state, self.cfg.start_rule)
                    outcome, cycle = self._extend(nxt, state, deadline)
                    state.committed.pop()
                    self.g.rollback(cp)
                    if outcome != _EXHAUSTED:
                        return (outcome, cycle)
                else:
                    self.g.rollback(cp)
            return (_EXHAUSTED, None)
        finally:
            state.level -= 1


def find_hamiltonian_cycle(
    g: Graph,
    cfg: StageConfig,
    deadline: float,
    trace=None,
    counters: Counter | None = None,
) -> tuple[str, tuple[int, ...] | None, int]:
    """Run one stage's search phase on an already-analyzed feasible graph.

    Returns (outcome, cycle, nodes) where outcome is "found",
    "exhausted" (definitively no cycle) or "timeout".  Rule-2 stages
    restart from successive correct-order start vertices, splitting the
    remaining budget evenly; an exhausted restart is already definitive.
    """
    counters = counters if counters is not None else Counter()
    run = _StageRun(g, cfg, trace, counters)
    if cfg.start_rule != 2:
        outcome, cycle = run.search(start_vertex(g, 1), deadline)
        return outcome, cycle, run.nodes

    order = correct_order(g)
    phase_start = time.monotonic()
    remaining = deadline - phase_start
    if remaining <= 0:
        return TIMEOUT, None, run.nodes
    slice_len = remaining / len(order)
    base = g.checkpoint()
    for i, start in enumerate(order):
        sub_deadline = min(deadline, phase_start + (i + 1) * slice_len)
        outcome, cycle = run.search(start, sub_deadline)
        g.rollback(base)
        if outcome != TIMEOUT:
            return outcome, cycle, run.nodes
        if time.monotonic() >= deadline:
            break
    return TIMEOUT, None, run.nodes


def _canonical(cycle: tuple[int, ...]) -> tuple[int, ...]:
    k = cycle.index(min(cycle))
    return cycle[k:] + cycle[:k]


def _unreverse(cycle: tuple[int, ...], n: int) -> tuple[int, ...]:
    return tuple((n - v) % n for v in cycle)


def solve(g: Graph, opts: SolverOptions | None = None) -> SolveResult:
    """Decide Hamiltonian-cycle existence; exhibit a cycle when found.

    The input graph is never mutated.  A normalized private copy runs
    through the selected stages; each stage resets to that copy (stage 5
    to its reversed relabeling), analyzes, optionally runs the
    constantly-removed pass, then searches under the stage budget.  An
    infeasible pre-search analysis or an exhausted search is definitive;
    timeouts fall through to the next stage.
    """
    opts = opts or SolverOptions()
    trace = opts.trace
    started = time.monotonic()
    stats = SolveStats()

    base = g.copy()
    norm_removed = base.normalize()
    stats.normalize_removed = len(norm_removed)
    if trace is not None:
        by_src: dict[int, list[Edge]] = {}
        for x, y in norm_removed:
            by_src.setdefault(x, []).append((x, y))
        for x in sorted(by_src):
            trace(("rule", RULE_NORMALIZE, "orig", x, by_src[x]))

    n = base.n
    if n == 0:
        return SolveResult(NOT_HAMILTONIAN, None, stats)
    budget = opts.budget if opts.budget is not None else auto_budget(n)
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * n + 200))

    def finish(outcome: str, cycle: tuple[int, ...] | None) -> SolveResult:
        stats.total_elapsed = time.monotonic() - started
        if cycle is not None:
            cycle = _canonical(cycle)
            if not oracle.validate_cycle(g, cycle):
                raise RuntimeError(f"internal error: produced invalid cycle {cycle}")
        if trace is not None:
            if outcome == FOUND:
                trace(("verdict", "FOUND " + " ".join(str(v + 1) for v in cycle)))
            elif outcome == NOT_HAMILTONIAN:
                trace(("verdict", "NONE"))
            else:
                trace(("verdict", "TIMEOUT"))
        return SolveResult(outcome, cycle, stats)

    for stage_id in range(opts.first_stage, opts.last_stage + 1):
        cfg = stage_config(stage_id, budget, opts.combination_cap)
        stage_start = time.monotonic()
        deadline = stage_start + budget
        counters: Counter = Counter()
        work = reverse_labels(base) if cfg.reversed_labels else base.copy()

        def record(outcome: str, nodes: int = 0) -> None:
            stats.stages.append(
                StageStats(
                    stage=stage_id,
                    outcome=outcome,
                    nodes=nodes,
                    elapsed=time.monotonic() - stage_start,
                    removed_by_rule=dict(counters),
                )
            )

        def to_input(cycle: tuple[int, ...]) -> tuple[int, ...]:
            return _unreverse(cycle, n) if cfg.reversed_labels else cycle

        report = analyze(work, None, cfg, deadline, presearch=True, trace=trace, counters=counters)
        verdict = report.verdict
        if verdict.feasible and cfg.ecr_presearch:
            ecr_report = ecr_pass(work, cfg, deadline, trace=trace, counters=counters)
            verdict = ecr_report.verdict

        if verdict.timeout:
            record("timeout")
            continue
        if verdict.infeasible:
            record("infeasible")
            return finish(NOT_HAMILTONIAN, None)
        if verdict.solved:
            record("solved")
            return finish(FOUND, to_input(verdict.cycle))

        if trace is not None:
            trace(("verdict", "FEASIBLE"))
        outcome, cycle, nodes = find_hamiltonian_cycle(work, cfg, deadline, trace, counters)
        if outcome == FOUND:
            record(FOUND, nodes)
            return finish(FOUND, to_input(cycle))
        if outcome == _EXHAUSTED:
            record(_EXHAUSTED, nodes)
            return finish(NOT_HAMILTONIAN, None)
        record("timeout", nodes)

    return finish(TIMEOUT, None)
