"""Hypothesis-driven edge removal, run once before the search in the
stages that enable it.

For a vertex with several out-edges, exactly one of them is in any
Hamiltonian cycle.  Assume each in turn: drop the siblings, propagate the
removal rules, and record everything that went away.  An assumption whose
propagation proves infeasible kills its own edge outright; an edge that
disappears under every surviving assumption can never be used and is
removed unconditionally.
"""
from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass

from .feasibility import FEASIBLE, TIMEOUT, ZERO_DEGREE, infeasible
from .graph import Edge, Graph
from .pruning import RULE_ECR, AnalysisReport, analyze
from .stages import StageConfig


@dataclass(frozen=True)
class ConsequenceList:
    """Everything removed while assuming one chosen out-edge is used.

    The chosen edge itself is never part of ``removed``.  When the
    assumption is infeasible, ``removed`` still holds the full set
    discovered before the contradiction.
    """

    vertex: int
    chosen: Edge
    removed: tuple[Edge, ...]
    infeasible: bool


def consequence_closure(
    g: Graph,
    v: int,
    chosen: int,
    cfg: StageConfig,
    deadline: float | None = None,
) -> ConsequenceList:
    """Propagate the assumption that v -> chosen is in the cycle.

    Removes v's sibling edges on a checkpoint, runs the analysis to
    fixpoint, collects every removal, and rolls the graph back.  The
    propagation uses the enclosing stage's rule set, never nesting
    further hypotheses.
    """
    if not g.has_edge(v, chosen):
        raise ValueError(f"edge ({v}, {chosen}) not present")
    if g.out_degree(v) < 2:
        raise ValueError(f"vertex {v} needs out-degree >= 2")
    cp = g.checkpoint()
    siblings = [w for w in g.out_neighbors(v) if w != chosen]
    for w in siblings:
        g.remove_edge(v, w)
    dirty = {v, *siblings}
    report = analyze(
        g,
        dirty,
        cfg,
        deadline,
        presearch=True,
        rollback_on_infeasible=False,
    )
    removed = tuple([(v, w) for w in siblings] + report.removed)
    g.rollback(cp)
    return ConsequenceList(
        vertex=v,
        chosen=(v, chosen),
        removed=removed,
        infeasible=report.verdict.infeasible,
    )


def constantly_removed(
    g: Graph,
    v: int,
    cfg: StageConfig,
    deadline: float | None = None,
    trace=None,
    counters: Counter | None = None,
) -> AnalysisReport:
    """Test every out-edge of v as the chosen one and prune accordingly.

    Edges with infeasible assumptions are removed for real and their
    lists discarded.  If no assumption survives the vertex is dead and so
    is the graph.  Otherwise the intersection of the surviving lists is
    removed: those edges vanish no matter which choice is made.  Real
    removals are propagated once at the end.
    """
    if g.out_degree(v) < 2:
        raise ValueError(f"vertex {v} needs out-degree >= 2")
    report = AnalysisReport()
    surviving: list[set[Edge]] = []
    dead: list[int] = []
    for b in g.out_neighbors(v):
        if deadline is not None and time.monotonic() >= deadline:
            report.verdict = TIMEOUT
            return report
        closure = consequence_closure(g, v, b, cfg, deadline)
        if trace is not None:
            trace(("hyp", v, closure.chosen, closure.infeasible))
        if closure.infeasible:
            dead.append(b)
        else:
            surviving.append(set(closure.removed))

    to_remove: list[Edge] = [(v, b) for b in dead]
    if surviving:
        common = set.intersection(*surviving)
        to_remove.extend(sorted(common))

    applied: list[Edge] = []
    for x, y in to_remove:
        if g.has_edge(x, y):
            g.remove_edge(x, y)
            applied.append((x, y))
    if applied:
        report.removed.extend(applied)
        if counters is not None:
            counters[RULE_ECR] += len(applied)
        if trace is not None:
            trace(("rule", RULE_ECR, "orig", v, list(applied)))

    if not surviving:
        report.verdict = infeasible(ZERO_DEGREE)
        return report
    if applied:
        dirty = {x for x, _ in applied} | {y for _, y in applied}
        follow = analyze(g, dirty, cfg, deadline, presearch=True, trace=trace, counters=counters)
        report.removed.extend(follow.removed)
        report.verdict = follow.verdict
    return report


def ecr_pass(
    g: Graph,
    cfg: StageConfig,
    deadline: float | None = None,
    trace=None,
    counters: Counter | None = None,
) -> AnalysisReport:
    """Apply constantly_removed to every branching vertex until settled.

    Sweeps vertices in ascending order; a sweep that removed anything may
    have created new opportunities, so sweeps repeat until one is clean
    or the deadline passes (partial results are kept either way).
    """
    total = AnalysisReport()
    while True:
        swept_any = False
        for v in range(g.n):
            if deadline is not None and time.monotonic() >= deadline:
                total.verdict = TIMEOUT
                return total
            if g.out_degree(v) < 2:
                continue
            report = constantly_removed(g, v, cfg, deadline, trace, counters)
            total.removed.extend(report.removed)
            if report.removed:
                swept_any = True
            if not report.verdict.feasible:
                total.verdict = report.verdict
                return total
        if not swept_any:
            break
    total.verdict = FEASIBLE
    return total
