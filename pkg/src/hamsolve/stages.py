"""Stage configurations for the five-pass solve driver.

Each stage toggles a fixed combination of heuristics: which start/next
vertex rule the search uses, whether the temporary-edge-addition variants
of the unique-neighbours rule run, whether combination trials run before
the search, whether the constantly-removed-edges pass runs before the
search, and (stage 5) whether the instance is relabeled first.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class StageConfig:
    stage_id: int
    start_rule: int              # 1 or 2: start/next vertex selection variant
    additions_enabled: bool      # unique-neighbours with temporary additions
    combinations_presearch: bool # combination trials, pre-search pass only
    ecr_presearch: bool          # constantly-removed-edges pass before search
    reversed_labels: bool        # solve the index-reversed relabeling
    budget: float                # wall-clock seconds for this stage
    combination_cap: int = 64    # max combination trials per vertex per pass


# (start_rule, additions, combinations, ecr, reversed)
_STAGE_ROWS: dict[int, tuple[int, bool, bool, bool, bool]] = {
    1: (1, False, False, False, False),
    2: (2, False, False, False, False),
    3: (1, True, True, False, False),
    4: (1, True, False, True, False),
    5: (1, False, False, True, True),
}


def stage_config(stage_id: int, budget: float, combination_cap: int = 64) -> StageConfig:
    """The fixed feature row for ``stage_id`` (1..5) under ``budget`` seconds."""
    try:
        rule, additions, combos, ecr, rev = _STAGE_ROWS[stage_id]
    except KeyError:
        raise ValueError(f"stage_id must be in 1..5, got {stage_id}") from None
    return StageConfig(
        stage_id=stage_id,
        start_rule=rule,
        additions_enabled=additions,
        combinations_presearch=combos,
        ecr_presearch=ecr,
        reversed_labels=rev,
        budget=budget,
        combination_cap=combination_cap,
    )


def auto_budget(n: int) -> float:
    """Per-stage time budget in seconds, quadratic in the vertex count.

    Calibrated so that n = 25, 50, 75, 100 map to 8.75, 35, 78.75 and 140
    seconds exactly.
    """
    return 8.75 * (n / 25.0) ** 2
