"""Reproducible random graphs in four families, optionally with a planted
Hamiltonian cycle.

Families combine two axes.  "Undirected" style means most edges come in
symmetric pairs (x -> y together with y -> x); "irregular" means the
out-degree targets are heavy-tailed, with the largest at least three
times the median.  Regular graphs keep every out-degree within one of
the density target.  All randomness flows from one PCG64 stream seeded
by the spec, so identical specs give identical graphs.
"""
from __future__ import annotations

import statistics
from dataclasses import dataclass

import numpy as np

from .graph import Graph, bits

RNG_ID = "pcg64-numpy"

_SYMMETRIC_SHARE = 0.95  # fraction of extra undirected-style edges added as pairs


@dataclass(frozen=True)
class GeneratorSpec:
    n: int
    undirected_style: bool = False
    irregular: bool = False
    plant_cycle: bool = False
    seed: int = 0
    density: float = 4.0

    @property
    def family(self) -> str:
        a = "undirected" if self.undirected_style else "directed"
        b = "irregular" if self.irregular else "regular"
        return f"{a}-{b}"

    def validate(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.plant_cycle and self.n < 3:
            raise ValueError(f"plant_cycle requires n >= 3, got n={self.n}")
        if self.plant_cycle and self.density < 2:
            raise ValueError(f"plant_cycle requires density >= 2, got {self.density}")
        if self.density < 1 or self.density > self.n - 1:
            raise ValueError(f"density must be in [1, n-1], got {self.density}")


@dataclass(frozen=True)
class FamilyStats:
    median_out: float
    max_out: int
    symmetric_fraction: float


def family_statistics(g: Graph) -> FamilyStats:
    """Degree summary used to validate which family a graph belongs to."""
    degrees = [g.out[v].bit_count() for v in range(g.n)]
    edges = g.edge_count
    symmetric = sum(
        1 for x in range(g.n) for y in bits(g.out[x]) if g.out[y] >> x & 1
    )
    return FamilyStats(
        median_out=statistics.median(degrees) if degrees else 0.0,
        max_out=max(degrees, default=0),
        symmetric_fraction=symmetric / edges if edges else 0.0,
    )


def _degree_targets(spec: GeneratorSpec, rng: np.random.Generator) -> list[int]:
    n, density = spec.n, spec.density
    if not spec.irregular:
        return [int(round(density))] * n
    # Heavy tail: geometric body, then a few hubs pushed past 3x the median.
    lo = 2 if spec.plant_cycle else 1
    draws = rng.geometric(p=min(0.95, 1.0 / density), size=n)
    targets = [min(n - 1, max(lo, int(d))) for d in draws]
    med = statistics.median(targets)
    want_max = min(n - 1, int(3 * med) + 1)
    hubs = max(1, n // 12)
    order = list(rng.permutation(n))
    for v in order[:hubs]:
        targets[v] = max(targets[v], want_max)
    return targets


def generate(spec: GeneratorSpec) -> tuple[Graph, tuple[int, ...] | None]:
    """Build one graph for ``spec``; returns the planted cycle if any."""
    spec.validate()
    rng = np.random.default_rng(spec.seed)
    n = spec.n
    g = Graph(n)
    targets = _degree_targets(spec, rng)

    planted: tuple[int, ...] | None = None
    if spec.plant_cycle:
        perm = [int(v) for v in rng.permutation(n)]
        for i in range(n):
            g.add_edge(perm[i], perm[(i + 1) % n])
        planted = tuple(perm)

    if spec.undirected_style:
        _fill_undirected(g, targets, rng, planted)
    else:
        _fill_directed(g, targets, rng)

    if spec.undirected_style:
        _ensure_symmetry(g)
    if planted is not None and not _cycle_present(g, planted):
        raise RuntimeError("internal error: planted cycle lost during generation")
    return g, planted


def _eligible(g: Graph, v: int) -> list[int]:
    mask = ~(g.out[v] | (1 << v)) & ((1 << g.n) - 1)
    return list(bits(mask))


def _fill_directed(g: Graph, targets: list[int], rng: np.random.Generator) -> None:
    for v in range(g.n):
        need = targets[v] - g.out[v].bit_count()
        if need <= 0:
            continue
        pool = _eligible(g, v)
        take = min(need, len(pool))
        for w in rng.choice(pool, size=take, replace=False):
            g.add_edge(v, int(w))


def _fill_undirected(
    g: Graph,
    targets: list[int],
    rng: np.random.Generator,
    planted: tuple[int, ...] | None,
) -> None:
    n = g.n
    deficit = [targets[v] - g.out[v].bit_count() for v in range(n)]
    if planted is not None:
        # Mirror the planted cycle first so its edges are symmetric.
        for i in range(n):
            a, b = planted[i], planted[(i + 1) % n]
            if deficit[b] > 0 and not g.has_edge(b, a):
                g.add_edge(b, a)
                deficit[b] -= 1
    # Pair-fill: pick two deficient, non-adjacent vertices and join both ways.
    guard = 4 * n * max(targets, default=1) + 16
    while guard > 0:
        guard -= 1
        open_vs = [v for v in range(n) if deficit[v] > 0]
        if not open_vs:
            return
        v = max(open_vs, key=lambda u: (deficit[u], -u))
        mates = [w for w in open_vs if w != v and not g.has_edge(v, w)]
        symmetric_ok = rng.random() < _SYMMETRIC_SHARE
        if mates and symmetric_ok:
            w = int(rng.choice(mates))
            if not g.has_edge(v, w):
                g.add_edge(v, w)
                deficit[v] -= 1
            if not g.has_edge(w, v):
                g.add_edge(w, v)
                deficit[w] -= 1
            continue
        # Leftover (or deliberately asymmetric) single edge.
        pool = _eligible(g, v)
        if not pool:
            deficit[v] = 0
            continue
        g.add_edge(v, int(rng.choice(pool)))
        deficit[v] -= 1


def _ensure_symmetry(g: Graph, floor: float = 0.85) -> None:
    """Mirror asymmetric edges (ascending order) until comfortably paired."""
    while family_statistics(g).symmetric_fraction < floor:
        progressed = False
        for x in range(g.n):
            for y in bits(g.out[x]):
                if not g.out[y] >> x & 1:
                    g.add_edge(y, x)
                    progressed = True
                    break
            if progressed:
                break
        if not progressed:
            return


def _cycle_present(g: Graph, cycle: tuple[int, ...]) -> bool:
    return all(
        g.has_edge(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))
    )


def derive_seeds(base_seed: int, count: int) -> list[int]:
    """Independent per-graph seeds split deterministically from one base."""
    ss = np.random.SeedSequence(base_seed)
    return [int(s) for s in ss.generate_state(count, np.uint64)]
