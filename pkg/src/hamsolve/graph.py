"""Directed-graph value with dual adjacency and a removal journal.

Vertices are dense 0-based integers.  Each vertex keeps its out- and
in-neighbour sets as int bitmasks, kept mutually consistent (y is in
``out[x]`` iff x is in ``in[y]``).  Bitmask storage gives O(1) membership
and subset tests and intrinsically ascending iteration order, which the
pruning rules and the search rely on for determinism.

All edge removals go through a journal, so the state at any checkpoint
can be restored bit-exactly.  Checkpoints are plain journal positions
and nest LIFO.
"""
from __future__ import annotations

from collections.abc import Iterator, Sequence

Edge = tuple[int, int]


class GraphFormatError(ValueError):
    """Malformed graph input: bad vertex ids, wrong counts."""


class JournalError(RuntimeError):
    """Journal misuse: removing an absent edge, rolling back past a dead
    checkpoint.  Signals a bug in a rule or in the search, not bad input."""


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Directed graph over vertices ``0..n-1`` with journaled removals."""

    __slots__ = ("n", "out", "inn", "_trail", "_pending")

    def __init__(self, n: int) -> None:
        if n < 0:
            raise GraphFormatError(f"vertex count must be non-negative, got {n}")
        self.n = n
        self.out: list[int] = [0] * n
        self.inn: list[int] = [0] * n
        self._trail: list[Edge] = []
        # Raw input lists, kept only so normalize() can report duplicate
        # edges (the bitmasks collapse them).
        self._pending: list[list[int]] | None = None

    # ---- construction ------------------------------------------------

    @classmethod
    def from_adjacency_lists(cls, n: int, lists: Sequence[Sequence[int]]) -> "Graph":
        """Build a graph from per-vertex neighbour lists (0-based).

        Duplicate edges and loops are retained (for normalize() to report)
        rather than rejected.  Out-of-range ids raise GraphFormatError.
        """
        if len(lists) != n:
            raise GraphFormatError(f"expected {n} adjacency lists, got {len(lists)}")
        g = cls(n)
        for v, nbrs in enumerate(lists):
            for w in nbrs:
                if not 0 <= w < n:
                    raise GraphFormatError(
                        f"vertex {v}: neighbour {w} out of range [0, {n})"
                    )
                g.out[v] |= 1 << w
                g.inn[w] |= 1 << v
        g._pending = [list(nbrs) for nbrs in lists]
        return g

    def copy(self) -> "Graph":
        """Independent copy with a fresh (empty) journal."""
        g = Graph(self.n)
        g.out = list(self.out)
        g.inn = list(self.inn)
        if self._pending is not None:
            g._pending = [list(nbrs) for nbrs in self._pending]
        return g

    def add_edge(self, x: int, y: int) -> None:
        """Insert edge x -> y.  Construction-time only: not journaled."""
        if not (0 <= x < self.n and 0 <= y < self.n):
            raise GraphFormatError(f"edge ({x}, {y}) out of range [0, {self.n})")
        if x == y:
            raise GraphFormatError(f"loop edge ({x}, {y}) not allowed via add_edge")
        if self.out[x] >> y & 1:
            raise GraphFormatError(f"edge ({x}, {y}) already present")
        self.out[x] |= 1 << y
        self.inn[y] |= 1 << x

    def normalize(self) -> list[Edge]:
        """Drop loops and duplicate edges in place; return what was removed.

        Idempotent.  One entry is reported per extra occurrence of a
        duplicated edge and one per loop occurrence.
        """
        removed: list[Edge] = []
        if self._pending is not None:
            for v, nbrs in enumerate(self._pending):
                seen = 0
                for w in nbrs:
                    if w == v or seen >> w & 1:
                        removed.append((v, w))
                    seen |= 1 << w
            self._pending = None
        for v in range(self.n):
            if self.out[v] >> v & 1:
                self.out[v] &= ~(1 << v)
                self.inn[v] &= ~(1 << v)
                if (v, v) not in removed:
                    removed.append((v, v))
        return removed

    # ---- queries -------------------------------------------------------

    def has_edge(self, x: int, y: int) -> bool:
        return bool(self.out[x] >> y & 1)

    def out_degree(self, v: int) -> int:
        return self.out[v].bit_count()

    def in_degree(self, v: int) -> int:
        return self.inn[v].bit_count()

    def degree(self, v: int, direction: str = "out") -> int:
        """Degree of v, ``direction`` is "out" or "in"."""
        if direction == "out":
            return self.out_degree(v)
        if direction == "in":
            return self.in_degree(v)
        raise ValueError(f"direction must be 'out' or 'in', got {direction!r}")

    def out_neighbors(self, v: int) -> list[int]:
        return list(bits(self.out[v]))

    def in_neighbors(self, v: int) -> list[int]:
        return list(bits(self.inn[v]))

    def edges(self) -> Iterator[Edge]:
        for x in range(self.n):
            for y in bits(self.out[x]):
                yield (x, y)

    @property
    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self.out)

    def to_adjacency_lists(self) -> list[list[int]]:
        return [self.out_neighbors(v) for v in range(self.n)]

    # ---- journal ---------------------------------------------------------

    def remove_edge(self, x: int, y: int) -> None:
        """Remove edge x -> y from both adjacency sides; journaled."""
        if not (self.out[x] >> y & 1):
            raise JournalError(f"removing absent edge ({x}, {y})")
        self.out[x] &= ~(1 << y)
        self.inn[y] &= ~(1 << x)
        self._trail.append((x, y))

    def checkpoint(self) -> int:
        """Token for the current journal position."""
        return len(self._trail)

    def rollback(self, cp: int) -> None:
        """Restore the graph to its state at ``cp``; undoes later removals."""
        if not 0 <= cp <= len(self._trail):
            raise JournalError(
                f"rollback to dead checkpoint {cp} (journal length {len(self._trail)})"
            )
        while len(self._trail) > cp:
            x, y = self._trail.pop()
            self.out[x] |= 1 << y
            self.inn[y] |= 1 << x

    # ---- diagnostics -------------------------------------------------------

    def check_consistency(self) -> None:
        """Full-scan verification that out/in adjacency mirror each other."""
        for x in range(self.n):
            for y in bits(self.out[x]):
                if not (self.inn[y] >> x & 1):
                    raise JournalError(f"edge ({x}, {y}) missing from in-adjacency")
        for y in range(self.n):
            for x in bits(self.inn[y]):
                if not (self.out[x] >> y & 1):
                    raise JournalError(f"edge ({x}, {y}) missing from out-adjacency")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.out == other.out and self.inn == other.inn

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count})"
