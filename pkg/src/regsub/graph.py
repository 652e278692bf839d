"""Labeled simple graphs stored as adjacency bit-rows, plus degree utilities.

Vertices are labeled ``0..n-1``; "the first i vertices" always means labels
``0..i-1``. Row ``adj[v]`` is an int whose bit ``u`` is set iff ``uv`` is an
edge. Graphs are immutable and capped at :data:`MAX_VERTICES` vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DomainError
from .rng import Rng

MAX_VERTICES = 64

DegreeSequence = tuple[int, ...]


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise DomainError(f"vertex count {self.n} outside [0, {MAX_VERTICES}]")
        if len(self.adj) != self.n:
            raise DomainError(f"expected {self.n} adjacency rows, got {len(self.adj)}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full or row < 0:
                raise DomainError(f"row {v} has bits outside 0..{self.n - 1}")
            if row >> v & 1:
                raise DomainError(f"loop at vertex {v}")
            for u in _bits(row):
                if not self.adj[u] >> v & 1:
                    raise DomainError(f"adjacency not symmetric at ({v}, {u})")

    @classmethod
    def _unchecked(cls, n: int, adj: tuple[int, ...]) -> Graph:
        # Hot loops (exhaustive scans) build millions of graphs known to be valid.
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", adj)
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise DomainError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, [(v, (v + 1) % n) for v in range(n)])

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, [(v, v + 1) for v in range(n - 1)])

    @classmethod
    def petersen(cls) -> Graph:
        outer = [(v, (v + 1) % 5) for v in range(5)]
        spokes = [(v, v + 5) for v in range(5)]
        inner = [(5 + v, 5 + (v + 2) % 5) for v in range(5)]
        return cls.from_edges(10, outer + spokes + inner)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u] >> (u + 1) << (u + 1))]

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def complement(self) -> Graph:
        full = (1 << self.n) - 1
        return Graph._unchecked(self.n, tuple(full ^ row ^ (1 << v) for v, row in enumerate(self.adj)))


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def degree_sequence(g: Graph) -> DegreeSequence:
    """Per-vertex degrees, in vertex order."""
    return tuple(row.bit_count() for row in g.adj)


def induced_subgraph(g: Graph, subset: Iterable[int]) -> Graph:
    """Subgraph spanned by ``subset``, relabeled ``0..m-1`` in increasing label order."""
    verts = sorted(set(subset))
    for v in verts:
        if not 0 <= v < g.n:
            raise DomainError(f"vertex {v} out of range for n={g.n}")
    rows = []
    for v in verts:
        row = g.adj[v]
        rows.append(sum(1 << j for j, u in enumerate(verts) if row >> u & 1))
    return Graph._unchecked(len(verts), tuple(rows))


def is_graphical(degrees: Sequence[int]) -> bool:
    """Erdős–Gallai test: does some simple graph realize ``degrees``?"""
    d = sorted(degrees, reverse=True)
    if not d:
        return True
    if d[-1] < 0 or d[0] > len(d) - 1 or sum(d) % 2:
        return False
    prefix = 0
    for k in range(1, len(d) + 1):
        prefix += d[k - 1]
        tail = sum(min(x, k) for x in d[k:])
        if prefix > k * (k - 1) + tail:
            return False
    return True


def is_regular(g: Graph, r: int | None = None) -> bool:
    degs = degree_sequence(g)
    if not degs:
        return True
    target = degs[0] if r is None else r
    return all(x == target for x in degs)


def sample_gnp(n: int, p: float, seed: int) -> Graph:
    """Draw G(n, p).

    Pairs ``(u, v)``, ``u < v``, consume the stream in lexicographic order, one
    53-bit uniform each; the pair is an edge iff the uniform is below ``p``.
    """
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"edge probability {p} outside [0, 1]")
    if not 0 <= n <= MAX_VERTICES:
        raise DomainError(f"vertex count {n} outside [0, {MAX_VERTICES}]")
    pairs = list(combinations(range(n), 2))
    draws = Rng(seed).uniforms(len(pairs)) < p
    rows = [0] * n
    for (u, v), hit in zip(pairs, draws.tolist()):
        if hit:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return Graph._unchecked(n, tuple(rows))
