"""Exact-uniform sampling of graphs with a given degree sequence by unranking.

Graphs with degree sequence ``d`` are ordered as follows: vertex 0 picks its
neighbour set (a ``d_0``-subset of the later vertices, in lexicographic
order), then vertex 1 picks among the vertices after it, and so on. The
number of completions after each choice is an exact count from the
elimination DP, so a uniform rank in ``[0, G(d))`` maps to exactly one graph.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .enumeration import DegreeCounter, regular_degree
from .errors import DomainError
from .graph import Graph
from .rng import Rng


def unrank_graph(degrees: Sequence[int], rank: int, counter: DegreeCounter | None = None) -> Graph:
    """The ``rank``-th labeled graph with degree sequence ``degrees``."""
    counter = counter or DegreeCounter()
    total = counter.count(degrees)
    if not 0 <= rank < total:
        raise DomainError(f"rank {rank} outside [0, {total})")
    k = len(degrees)
    residual = list(degrees)
    rows = [0] * k
    for v in range(k):
        need = residual[v]
        later = [u for u in range(v + 1, k) if residual[u] > 0]
        for nbrs in combinations(later, need):
            for u in nbrs:
                residual[u] -= 1
            ways = counter.count(residual[v + 1:])
            if rank < ways:
                for u in nbrs:
                    rows[v] |= 1 << u
                    rows[u] |= 1 << v
                break
            rank -= ways
            for u in nbrs:
                residual[u] += 1
        else:
            raise AssertionError("rank not exhausted; counter is inconsistent")
        residual[v] = 0
    return Graph(k, tuple(rows))


def sample_by_degree_sequence(degrees: Sequence[int], seed: int, count: int,
                              counter: DegreeCounter | None = None) -> list[Graph]:
    counter = counter or DegreeCounter()
    total = counter.count(degrees)
    if total == 0:
        raise DomainError(f"no simple graph has degree sequence {tuple(degrees)}")
    rng = Rng(seed)
    return [unrank_graph(degrees, rng.below(total), counter) for _ in range(count)]


def sample_regular_exact(k: int, seed: int, count: int,
                         counter: DegreeCounter | None = None) -> list[Graph]:
    """``count`` independent uniform floor((k-1)/2)-regular graphs on ``k`` vertices."""
    if k < 1:
        raise DomainError("k must be positive")
    r = regular_degree(k)
    if (k * r) % 2:
        raise DomainError(
            f"no {r}-regular graph on {k} vertices: the degree sum {k * r} is odd (k = 3 mod 4)")
    return sample_by_degree_sequence([r] * k, seed, count, counter)
