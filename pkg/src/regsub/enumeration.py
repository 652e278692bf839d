"""Exact big-integer counts of labeled graphs by degree sequence.

The counter eliminates one vertex at a time. A state is the multiset of
residual degrees of the vertices not yet eliminated (kept as a sorted
tuple); eliminating a vertex of residual degree ``r`` means choosing which
``r`` of the remaining vertices it joins. Vertices with equal residual degree
are interchangeable, so the choice is summed per residual-degree class with
binomial weights. Labeled counts depend only on the multiset, which is what
makes the memo valid.

The constrained count (edgeless prefix ``0..i-1`` with prescribed degrees,
all other vertices of degree ``(k-1)/2``) eliminates the prefix vertices
first: their neighbours are all outside the prefix, so each one simply
distributes its degree over the multiset of outside vertices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import BudgetExceeded, DomainError
from .graph import Graph, is_graphical

SCAN_BUDGET = 1 << 21
EXACT_K_MAX = 15

State = tuple[int, ...]


def _groups(state: State) -> list[tuple[int, int]]:
    """Run-length encode a non-increasing tuple into ``(value, multiplicity)``."""
    out: list[tuple[int, int]] = []
    for x in state:
        if out and out[-1][0] == x:
            out[-1] = (x, out[-1][1] + 1)
        else:
            out.append((x, 1))
    return out


def _distribute(state: State, r: int) -> Iterator[tuple[int, State]]:
    """Ways to join one new vertex to ``r`` distinct vertices of ``state``.

    Yields ``(weight, new_state)`` where ``new_state`` has the chosen vertices'
    residual degrees decremented (zeros dropped) and ``weight`` counts the
    labeled choices that lead to it.
    """
    groups = _groups(state)
    avail = [m for _, m in groups]
    suffix = [0] * (len(groups) + 1)
    for g in range(len(groups) - 1, -1, -1):
        suffix[g] = suffix[g + 1] + avail[g]
    picks = [0] * len(groups)

    def rec(g: int, left: int, weight: int):
        if left == 0:
            nxt: list[int] = []
            for (value, m), j in zip(groups, picks[:g] + [0] * (len(groups) - g)):
                nxt.extend([value] * (m - j))
                if value > 1:
                    nxt.extend([value - 1] * j)
            nxt.sort(reverse=True)
            yield weight, tuple(nxt)
            return
        if g == len(groups) or suffix[g] < left:
            return
        m = avail[g]
        for j in range(min(m, left), -1, -1):
            picks[g] = j
            yield from rec(g + 1, left - j, weight * math.comb(m, j))
        picks[g] = 0

    yield from rec(0, r, 1)


class DegreeCounter:
    """Memoized exact counter. One instance per batch of related queries.

    The memo is private to the instance; a finished counter may be shared
    read-only, but concurrent writers need separate instances.
    """

    def __init__(self):
        self._memo: dict[State, int] = {}
        self._constrained_memo: dict[tuple[State, State], int] = {}

    def count(self, degrees: Sequence[int]) -> int:
        """Number of labeled simple graphs with exactly this degree sequence."""
        if any(x < 0 for x in degrees):
            raise DomainError("degrees must be non-negative")
        if sum(degrees) % 2 or any(x >= len(degrees) for x in degrees):
            return 0
        return self._count(tuple(sorted((x for x in degrees if x), reverse=True)))

    def _count(self, state: State) -> int:
        if not state:
            return 1
        hit = self._memo.get(state)
        if hit is not None:
            return hit
        r, rest = state[0], state[1:]
        total = 0
        if r <= len(rest) and sum(state) % 2 == 0:
            for weight, nxt in _distribute(rest, r):
                total += weight * self._count(nxt)
        self._memo[state] = total
        return total

    def count_prefix(self, needs: Sequence[int], outside: Sequence[int]) -> int:
        """Graphs where an edgeless block of vertices with degrees ``needs``
        sits next to vertices with degrees ``outside``."""
        if any(x < 0 for x in needs) or any(x < 0 for x in outside):
            return 0
        if (sum(needs) + sum(outside)) % 2:
            return 0
        n_state = tuple(sorted((x for x in needs if x), reverse=True))
        o_state = tuple(sorted((x for x in outside if x), reverse=True))
        return self._count_prefix(n_state, o_state)

    def _count_prefix(self, needs: State, outside: State) -> int:
        if not needs:
            return self._count(outside)
        key = (needs, outside)
        hit = self._constrained_memo.get(key)
        if hit is not None:
            return hit
        r, rest = needs[0], needs[1:]
        total = 0
        if r <= len(outside) and sum(rest) <= sum(outside) - r:
            for weight, nxt in _distribute(outside, r):
                total += weight * self._count_prefix(rest, nxt)
        self._constrained_memo[key] = total
        return total


@dataclass(frozen=True)
class ExactProbability:
    """An exact dyadic probability ``numerator / 2**exponent``."""

    numerator: int
    exponent: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    @property
    def float_view(self) -> float:
        # Fraction -> float rounds correctly (within half an ulp).
        return float(self.value)

    def log(self) -> float:
        if self.numerator == 0:
            return -math.inf
        return math.log(self.numerator) - self.exponent * math.log(2)

    def __str__(self) -> str:
        return f"{self.numerator}/2^{self.exponent}"

    def to_json(self) -> dict:
        return {"exact": str(self), "numerator": str(self.numerator),
                "exponent": self.exponent, "float": self.float_view}


def regular_degree(k: int) -> int:
    return (k - 1) // 2


def count_by_degree_sequence(degrees: Sequence[int], counter: DegreeCounter | None = None) -> int:
    return (counter or DegreeCounter()).count(degrees)


def _check_profile(k: int, core: Sequence[int]) -> None:
    if k < 1 or k % 2 == 0:
        raise DomainError(f"k={k}: the constrained count needs odd k so that (k-1)/2 is an integer")
    i = len(core)
    if i > k:
        raise DomainError(f"core length {i} exceeds k={k}")
    for x in core:
        if not 0 <= x <= max(i - 1, 0):
            raise DomainError(f"core degree {x} outside [0, {i - 1}]")


def count_constrained(k: int, core: Sequence[int], counter: DegreeCounter | None = None) -> int:
    """Graphs on ``k`` vertices whose first ``len(core)`` vertices are pairwise
    non-adjacent, vertex ``j`` of that prefix has degree ``d - core[j]`` and
    every other vertex has degree ``d = (k-1)/2``.

    Equivalently: the number of ``d``-regular graphs on ``k`` vertices whose
    first ``i`` vertices induce a fixed graph with degree sequence ``core``.
    Zero when ``sum(core)`` is odd.
    """
    _check_profile(k, core)
    if sum(core) % 2:
        return 0
    d = regular_degree(k)
    i = len(core)
    return (counter or DegreeCounter()).count_prefix([d - x for x in core], [d] * (k - i))


def exact_pk(k: int, counter: DegreeCounter | None = None) -> ExactProbability:
    """P[G(k, 1/2) is floor((k-1)/2)-regular], exactly."""
    if k < 1:
        raise DomainError("k must be positive")
    num = (counter or DegreeCounter()).count([regular_degree(k)] * k)
    return ExactProbability(num, math.comb(k, 2))


def core_profiles(i: int, graphical_only: bool = True) -> Iterator[tuple[int, ...]]:
    """Non-decreasing vectors in ``[0, i-1]^i`` with even sum (one per multiset)."""
    for core in combinations_with_replacement(range(max(i, 1)), i):
        if sum(core) % 2 == 0 and (not graphical_only or is_graphical(core)):
            yield core


def exact_pki(k: int, i: int, counter: DegreeCounter | None = None
              ) -> tuple[ExactProbability, tuple[int, ...]]:
    """Max over graphs H on ``i`` vertices of P[G(k,1/2) is (k-1)/2-regular | G[i] = H].

    The conditional probability depends on H only through its degree sequence,
    so the max runs over graphical profiles. Returns the probability and the
    first maximizing profile (non-decreasing order).
    """
    if k < 3 or k % 2 == 0:
        raise DomainError(f"k={k} must be odd and at least 3")
    if not 2 <= i <= k - 1:
        raise DomainError(f"i={i} outside [2, {k - 1}]")
    counter = counter or DegreeCounter()
    best, arg = -1, None
    for core in core_profiles(i):
        c = count_constrained(k, core, counter)
        if c > best:
            best, arg = c, core
    return ExactProbability(best, math.comb(k, 2) - math.comb(i, 2)), arg


def most_probable_degree_sequence(k: int, counter: DegreeCounter | None = None
                                  ) -> tuple[ExactProbability, tuple[int, ...]]:
    """The largest P[G(k,1/2) has degree sequence d] over all (ordered) d."""
    counter = counter or DegreeCounter()
    best, arg = 0, ()
    for d in combinations_with_replacement(range(k), k):
        c = counter.count(d)
        if c > best:
            best, arg = c, d
    return ExactProbability(best, math.comb(k, 2)), arg


def sequence_concentration(k: int, counter: DegreeCounter | None = None) -> tuple[Fraction, int]:
    """Ratio of the most likely degree-sequence probability to the regular one.

    The reference is P[G(k,1/2) is r-regular] at r = floor((k-1)/2) when that
    is positive, else the largest r-regular probability over all r (needed
    when k = 3 mod 4, where p_k = 0). Returns ``(ratio, r)``.
    """
    counter = counter or DegreeCounter()
    top, _ = most_probable_degree_sequence(k, counter)
    r = regular_degree(k)
    ref = counter.count([r] * k)
    if ref == 0:
        for x in range(k):  # smallest r wins ties (r and k-1-r are complementary)
            c = counter.count([x] * k)
            if c > ref:
                ref, r = c, x
    return Fraction(top.numerator, ref), r


def _check_scan(k: int, budget: int) -> int:
    m = math.comb(k, 2)
    if (1 << m) > budget:
        raise BudgetExceeded(f"exhaustive scan of 2^{m} graphs on {k} vertices exceeds budget {budget}")
    return m


def all_graphs(k: int, budget: int = SCAN_BUDGET) -> Iterator[Graph]:
    """Every labeled graph on ``k`` vertices; mask bits in graph6 column order."""
    m = _check_scan(k, budget)
    offsets = [v * (v - 1) // 2 for v in range(k)]
    for mask in range(1 << m):
        rows = [0] * k
        for v in range(1, k):
            col = mask >> offsets[v] & ((1 << v) - 1)
            rows[v] |= col
            u = 0
            while col:
                if col & 1:
                    rows[u] |= 1 << v
                col >>= 1
                u += 1
        yield Graph._unchecked(k, tuple(rows))


def brute_force_count(k: int, predicate: Callable[[Graph], bool], budget: int = SCAN_BUDGET) -> int:
    """Count graphs on ``k`` vertices satisfying ``predicate`` by scanning all of them."""
    return sum(1 for g in all_graphs(k, budget) if predicate(g))


def degree_sequence_histogram(k: int, budget: int = SCAN_BUDGET) -> dict[tuple[int, ...], int]:
    """Exhaustive scan tallying ordered degree sequences of all graphs on ``k`` vertices."""
    m = _check_scan(k, budget)
    masks = np.arange(1 << m, dtype=np.int64)
    degs = np.zeros((1 << m, k), dtype=np.int8)
    for idx, (u, v) in enumerate((u, v) for v in range(1, k) for u in range(v)):
        bit = ((masks >> idx) & 1).astype(np.int8)
        degs[:, u] += bit
        degs[:, v] += bit
    rows, counts = np.unique(degs, axis=0, return_counts=True)
    return {tuple(int(x) for x in r): int(c) for r, c in zip(rows, counts)}


def graphs_with_prefix(k: int, h: Graph, r: int) -> int:
    """Brute force: r-regular graphs on ``k`` vertices whose first ``h.n`` vertices induce ``h``.

    Scans only the edges outside the prefix, so it stays cheap for small prefixes.
    """
    i = h.n
    free = [(u, v) for v in range(k) for u in range(v) if v >= i]
    if (1 << len(free)) > 1 << 26:
        raise BudgetExceeded(f"{len(free)} free pairs is too many to scan")
    base = [0] * k
    base[:i] = h.adj
    base_deg = np.array([row.bit_count() for row in base], dtype=np.int8)
    hits = 0
    chunk = 1 << 20
    total = 1 << len(free)
    for start in range(0, total, chunk):
        masks = np.arange(start, min(total, start + chunk), dtype=np.int64)
        degs = np.tile(base_deg, (len(masks), 1))
        for idx, (u, v) in enumerate(free):
            bit = ((masks >> idx) & 1).astype(np.int8)
            degs[:, u] += bit
            degs[:, v] += bit
        hits += int(np.count_nonzero((degs == r).all(axis=1)))
    return hits


def prefix_tally(k: int, r: int, i: int) -> dict[tuple[int, ...], int]:
    """Enumerate every r-regular graph on ``k`` vertices by backtracking and
    tally the adjacency rows of the induced prefix on vertices ``0..i-1``.

    Independent of the elimination DP; meant as an oracle (k <= 9 or so).
    """
    tally: dict[tuple[int, ...], int] = {}
    residual = [r] * k
    rows = [0] * k

    def rec(v: int) -> None:
        if v == k:
            key = tuple(rows[u] & ((1 << i) - 1) for u in range(i))
            tally[key] = tally.get(key, 0) + 1
            return
        later = [u for u in range(v + 1, k) if residual[u] > 0]
        for nbrs in combinations(later, residual[v]):
            for u in nbrs:
                residual[u] -= 1
                rows[v] |= 1 << u
                rows[u] |= 1 << v
            saved, residual[v] = residual[v], 0
            rec(v + 1)
            residual[v] = saved
            for u in nbrs:
                residual[u] += 1
                rows[v] &= ~(1 << u)
                rows[u] &= ~(1 << v)

    rec(0)
    return tally
