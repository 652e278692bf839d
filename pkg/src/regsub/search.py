"""Largest induced regular subgraph of a concrete graph.

``max_induced_regular_exact`` is a branch and bound over vertex inclusion,
run once per regularity degree ``r``. ``max_induced_regular_heuristic`` is a
seeded local search that only ever produces lower-bound witnesses.

Ties among maximum-size answers go to the smallest ``r``, then to the
lexicographically smallest sorted vertex list.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .graph import Graph, induced_subgraph, is_regular
from .rng import Rng

DEFAULT_NODE_BUDGET = 5_000_000
DEFAULT_ITERATIONS = 5_000
ITERATIONS_PER_RESTART = 100
TABU_TENURE = 3
R_WINDOW = 2


@dataclass(frozen=True)
class SearchResult:
    subset: tuple[int, ...]
    r: int
    size: int
    optimal: bool
    nodes_expanded: int

    def to_json(self) -> dict:
        return {"subset": list(self.subset), "r": self.r, "size": self.size,
                "optimal": self.optimal, "nodes_expanded": self.nodes_expanded}


def _verified(g: Graph, subset, r: int, optimal: bool, nodes: int) -> SearchResult:
    subset = tuple(sorted(subset))
    if subset and not is_regular(induced_subgraph(g, subset), r):
        raise AssertionError(f"subset {subset} does not induce an {r}-regular graph")
    return SearchResult(subset, r, len(subset), optimal, nodes)


class _OutOfBudget(Exception):
    pass


def max_induced_regular_exact(g: Graph, node_budget: int = DEFAULT_NODE_BUDGET) -> SearchResult:
    """Maximum-cardinality vertex set inducing a regular graph.

    For each ``r`` the search decides vertices in increasing label order,
    include-branch first, so the first set found at a given size is the
    lexicographically smallest one. A partial set ``S`` with undecided pool
    ``R`` is pruned when some ``u`` in ``S`` already has more than ``r``
    neighbours in ``S``, can no longer reach ``r``, or caps the final size
    below the incumbent (``|S_final| = r + 1 + non-neighbours of u``).
    Exceeding ``node_budget`` returns the incumbent with ``optimal=False``.
    """
    n = g.n
    if n == 0:
        return SearchResult((), 0, 0, True, 0)
    adj = g.adj
    full = (1 << n) - 1
    best = {"size": 1, "set": (0,), "r": 0}
    nodes = 0

    def dfs(members: list[int], smask: int, pool: int, r: int):
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise _OutOfBudget
        # Undecided vertices that already exceed r inside S can never join.
        cand = 0
        p = pool
        while p:
            low = p & -p
            w = low.bit_length() - 1
            if (adj[w] & smask).bit_count() <= r:
                cand |= low
            p ^= low
        ub = len(members) + cand.bit_count()
        regular = True
        for u in members:
            ds = (adj[u] & smask).bit_count()
            if ds + (adj[u] & cand).bit_count() < r:
                return
            if ds != r:
                regular = False
            non_adj = ~adj[u] & full & ~(1 << u)
            ub = min(ub, r + 1 + (non_adj & smask).bit_count() + (non_adj & cand).bit_count())
        if regular and members and len(members) > best["size"]:
            best.update(size=len(members), set=tuple(members), r=r)
        if ub <= best["size"] or not cand:
            return
        low = cand & -cand
        w = low.bit_length() - 1
        rest = cand ^ low
        wmask = smask | low
        if all((adj[u] & wmask).bit_count() <= r for u in members) and (adj[w] & smask).bit_count() <= r:
            members.append(w)
            dfs(members, wmask, rest, r)
            members.pop()
        dfs(members, smask, rest, r)

    try:
        for r in range(n):
            dfs([], 0, full, r)
    except _OutOfBudget:
        return _verified(g, best["set"], best["r"], False, nodes - 1)
    return _verified(g, best["set"], best["r"], True, nodes)


def max_induced_regular_bruteforce(g: Graph) -> SearchResult:
    """Scan all 2^n subsets; same tie rule as the exact search. Small ``n`` only."""
    n = g.n
    best = ((), 0)
    for size in range(n, 0, -1):
        hits = []
        for subset in combinations(range(n), size):
            h = induced_subgraph(g, subset)
            if is_regular(h):
                r = h.adj[0].bit_count()
                hits.append((r, subset))
        if hits:
            best = min(hits)[::-1]
            break
    return _verified(g, best[0], best[1], True, 1 << n)


def _adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=np.int32)
    for v, row in enumerate(g.adj):
        for u in range(g.n):
            if row >> u & 1:
                a[v, u] = 1
    return a


def _greedy_kernel(a: np.ndarray, r: int, rng: Rng) -> np.ndarray:
    """Random-order maximal set in which every induced degree stays at most ``r``."""
    n = a.shape[0]
    order = list(range(n))
    rng.shuffle(order)
    inset = np.zeros(n, dtype=bool)
    deg = np.zeros(n, dtype=np.int32)
    for w in order:
        if deg[w] <= r and np.all(deg[inset] + a[inset, w] <= r):
            inset[w] = True
            deg += a[:, w]
    return inset


def _pick(scores: np.ndarray, rng: Rng) -> tuple[int, ...]:
    """Index of a minimal entry, ties broken by the stream."""
    flat = np.flatnonzero(scores == scores.min())
    return np.unravel_index(int(flat[rng.below(len(flat))]), scores.shape)


def max_induced_regular_heuristic(g: Graph, seed: int,
                                  iteration_budget: int = DEFAULT_ITERATIONS) -> SearchResult:
    """Seeded local search for a large induced regular subgraph (never claims optimality).

    ``iteration_budget // 100`` restarts, each fixing a degree ``r`` and
    starting from a greedy kernel with all induced degrees at most ``r``.
    Three restarts in four draw ``r`` near half the incumbent size (where
    large regular sets of a dense graph live); the fourth draws any ``r``. A state is scored by the
    number of members whose induced degree differs from ``r``. Zero-score
    states are recorded and then grown by the best add move; otherwise the
    best swap is taken (plateaus allowed, recently removed vertices tabu),
    falling back to a removal when that scores strictly better than any swap.
    """
    n = g.n
    if n == 0:
        return SearchResult((), 0, 0, False, 0)
    a = _adjacency_matrix(g)
    rng = Rng(seed)
    best_set, best_r = (0,), 0
    iterations = 0

    for restart in range(iteration_budget // ITERATIONS_PER_RESTART):
        if restart % 4 == 3:
            r = rng.below(n)
        else:
            mid = len(best_set) // 2
            lo, hi = max(0, mid - R_WINDOW), min(n - 1, mid + R_WINDOW)
            r = lo + rng.below(hi - lo + 1)
        inset = _greedy_kernel(a, r, rng)
        tabu: dict[int, int] = {}
        for step in range(ITERATIONS_PER_RESTART):
            iterations += 1
            members = np.flatnonzero(inset)
            outside = np.flatnonzero(~inset)
            deg = a[:, inset].sum(axis=1)
            score = int(np.count_nonzero(deg[members] != r))
            if score == 0 and len(members) > len(best_set):
                best_set, best_r = tuple(int(x) for x in members), r
            if len(outside) == 0 and score == 0:
                break
            allowed = np.array([tabu.get(int(w), -1) < step for w in outside], dtype=bool)
            if score == 0:
                if not allowed.any():
                    break
                sub = a[np.ix_(members, outside)]
                add = (deg[members][:, None] + sub != r).sum(axis=0) + (deg[outside] != r)
                add = np.where(allowed, add, np.iinfo(np.int32).max)
                (j,) = _pick(add, rng)
                inset[outside[j]] = True
                continue
            # swap u (in) for w (out): members x != u see deg[x] - a[x,u] + a[x,w]
            a_mm = a[np.ix_(members, members)]
            a_mo = a[np.ix_(members, outside)]
            new = deg[members][:, None, None] - a_mm[:, :, None] + a_mo[:, None, :]
            bad = new != r
            bad[np.arange(len(members)), np.arange(len(members)), :] = False
            swap = bad.sum(axis=0) + (deg[outside][None, :] - a_mo != r)
            remove = (deg[members][:, None] - a_mm != r)
            remove[np.arange(len(members)), np.arange(len(members))] = False
            remove_scores = remove.sum(axis=0)
            if len(outside) and allowed.any():
                swap = np.where(allowed[None, :], swap, np.iinfo(np.int32).max)
                best_swap = int(swap.min())
            else:
                best_swap = np.iinfo(np.int32).max
            no_swap = best_swap == np.iinfo(np.int32).max
            if no_swap or int(remove_scores.min()) < min(best_swap, score):
                (ui,) = _pick(remove_scores, rng)
                inset[members[ui]] = False
                tabu[int(members[ui])] = step + TABU_TENURE
            else:
                ui, wi = _pick(swap, rng)
                inset[members[ui]] = False
                inset[outside[wi]] = True
                tabu[int(members[ui])] = step + TABU_TENURE
    return _verified(g, best_set, best_r, False, iterations)
