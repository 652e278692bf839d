"""Log-domain helpers."""

from __future__ import annotations

import math
from typing import Iterable

_EXACT_COMB_LIMIT = 5000


def log_comb(n: int, k: int) -> float:
    """Natural log of C(n, k); ``-inf`` when the coefficient is zero."""
    if k < 0 or k > n or n < 0:
        return -math.inf
    if n <= _EXACT_COMB_LIMIT:
        return math.log(math.comb(n, k))
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def xlogx(x: float) -> float:
    return 0.0 if x == 0 else x * math.log(x)


def logsumexp(values: Iterable[float]) -> float:
    vals = [v for v in values if v != -math.inf]
    if not vals:
        return -math.inf
    top = max(vals)
    if top == math.inf:
        return math.inf
    return top + math.log(math.fsum(math.exp(v - top) for v in vals))
