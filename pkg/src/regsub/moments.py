"""First and second moment of the number X of induced (k-1)/2-regular k-sets in G(n, 1/2).

``variance_bound_profile`` evaluates, row by row over the overlap size ``i``,

    Var[X] / E[X]^2 <= 1/E[X] + sum_i C(k,i) C(n-k,k-i) / C(n,k) * (p_{k,i}/p_k [- 1])

with ``p_{k,i}/p_k`` taken either exactly (small ``k``) or from the overlap
bounds (large ``k``). Overlaps ``2 <= i <= t`` form the "band"
where the conditional probability is asymptotically ``p_k``; in exact mode the
band rows carry the measured ``|p_{k,i}/p_k - 1|``, in bound mode they are
reported but left out of the total, since their contribution has no explicit
rate beyond "o(1) times the band's binomial mass".
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass, field

from .asymptotics import bound_pki, estimate_pk
from .enumeration import EXACT_K_MAX, DegreeCounter, exact_pk, exact_pki
from .errors import BudgetExceeded, DomainError
from .logmath import log_comb, logsumexp

EXACT = "exact"
ASYMPTOTIC = "asymptotic"
LEMMA_BOUND = "lemma-bound"

BAND = "band"
CASE1 = "case1"
CASE2 = "case2"
CASE3 = "case3"

CONSTANT_WINDOW = math.log(10)

CSV_COLUMNS = [
    "i", "case", "log_binomial_ratio", "log_pki_ratio", "pki_source", "log_g",
    "log_contribution", "cov_term", "case1_chain", "constant_sensitive",
]


def _float_cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _check_parity(k: int) -> None:
    if k % 4 == 3:
        raise DomainError(
            f"k={k} is 3 mod 4: k vertices of odd degree (k-1)/2 have an odd degree sum, "
            "so p_k = 0 and E[X] = 0")


def log_expected_count(n: int, k: int, mode: str = ASYMPTOTIC,
                       counter: DegreeCounter | None = None) -> float:
    """``log E[X] = log C(n,k) + log p_k`` with ``p_k`` exact or estimated."""
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got k={k}, n={n}")
    if mode == EXACT:
        if k > EXACT_K_MAX:
            raise BudgetExceeded(f"exact p_k is limited to k <= {EXACT_K_MAX}; use asymptotic mode")
        _check_parity(k)
        lp = exact_pk(k, counter).log()
    elif mode == ASYMPTOTIC:
        lp = estimate_pk(k).log_value if k >= 3 else exact_pk(k).log()
    else:
        raise DomainError(f"unknown mode {mode!r}")
    return log_comb(n, k) + lp


def choose_threshold(n: int, k: int) -> int:
    """Overlap threshold between the fences ``k^2/n`` and ``sqrt(k)``.

    ``t = ceil(sqrt(max(k^2/n, 1) * sqrt(k)))``, clamped to ``[2, k-1]``.
    """
    if k < 3:
        raise DomainError("k must be at least 3")
    lo, hi = k * k / n, math.sqrt(k)
    if lo >= hi:
        raise DomainError(f"fences cross: k^2/n = {lo:.4g} >= sqrt(k) = {hi:.4g}; outside the regime k = o(n^(2/3))")
    t = math.ceil(math.sqrt(max(lo, 1.0) * hi))
    return min(max(t, 2), k - 1)


def case_of(i: int, k: int, t: int | None) -> str:
    if t is not None and i <= t:
        return BAND
    if i <= k // 2:
        return CASE1
    if i <= math.ceil(k - k / math.log(k)):
        return CASE2
    return CASE3


@dataclass
class MomentRow:
    i: int
    case: str
    log_binomial_ratio: float
    log_pki_ratio: float
    pki_source: str
    log_g: float
    log_contribution: float
    cov_term: float | None = None
    case1_chain: float | None = None
    constant_sensitive: bool = False


@dataclass
class MomentReport:
    n: int
    k: int
    mode: str
    log_ex: float
    t: int | None
    rows: list[MomentRow] = field(default_factory=list)
    log_variance_ratio_bound: float = math.inf
    log_band_mass: float = -math.inf

    @property
    def variance_ratio_bound(self) -> float:
        return math.exp(min(self.log_variance_ratio_bound, 700.0))

    def to_json(self) -> dict:
        out = asdict(self)
        out["variance_ratio_bound"] = self.variance_ratio_bound
        return _jsonable(out)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for row in self.rows:
            w.writerow([_float_cell(getattr(row, c)) for c in CSV_COLUMNS])
        return buf.getvalue()


def _jsonable(obj):
    # JSON has no infinities; emit them as strings.
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_jsonable(v) for v in obj]
    return obj


def variance_bound_profile(n: int, k: int, mode: str = LEMMA_BOUND,
                           counter: DegreeCounter | None = None) -> MomentReport:
    """Per-overlap breakdown of the variance-ratio bound; see the module docstring.

    ``mode="exact"`` uses exact conditional probabilities (needs small ``k`` with
    ``p_k > 0``). ``mode="lemma-bound"`` uses ``p_{k,i}/p_k <= exp(k log(k/(k-i)))``
    with the unspecified constant set to 1, and the trivial ``p_{k,i} <= 1`` for
    the largest overlaps; rows where a constant factor of 10 could matter are
    flagged ``constant_sensitive``.
    """
    if n < k:
        raise DomainError(f"n={n} is smaller than k={k}")
    if k < 3 or k % 2 == 0:
        raise DomainError(f"k={k} must be odd and at least 3")
    if mode not in (EXACT, LEMMA_BOUND):
        raise DomainError(f"unknown mode {mode!r}")
    counter = counter or DegreeCounter()
    if mode == EXACT:
        log_ex = log_expected_count(n, k, EXACT, counter)
        pk = exact_pk(k, counter)
        log_pk = pk.log()
    else:
        log_ex = log_expected_count(n, k, ASYMPTOTIC)
        log_pk = log_ex - log_comb(n, k)
    try:
        t = choose_threshold(n, k)
    except DomainError:
        t = None

    log_cn = log_comb(n, k)
    rows = []
    for i in range(2, k):
        lbr = log_comb(k, i) + log_comb(n - k, k - i) - log_cn
        case = case_of(i, k, t)
        row = MomentRow(i, case, lbr, 0.0, "", 0.0, -math.inf)
        if mode == EXACT:
            pki, _ = exact_pki(k, i, counter)
            ratio = pki.value / pk.value
            row.log_pki_ratio = math.log(ratio)
            row.pki_source = "exact"
            row.cov_term = math.exp(lbr) * float(ratio - 1) if lbr > -math.inf else 0.0
            excess = abs(float(ratio - 1))
            row.log_g = lbr + row.log_pki_ratio
            if case == BAND:
                row.log_contribution = lbr + math.log(excess) if excess > 0 else -math.inf
            else:
                row.log_contribution = row.log_g
        else:
            if case == CASE3:
                row.log_pki_ratio, row.pki_source = -log_pk, "trivial"
            else:
                row.log_pki_ratio, row.pki_source = bound_pki(k, i, counter).log_b, "log-ratio"
            row.log_g = lbr + row.log_pki_ratio
            if case != BAND:
                row.log_contribution = row.log_g
                row.constant_sensitive = abs(row.log_g) <= CONSTANT_WINDOW
        if case == CASE1:
            row.case1_chain = i * math.log(3 * math.e ** 2 * k * k / (i * n))
        rows.append(row)

    total = logsumexp([-log_ex] + [r.log_contribution for r in rows])
    band_mass = logsumexp(r.log_binomial_ratio for r in rows if r.case == BAND)
    return MomentReport(n, k, mode, log_ex, t, rows, total, band_mass)


def _log_tail_term(n: int, k: int) -> float:
    # log[(e n / k)^k * k * (pi k / 2)^(-k/2)]
    return k * (1 + math.log(n) - math.log(k)) + math.log(k) - 0.5 * k * math.log(math.pi * k / 2)


def upper_bound_tail(n: int, k0: int, rel_tol: float = 1e-30) -> float:
    """Log of ``sum_{k0 <= k <= n} (e n/k)^k k (pi k/2)^(-k/2)``.

    The summand is log-concave in ``k``, so the sum stops once terms are past
    their peak and below ``rel_tol`` times the running total.
    """
    if k0 < 3:
        raise DomainError("k0 must be at least 3")
    if k0 > n:
        return -math.inf
    cutoff = math.log(rel_tol)
    running = -math.inf
    prev = -math.inf
    for k in range(k0, n + 1):
        term = _log_tail_term(n, k)
        running = logsumexp([running, term])
        if term < prev and term - running < cutoff:
            break
        prev = term
    return running
