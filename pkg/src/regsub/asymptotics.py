"""Closed-form estimates, evaluated in the log domain.

Every evaluator drops the asymptotic error terms that come without explicit
constants and instead reports the size of the quantity that drives them, so
a caller can judge how far to trust the number. Hypotheses of the form
"x = o(sqrt(k))" are gated by the proxy ``x <= k**PROXY_EXPONENT``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .enumeration import EXACT_K_MAX, DegreeCounter, exact_pk
from .errors import DomainError
from .graph import is_graphical
from .logmath import log_comb, xlogx

PROXY_EXPONENT = 0.49
SHARP_LOG_F = 0.5 * math.log(2) + 0.25  # log(sqrt(2) * e^(1/4))
LAMBDA_RANGE = (1 / 3, 2 / 3)  # closed: the endpoints occur at small k

SHARP = "sharp"
BOUNDED = "bounded"
OUT_OF_RANGE = "out-of-range"


@dataclass(frozen=True)
class LogEstimate:
    log_value: float
    lam: float | None
    max_deviation: float | None
    regime: str
    lam_in_range: bool = True
    drivers: dict = field(default_factory=dict)

    @property
    def value(self) -> float:
        return math.exp(self.log_value)

    def to_json(self) -> dict:
        return {
            "log_value": self.log_value,
            "value": self.value,
            "lambda": self.lam,
            "max_deviation": self.max_deviation,
            "regime": self.regime,
            "lambda_in_range": self.lam_in_range,
            "drivers": dict(self.drivers),
        }


@dataclass(frozen=True)
class ConstrainedProfile:
    """``k`` vertices (odd) with the first ``len(core)`` forming an edgeless
    block whose degree deficits are ``core``."""

    k: int
    core: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "core", tuple(int(x) for x in self.core))
        if self.k < 1 or self.k % 2 == 0:
            raise DomainError(f"k={self.k} must be odd")
        if self.i > self.k:
            raise DomainError(f"core length {self.i} exceeds k={self.k}")

    @property
    def i(self) -> int:
        return len(self.core)

    @property
    def d(self) -> int:
        return (self.k - 1) // 2

    @property
    def in_domain(self) -> bool:
        """Entries in [0, i-1] with even sum."""
        return sum(self.core) % 2 == 0 and all(0 <= x <= self.i - 1 for x in self.core)


def _proxy(k: float, exponent: float = PROXY_EXPONENT) -> float:
    return k ** exponent


def residual_mean(profile: ConstrainedProfile) -> float:
    """Average number of edges an outside vertex receives from the core block."""
    k, i, d = profile.k, profile.i, profile.d
    return sum(d - x for x in profile.core) / (k - i)


def lambda_of(profile: ConstrainedProfile) -> float:
    """Edge density of the graph left on the ``k - i`` outside vertices."""
    k, i = profile.k, profile.i
    if i >= k - 1:
        raise DomainError(f"need i < k - 1, got i={i}, k={k}")
    return (profile.d - residual_mean(profile)) / (k - i - 1)


def estimate_count(degrees: Sequence[int], proxy_exponent: float = PROXY_EXPONENT) -> LogEstimate:
    """Log of the enumeration formula for labeled graphs with degree sequence ``degrees``.

    ``log f + C(k,2) * log(lam^lam (1-lam)^(1-lam)) + sum_j log C(k-1, d_j)``, where
    ``f = sqrt(2) e^(1/4)`` in the sharp regime (all ``|lam*k - d_j| <= k**0.49``)
    and ``f = 1`` otherwise. A density outside [1/3, 2/3] is flagged, not refused.
    """
    k = len(degrees)
    if k < 2:
        raise DomainError("need at least two vertices")
    if any(not 0 <= x <= k - 1 for x in degrees):
        raise DomainError(f"degrees must lie in [0, {k - 1}]")
    total = sum(degrees)
    if total % 2:
        raise DomainError("degree sum is odd")
    lam = total / (k * (k - 1))
    max_dev = max(abs(lam * k - x) for x in degrees)
    in_range = LAMBDA_RANGE[0] <= lam <= LAMBDA_RANGE[1]
    if not in_range:
        regime = OUT_OF_RANGE
    elif max_dev <= _proxy(k, proxy_exponent):
        regime = SHARP
    else:
        regime = BOUNDED
    log_value = (SHARP_LOG_F if regime == SHARP else 0.0)
    log_value += math.comb(k, 2) * (xlogx(lam) + xlogx(1 - lam))
    log_value += sum(log_comb(k - 1, x) for x in degrees)
    return LogEstimate(log_value, lam, max_dev, regime, in_range,
                       {"k": k, "deviation_proxy": _proxy(k, proxy_exponent)})


def estimate_pk(k: int) -> LogEstimate:
    """``log p_k ~ -(k/2) log(pi k / 2)``, with the (1 + o(1))^k factor dropped.

    The dropped factor does not tend to 1: exact/estimate settles near 2.3.
    """
    if k < 3:
        raise DomainError("k must be at least 3")
    r = (k - 1) // 2
    return LogEstimate(-(k / 2) * math.log(math.pi * k / 2), 0.5, abs(k / 2 - r), SHARP,
                       True, {"k": k})


def log_pk(k: int, counter: DegreeCounter | None = None) -> tuple[float, str]:
    """``log p_k``: exact when enumeration is affordable and nonzero, else the estimate."""
    if k < 3 or k <= EXACT_K_MAX:
        p = exact_pk(k, counter)
        if p.numerator:
            return p.log(), "exact"
    return estimate_pk(max(k, 3)).log_value, "estimate"


class PkiBound(NamedTuple):
    log_a: float
    log_b: float
    pk_source: str


def bound_pki(k: int, i: int, counter: DegreeCounter | None = None) -> PkiBound:
    """Two upper bounds for the conditional regularity probability, as logs.

    ``log_a = i log C(k-i, floor((k-i)/2)) - (k-i) i log 2 + log p_{k-i}`` bounds
    the probability itself up to an unspecified constant factor; ``log_b =
    k log(k/(k-i))`` bounds its ratio to ``p_k``, also up to a constant. When
    ``p_{k-i}`` is zero for parity reasons (or too large to enumerate) its
    estimate is used.
    """
    if k < 3 or k % 2 == 0:
        raise DomainError(f"k={k} must be odd and at least 3")
    if not 2 <= i <= k - 1:
        raise DomainError(f"i={i} outside [2, {k - 1}]")
    m = k - i
    lp, source = log_pk(m, counter)
    log_a = i * log_comb(m, m // 2) - m * i * math.log(2) + lp
    return PkiBound(log_a, k * math.log(k / m), source)


@dataclass(frozen=True)
class RatioSpec:
    """A core profile ``d`` and a shift ``s``; the ratio compares ``d`` against ``d - s``."""

    k: int
    d: tuple[int, ...]
    s: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(int(x) for x in self.d))
        object.__setattr__(self, "s", tuple(int(x) for x in self.s))
        if self.k < 3 or self.k % 2 == 0:
            raise DomainError(f"k={self.k} must be odd and at least 3")
        if len(self.d) != len(self.s):
            raise DomainError("d and s must have equal length")
        if self.i >= self.k:
            raise DomainError(f"core length {self.i} must be below k={self.k}")
        for name, vec in (("d", self.d), ("d - s", self.shifted)):
            if sum(vec) % 2 or any(not 0 <= x <= self.i - 1 for x in vec):
                raise DomainError(f"{name} = {vec} is not an even-sum vector in [0, {self.i - 1}]^{self.i}")
        if sum(abs(x) for x in self.s) > self.k ** 0.75:
            raise DomainError(f"sum |s_j| = {sum(abs(x) for x in self.s)} exceeds k^(3/4) = {self.k ** 0.75:.3f}")

    @property
    def i(self) -> int:
        return len(self.d)

    @property
    def shifted(self) -> tuple[int, ...]:
        return tuple(a - b for a, b in zip(self.d, self.s))

    @property
    def d_hat(self) -> float:
        return (self.k - self.i) / 2

    @property
    def delta(self) -> tuple[float, ...]:
        return tuple(x - (self.i - 1) / 2 for x in self.d)


def log_ratio_estimate(spec: RatioSpec) -> float:
    return sum(-2 * dj * sj + sj * sj for dj, sj in zip(spec.delta, spec.s)) / spec.d_hat


def ratio_estimate(spec: RatioSpec) -> float:
    """Estimate of ``N(d) / N(d - s)``: ``exp(sum_j (s_j^2 - 2 delta_j s_j) / d_hat)``."""
    return math.exp(log_ratio_estimate(spec))


def prob_induced(k: int, h_degrees: Sequence[int], proxy_exponent: float = PROXY_EXPONENT) -> LogEstimate:
    """Probability that a uniform ``(k-1)/2``-regular graph on ``k`` vertices
    induces a given graph H (with degrees ``h_degrees``) on its first ``i`` vertices.

    ``2^-C(i,2) * exp(-(2/(k-i)) * sum_j delta_j^2)``, ``delta_j = d_j - (i-1)/2``.
    The dropped correction is ``exp(o(k^-3/4) * sum |delta_j|)``; ``sum |delta_j|``
    is reported in ``drivers``.
    """
    h = tuple(int(x) for x in h_degrees)
    if k < 3 or k % 2 == 0:
        raise DomainError(f"k={k} must be odd and at least 3")
    if not is_graphical(h):
        raise DomainError(f"{h} is not a graphical degree sequence")
    i = len(h)
    if i > _proxy(k, proxy_exponent):
        raise DomainError(f"i={i} exceeds the small-core proxy k^{proxy_exponent} = {_proxy(k, proxy_exponent):.3f}")
    delta = [x - (i - 1) / 2 for x in h]
    log_value = -math.comb(i, 2) * math.log(2) - 2 / (k - i) * math.fsum(x * x for x in delta)
    sum_abs = math.fsum(abs(x) for x in delta)
    lam = lambda_of(ConstrainedProfile(k, h)) if i < k - 1 else None
    return LogEstimate(log_value, lam, max((abs(x) for x in delta), default=0.0), SHARP, True,
                       {"sum_abs_delta": sum_abs, "error_scale": sum_abs * k ** -0.75})


def log_central_binomial_offset(a: int, x: float) -> float:
    """``log C(a, floor(a/2)) - 2 x^2 / a``, approximating ``log C(a, a/2 + x)``.

    The dropped term is of order ``|x|^3 / a^2``.
    """
    if a <= 0:
        raise DomainError("a must be positive")
    if abs(x) > math.sqrt(a):
        raise DomainError(f"|x| = {abs(x)} exceeds sqrt(a) = {math.sqrt(a):.3f}")
    return log_comb(a, a // 2) - 2 * x * x / a
