"""Reproducible sweeps over G(n, 1/2).

A sweep samples ``trials`` graphs per ``n``, each from the seed
``derive_seed(config.seed, n, trial)``, finds its largest induced regular
subgraph and writes one CSV row per ``(n, trial)``. Rows are emitted in
``(n, trial)`` order whatever the worker count (``REGSUB_WORKERS``), so equal
configs give byte-identical CSV.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields

from .enumeration import EXACT_K_MAX
from .errors import DomainError
from .graph import MAX_VERTICES, sample_gnp
from .moments import ASYMPTOTIC, EXACT, log_expected_count, variance_bound_profile
from .rng import check_seed, derive_seed
from .search import (DEFAULT_ITERATIONS, DEFAULT_NODE_BUDGET, max_induced_regular_exact,
                     max_induced_regular_heuristic)

SWEEP_COLUMNS = ["n", "trial", "seed", "observed_max_size", "observed_r", "optimal",
                 "bound_2n23", "log_ex"]
MOMENT_COLUMNS = ["n", "k", "t", "log_ex", "log_variance_ratio_bound", "log_band_mass"]
WORKERS_ENV = "REGSUB_WORKERS"
DEFAULT_EXACT_CAP = 26

COMMANDS = ("sweep", "moments")
SEARCH_MODES = ("auto", "exact", "heuristic")


class ConfigError(DomainError):
    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass
class ExperimentConfig:
    command: str = "sweep"
    n_range: list[int] = field(default_factory=lambda: [20])
    k_range: list[int] = field(default_factory=list)
    trials: int = 1
    seed: int = 0
    ex_mode: str = ASYMPTOTIC
    search_mode: str = "auto"
    exact_cap: int = DEFAULT_EXACT_CAP
    node_budget: int = DEFAULT_NODE_BUDGET
    iteration_budget: int = DEFAULT_ITERATIONS
    output: str | None = None

    def validate(self) -> ExperimentConfig:
        if self.command not in COMMANDS:
            raise ConfigError("command", f"must be one of {COMMANDS}")
        if not self.n_range:
            raise ConfigError("n_range", "must be non-empty")
        if self.command == "moments" and not self.k_range:
            raise ConfigError("k_range", "must be non-empty for the moments command")
        if self.trials < 1:
            raise ConfigError("trials", "must be at least 1")
        try:
            check_seed(self.seed)
        except ValueError as exc:
            raise ConfigError("seed", str(exc)) from None
        if self.ex_mode not in (ASYMPTOTIC, EXACT):
            raise ConfigError("ex_mode", f"must be {ASYMPTOTIC!r} or {EXACT!r}")
        if self.search_mode not in SEARCH_MODES:
            raise ConfigError("search_mode", f"must be one of {SEARCH_MODES}")
        if self.command == "sweep":
            for n in self.n_range:
                if not 1 <= n <= MAX_VERTICES:
                    raise ConfigError("n_range", f"n={n} outside [1, {MAX_VERTICES}]")
                if self.search_mode == "exact" and n > self.exact_cap:
                    raise ConfigError("n_range", f"exact search requested for n={n} above exact_cap={self.exact_cap}")
        return self

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> ExperimentConfig:
        raw = json.loads(text)
        known = {f.name for f in fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(sorted(unknown)[0], "unknown field")
        return cls(**raw)


@dataclass(frozen=True)
class SweepRow:
    n: int
    trial: int
    seed: int
    observed_max_size: int
    observed_r: int
    optimal: bool
    bound_2n23: float
    log_ex: float

    def cells(self) -> list[str]:
        return [str(self.n), str(self.trial), str(self.seed), str(self.observed_max_size),
                str(self.observed_r), "true" if self.optimal else "false",
                format_float(self.bound_2n23), format_float(self.log_ex)]


def format_float(x: float) -> str:
    """17 significant digits, locale-free; non-finite values spelled out."""
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def bound_2n23(n: int) -> float:
    return 2 * n ** (2 / 3)


def nearest_feasible_k(size: int, n: int) -> int:
    """Closest ``k = 1 (mod 4)`` to ``size`` within ``[1, n]``, ties to the smaller.

    Those are the odd ``k`` for which a ``(k-1)/2``-regular graph exists.
    """
    below = size - (size - 1) % 4
    above = below + 4
    if below < 1:
        k = 1
    elif above <= n and above - size < size - below:
        k = above
    else:
        k = below
    return min(k, n - (n - 1) % 4)


def _sweep_task(args) -> SweepRow:
    config, n, trial = args
    seed = derive_seed(config.seed, n, trial)
    g = sample_gnp(n, 0.5, seed)
    use_exact = config.search_mode == "exact" or (config.search_mode == "auto" and n <= config.exact_cap)
    if use_exact:
        res = max_induced_regular_exact(g, config.node_budget)
    else:
        res = max_induced_regular_heuristic(g, seed, config.iteration_budget)
    k = nearest_feasible_k(res.size, n)
    mode = config.ex_mode if k <= EXACT_K_MAX else ASYMPTOTIC
    log_ex = log_expected_count(n, k, mode)
    return SweepRow(n, trial, seed, res.size, res.r, res.optimal, bound_2n23(n), log_ex)


def _workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def run_sweep(config: ExperimentConfig) -> list[SweepRow]:
    config.validate()
    if config.command != "sweep":
        raise ConfigError("command", "run_sweep needs command 'sweep'")
    tasks = [(config, n, t) for n in config.n_range for t in range(config.trials)]
    workers = _workers()
    if workers == 1:
        return [_sweep_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_sweep_task, tasks))


def sweep_csv(rows: list[SweepRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for row in rows:
        w.writerow(row.cells())
    return buf.getvalue()


def run_moments(config: ExperimentConfig) -> str:
    """CSV summary of the variance-ratio bound over ``n_range x k_range``."""
    config.validate()
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(MOMENT_COLUMNS)
    for n in config.n_range:
        for k in config.k_range:
            rep = variance_bound_profile(n, k, "exact" if config.ex_mode == EXACT else "lemma-bound")
            w.writerow([n, k, "" if rep.t is None else rep.t, format_float(rep.log_ex),
                        format_float(rep.log_variance_ratio_bound), format_float(rep.log_band_mass)])
    return buf.getvalue()


def write_text(path: str, text: str) -> None:
    with open(path, "w", newline="", encoding="ascii") as fh:
        fh.write(text)
