from __future__ import annotations

import csv
import io
import math

import pytest
from hypothesis import given, strategies as st

from regsub.experiments import (SWEEP_COLUMNS, WORKERS_ENV, ConfigError, ExperimentConfig,
                                bound_2n23, format_float, nearest_feasible_k, run_moments,
                                run_sweep, sweep_csv)

GOLDEN_HEADER = "n,trial,seed,observed_max_size,observed_r,optimal,bound_2n23,log_ex"
GOLDEN_ROW = "20,0,3987472828428086646,10,3,true,14.736125994561545,0.11184836298259526"


def parse(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_golden_header_and_row():
    text = sweep_csv(run_sweep(ExperimentConfig(n_range=[20], trials=2, seed=7)))
    lines = text.splitlines()
    assert lines[0] == GOLDEN_HEADER == ",".join(SWEEP_COLUMNS)
    assert lines[1] == GOLDEN_ROW
    assert len(lines) == 3


def test_byte_identical_reruns_and_workers(monkeypatch):
    cfg = ExperimentConfig(n_range=[12, 20, 30], trials=3, seed=11)
    first = sweep_csv(run_sweep(cfg))
    assert sweep_csv(run_sweep(cfg)) == first
    monkeypatch.setenv(WORKERS_ENV, "3")
    assert sweep_csv(run_sweep(cfg)) == first


def test_rows_consistent():
    rows = run_sweep(ExperimentConfig(n_range=[10, 28], trials=4, seed=1))
    assert [(r.n, r.trial) for r in rows] == [(n, t) for n in (10, 28) for t in range(4)]
    for r in rows:
        assert r.bound_2n23 == bound_2n23(r.n)
        assert r.optimal == (r.n <= 26)
    text = sweep_csv(rows)
    for rec in parse(text):
        assert float(rec["bound_2n23"]) == bound_2n23(int(rec["n"]))
    assert bound_2n23(20) == pytest.approx(14.736, abs=1e-3)


def test_numeric_cells_round_trip():
    for x in (0.1, 1 / 3, math.pi * 1e-300, 2.0**70, -7.25):
        assert float(format_float(x)) == x
    assert format_float(float("-inf")) == "-inf"


def test_config_round_trip():
    cfg = ExperimentConfig(command="moments", n_range=[10**6], k_range=[101, 201], trials=3,
                           seed=2**63 + 5, ex_mode="asymptotic", search_mode="heuristic",
                           output="out.csv")
    assert ExperimentConfig.from_json(cfg.to_json()) == cfg


@given(st.builds(ExperimentConfig,
                 n_range=st.lists(st.integers(1, 64), min_size=1, max_size=5),
                 trials=st.integers(1, 100), seed=st.integers(0, 2**64 - 1),
                 search_mode=st.sampled_from(["auto", "heuristic"]),
                 output=st.none() | st.text(max_size=20)))
def test_config_round_trip_property(cfg):
    assert ExperimentConfig.from_json(cfg.to_json()) == cfg


@pytest.mark.parametrize("kwargs, field", [
    ({"trials": 0}, "trials"),
    ({"n_range": []}, "n_range"),
    ({"n_range": [65]}, "n_range"),
    ({"seed": -1}, "seed"),
    ({"command": "plot"}, "command"),
    ({"search_mode": "exact", "n_range": [30]}, "n_range"),
    ({"command": "moments"}, "k_range"),
])
def test_config_errors_name_the_field(kwargs, field):
    with pytest.raises(ConfigError) as err:
        ExperimentConfig(**kwargs).validate()
    assert err.value.field == field
    assert field in str(err.value)


def test_unknown_config_key():
    with pytest.raises(ConfigError) as err:
        ExperimentConfig.from_json('{"trails": 3}')
    assert err.value.field == "trails"


def test_nearest_feasible_k():
    assert [nearest_feasible_k(s, 64) for s in (1, 2, 3, 4, 5, 8, 10, 11, 12)] == \
        [1, 1, 1, 5, 5, 9, 9, 9, 13]
    assert nearest_feasible_k(12, 12) == 9


def test_moments_sweep():
    cfg = ExperimentConfig(command="moments", n_range=[10**6], k_range=[101, 501])
    rows = parse(run_moments(cfg))
    assert [r["k"] for r in rows] == ["101", "501"]
    assert float(rows[0]["log_variance_ratio_bound"]) < float(rows[1]["log_variance_ratio_bound"])
