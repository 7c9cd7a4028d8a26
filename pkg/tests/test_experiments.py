import csv
import io
import random
import statistics

import pytest
from hypothesis import given
from hypothesis import strategies as st

from grsq.exact import bitwidth_rat
from grsq.experiments import (CSV_HEADER, ExperimentConfig, loglog_slope, run_stats,
                              runtime_trend, sample_rational, stats_csv, summarize)


def test_sample_rational_one_bit():
    rng = random.Random(0)
    assert {sample_rational(1, rng) for _ in range(200)} == {1, -1}


@given(st.integers(1, 200), st.integers(0, 2**64 - 1))
def test_sample_rational_width(t, seed):
    x = sample_rational(t, random.Random(seed))
    assert x != 0 and bitwidth_rat(x) <= t


def test_sample_rational_reproducible():
    a = [sample_rational(100, random.Random(42)) for _ in range(3)]
    b = [sample_rational(100, random.Random(42)) for _ in range(3)]
    assert a == b
    with pytest.raises(ValueError):
        sample_rational(0, random.Random(0))


@pytest.mark.parametrize("kwargs", [
    dict(trials=0), dict(n_values=(3,), k=3), dict(n_values=(2,)),
    dict(preset="custom"), dict(alpha_choice="custom")])
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        ExperimentConfig(**kwargs)


def _parse(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], [r for r in rows[1:] if r[2] != "mean"], [r for r in rows[1:] if r[2] == "mean"]


def test_stats_csv_shape_and_means():
    cfg = ExperimentConfig(trials=5, n_values=(9, 12), info_bits=20, decode=True)
    header, trials, means = _parse(stats_csv(run_stats(cfg)))
    assert tuple(header) == CSV_HEADER
    assert len(trials) == 10 and len(means) == 2
    assert all(r[9] == "1" for r in trials)
    for m in means:
        grp = [r for r in trials if r[0] == m[0]]
        assert float(m[4]) == pytest.approx(statistics.fmean(int(r[4]) for r in grp), abs=1e-6)
        assert float(m[3]) == pytest.approx(statistics.fmean(int(r[3]) for r in grp), abs=1e-6)
        assert float(m[5]) == pytest.approx(statistics.fmean(int(r[5]) for r in grp), abs=1e-6)


def test_stats_deterministic_and_order_independent():
    cfg = ExperimentConfig(trials=4, n_values=(9, 15), info_bits=30, decode=True, seed=9)
    a = stats_csv(run_stats(cfg))
    assert a == stats_csv(run_stats(cfg))
    rev = ExperimentConfig(trials=4, n_values=(15, 9), info_bits=30, decode=True, seed=9)
    assert stats_csv(run_stats(rev)) == a
    other = ExperimentConfig(trials=4, n_values=(9, 15), info_bits=30, decode=True, seed=10)
    assert stats_csv(run_stats(other)) != a


def test_measured_info_width_is_reported():
    rows = run_stats(ExperimentConfig(trials=30, n_values=(6,), info_bits=3))
    assert all(1 <= r.lambda_u <= 3 for r in rows)
    assert summarize(rows)[0].trials == 30


def test_loglog_slope():
    assert loglog_slope([1, 2, 4], [3, 24, 192]) == pytest.approx(3)
    assert loglog_slope([5], [1]) == 0.0


def test_runtime_trend_small():
    res = runtime_trend(ExperimentConfig(trials=1, n_values=(8, 16), preset="v1"))
    assert all(p.all_ok for p in res.points)
    assert res.to_csv().splitlines()[0] == "n,k,tau,mean_time_us,mean_time_us_clean,all_ok"
    assert res.slope < 9
