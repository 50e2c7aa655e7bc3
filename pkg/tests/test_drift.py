import csv

import numpy as np
import pytest

from localdrift import ConfigurationError, DriftSchedule, Slice, Subgroup, label_with_drift
from localdrift import make_stream, mix_probability, sample_records
from localdrift.drift import label_records_with_drift, write_stream_csv
from localdrift.stream import classify_records

AGE_BAND = Subgroup((Slice("age", 20, 40),))


@pytest.mark.parametrize("t,p", [(100, 0.5), (200, 0.98201), (0, 0.01799)])
def test_sigmoid_values(t, p):
    assert mix_probability(t, 100, 100) == pytest.approx(p, abs=1e-5)


def test_sigmoid_monotone():
    p = mix_probability(np.arange(200), 100, 100)
    assert np.all(np.diff(p) > 0)


def test_zero_width_rejected():
    with pytest.raises(ConfigurationError):
        mix_probability(1, 100, 0)


def test_schedule_validation():
    with pytest.raises(ConfigurationError):
        DriftSchedule(3, 3)
    with pytest.raises(ConfigurationError):
        DriftSchedule(3, 11)
    DriftSchedule(3, enabled=False)


def _disagreeing(n=20_000, seed=0):
    X = sample_records(n, np.random.default_rng(seed))
    return X[classify_records(X, 0) != classify_records(X, 2)]


def test_outside_subgroup_never_drifts():
    X = _disagreeing()
    sched = DriftSchedule(0, 2, subgroup=AGE_BAND)
    y, inside = label_records_with_drift(X, 10_000, sched, np.random.default_rng(1))
    assert np.array_equal(y[~inside], classify_records(X[~inside], 0))
    assert np.array_equal(y[inside], classify_records(X[inside], 2))


def test_half_drifted_at_center():
    X = _disagreeing(60_000)
    sched = DriftSchedule(0, 2, center=100, width=100)
    y, _ = label_records_with_drift(X, 100, sched, np.random.default_rng(2))
    frac = np.mean(y == classify_records(X, 2))
    assert frac == pytest.approx(0.5, abs=0.015)


def test_disabled_is_stationary():
    X = sample_records(2000, np.random.default_rng(3))
    sched = DriftSchedule(4, 7, enabled=False)
    for t in (0, 100, 10_000):
        y, _ = label_records_with_drift(X, t, sched, np.random.default_rng(t))
        assert np.array_equal(y, classify_records(X, 4))


def test_single_record_api():
    X = sample_records(1, np.random.default_rng(0))
    sched = DriftSchedule(0, 1, enabled=False)
    assert label_with_drift(X[0], 0, sched) == classify_records(X, 0)[0]


def test_stream_shape_and_order():
    sched = DriftSchedule(1, 5, subgroup=AGE_BAND)
    batches = list(make_stream(sched, batch_count=5, batch_size=30, random_state=0))
    assert [b.t for b in batches] == list(range(5))
    assert all(b.X.shape == (30, 9) and b.y.shape == (30,) for b in batches)


def test_stream_deterministic_and_csv(tmp_path):
    sched = DriftSchedule(1, 5, subgroup=AGE_BAND)
    for name in ("a.csv", "b.csv"):
        write_stream_csv(make_stream(sched, 3, 20, random_state=9), tmp_path / name)
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    with open(tmp_path / "a.csv") as fh:
        rows = list(csv.reader(fh))
    assert len(rows) == 61 and rows[0][0] == "batch"


def test_late_stream_follows_drift_concept_inside_subgroup():
    sched = DriftSchedule(0, 2, subgroup=AGE_BAND, center=5, width=1)
    last = list(make_stream(sched, 40, 2000, perturbation=0.0, random_state=4))[-1]
    inside = last.in_subgroup
    assert np.array_equal(last.y[inside], classify_records(last.X[inside], 2))
    assert np.array_equal(last.y[~inside], classify_records(last.X[~inside], 0))
