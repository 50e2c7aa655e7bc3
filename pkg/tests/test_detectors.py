import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sklearn.base import clone

from localdrift import DDM, EDDM, FHDDM, HDDM, ConfigurationError, DetectorStatus, make_detector
from localdrift.detectors import DETECTORS

KINDS = sorted(DETECTORS)
CHANGE = 5_000
MAX_DELAY = 2_000


def bernoulli(p, n, seed):
    return (np.random.default_rng(seed).random(n) < p).astype(np.int8)


def step_stream(seed, before=0.1, after=0.5, n=10_000):
    rng = np.random.default_rng(seed)
    p = np.where(np.arange(n) < CHANGE, before, after)
    return (rng.random(n) < p).astype(np.int8)


def first_drift_after(status, start):
    hits = np.flatnonzero(status[start:] == DetectorStatus.DRIFT)
    return int(hits[0]) if len(hits) else None


@pytest.mark.parametrize("kind", KINDS)
def test_false_alarm_rate(kind):
    alarms = sum(make_detector(kind).count_drifts(bernoulli(0.2, 10_000, 1000 + s)) > 0
                 for s in range(100))
    assert alarms <= 10


@pytest.mark.parametrize("kind", KINDS)
def test_step_detected_within_delay(kind):
    for seed in range(100):
        status = make_detector(kind).run(step_stream(seed))
        delay = first_drift_after(status, CHANGE)
        assert delay is not None and delay <= MAX_DELAY, (seed, delay)


@pytest.mark.parametrize("kind", ["DDM", "EDDM"])
def test_warning_precedes_drift(kind):
    for seed in range(30):
        status = make_detector(kind).run(step_stream(seed))
        drift = CHANGE + first_drift_after(status, CHANGE)
        assert (status[CHANGE:drift] == DetectorStatus.WARNING).any(), seed


def _median_delay(make, seeds=range(40)):
    return np.median([first_drift_after(make().run(step_stream(s)), CHANGE) for s in seeds])


def test_hddm_delay_grows_as_confidence_tightens():
    deltas = [1e-2, 1e-4, 1e-6, 1e-8]
    delays = [_median_delay(lambda d=d: HDDM(warning_confidence=5 * d, drift_confidence=d))
              for d in deltas]
    assert delays == sorted(delays)


def test_fhddm_delay_grows_as_delta_shrinks():
    delays = [_median_delay(lambda d=d: FHDDM(delta=d)) for d in [1e-3, 1e-7, 1e-11, 1e-15]]
    assert delays == sorted(delays)


@pytest.mark.parametrize("kind", KINDS)
def test_zero_error_stream_stays_stable(kind):
    status = make_detector(kind).run(np.zeros(5000, dtype=np.int8))
    assert (status == DetectorStatus.STABLE).all()


@pytest.mark.parametrize("kind", KINDS)
def test_reset_equals_fresh(kind):
    errors = step_stream(3)
    det = make_detector(kind)
    first = det.run(errors)
    det.reset()
    assert np.array_equal(det.run(errors), first)
    assert np.array_equal(make_detector(kind).run(errors), first)


@pytest.mark.parametrize("kind", KINDS)
def test_update_agrees_with_run(kind):
    errors = step_stream(4)[4000:7000]
    det = make_detector(kind)
    stepped = [det.update(int(e)) for e in errors]
    assert np.array_equal(np.asarray(stepped), make_detector(kind).run(errors))
    assert np.array_equal(det.state_snapshot(), _snapshot_after(kind, errors))


def _snapshot_after(kind, errors):
    det = make_detector(kind)
    det.run(errors)
    return det.state_snapshot()


@settings(max_examples=30, deadline=None)
@given(kind=st.sampled_from(KINDS), seed=st.integers(0, 2**31), cut=st.integers(0, 3000))
def test_split_run_equals_whole(kind, seed, cut):
    errors = bernoulli(0.3, 3000, seed)
    det = make_detector(kind)
    parts = np.concatenate([det.run(errors[:cut]), det.run(errors[cut:])])
    assert np.array_equal(parts, make_detector(kind).run(errors))


@pytest.mark.parametrize("kind", KINDS)
def test_sklearn_params_and_clone(kind):
    det = make_detector(kind)
    params = det.get_params()
    twin = clone(det)
    assert twin.get_params() == params
    det.run(step_stream(0))
    assert clone(det).state_snapshot().sum() == make_detector(kind).state_snapshot().sum()


def test_set_params_resets_state():
    det = DDM()
    det.run(step_stream(0))
    det.set_params(drift_level=4.0)
    assert np.array_equal(det.state_snapshot(), DDM(drift_level=4.0).state_snapshot())


@pytest.mark.parametrize("det", [
    DDM(warning_level=3, drift_level=2), EDDM(alpha=0.7, beta=0.8), HDDM(drift_confidence=0.1),
    FHDDM(window_size=0), FHDDM(delta=2),
])
def test_bad_params(det):
    with pytest.raises(ConfigurationError):
        det.run([0, 1])


def test_bad_error_value():
    with pytest.raises(ConfigurationError):
        DDM().update(2)
    with pytest.raises(ConfigurationError):
        DDM().run([0, 0.5])


def test_unknown_kind():
    with pytest.raises(ConfigurationError):
        make_detector("ADWIN")


def test_fhddm_epsilon():
    assert FHDDM(window_size=100, delta=1e-7).epsilon == pytest.approx(0.283885, abs=1e-6)


def test_status_flags():
    det = DDM()
    assert not det.drift_detected and not det.warning_detected
    for e in np.r_[np.zeros(1000), np.ones(1000)].astype(int):
        if det.update(e) == DetectorStatus.DRIFT:
            break
    assert det.drift_detected and not det.warning_detected
