"""Streaming drift detectors fed with a 0/1 error signal (1 = misclassified).

Every detector keeps its running statistics in a small float array and
advances it with a numba-compiled step function, so ``update`` (one sample)
and ``run`` (a whole stream) share a single implementation.
"""
import math
from enum import IntEnum

import numpy as np
from numba import njit
from sklearn.base import BaseEstimator

from ._validation import check_error_stream, check_fraction, check_positive_int
from .exceptions import ConfigurationError


class DetectorStatus(IntEnum):
    STABLE = 0
    WARNING = 1
    DRIFT = 2


_STABLE, _WARNING, _DRIFT = 0, 1, 2


# DDM state: n, p, p_min, s_min
@njit(cache=True)
def _ddm_reset(state):
    state[0] = 0.0
    state[1] = 0.0
    state[2] = np.inf
    state[3] = np.inf


@njit(cache=True)
def _ddm_step(state, params, error):
    warn_mult, drift_mult, min_samples = params[0], params[1], params[2]
    state[0] += 1.0
    n = state[0]
    state[1] += (error - state[1]) / n
    p = state[1]
    s = math.sqrt(p * (1.0 - p) / n)
    if n < min_samples:
        return _STABLE
    if p + s <= state[2] + state[3]:
        state[2] = p
        state[3] = s
    if p + s > state[2] + drift_mult * state[3]:
        _ddm_reset(state)
        return _DRIFT
    if p + s > state[2] + warn_mult * state[3]:
        return _WARNING
    return _STABLE


# EDDM state: n, n_errors, last_error_at, mean_dist, m2_dist, m2s_max
@njit(cache=True)
def _eddm_reset(state):
    state[:] = 0.0


@njit(cache=True)
def _eddm_step(state, params, error):
    alpha, beta, min_errors = params[0], params[1], params[2]
    state[0] += 1.0
    if error == 0:
        return _STABLE
    state[1] += 1.0
    k = state[1]
    distance = state[0] - state[2]
    state[2] = state[0]
    old_mean = state[3]
    state[3] += (distance - old_mean) / k
    state[4] += (distance - state[3]) * (distance - old_mean)
    if k < min_errors:
        return _STABLE
    m2s = state[3] + 2.0 * math.sqrt(state[4] / k)
    if m2s > state[5]:
        state[5] = m2s
        return _STABLE
    ratio = m2s / state[5]
    if ratio < beta:
        _eddm_reset(state)
        return _DRIFT
    if ratio < alpha:
        return _WARNING
    return _STABLE


# HDDM (A-test) state: n, error_sum, n_cut, error_sum_cut
@njit(cache=True)
def _hddm_reset(state):
    state[:] = 0.0


@njit(cache=True)
def _hoeffding_increase(n_cut, sum_cut, n, total, log_term):
    if n_cut == n:
        return False
    # 1 / n_hat, where n_hat is the effective count of the two samples
    inv_n_hat = (n - n_cut) / (n_cut * n)
    bound = math.sqrt(inv_n_hat / 2.0 * log_term)
    return total / n - sum_cut / n_cut >= bound


@njit(cache=True)
def _hddm_step(state, params, error):
    log_warn, log_drift = params[0], params[1]
    state[0] += 1.0
    state[1] += error
    n, total = state[0], state[1]
    if state[2] == 0.0:
        state[2] = n
        state[3] = total
    bound_cut = math.sqrt(log_drift / (2.0 * state[2]))
    bound_now = math.sqrt(log_drift / (2.0 * n))
    if state[3] / state[2] + bound_cut >= total / n + bound_now:
        state[2] = n
        state[3] = total
    if _hoeffding_increase(state[2], state[3], n, total, log_drift):
        _hddm_reset(state)
        return _DRIFT
    if _hoeffding_increase(state[2], state[3], n, total, log_warn):
        return _WARNING
    return _STABLE


# FHDDM state: filled, next_slot, correct_sum, mu_max, window[0..n-1]
_FH_HEADER = 4


@njit(cache=True)
def _fhddm_reset(state):
    state[:] = 0.0


@njit(cache=True)
def _fhddm_step(state, params, error):
    size, epsilon = int(params[0]), params[1]
    correct = 1.0 - error
    slot = _FH_HEADER + int(state[1])
    if state[0] == size:
        state[2] -= state[slot]
    else:
        state[0] += 1.0
    state[slot] = correct
    state[2] += correct
    state[1] = (state[1] + 1.0) % size
    if state[0] < size:
        return _STABLE
    mu = state[2] / size
    if mu > state[3]:
        state[3] = mu
    if state[3] - mu >= epsilon:
        _fhddm_reset(state)
        return _DRIFT
    return _STABLE


def _make_runner(step):
    @njit(cache=True)
    def run(state, params, errors, out):
        for i in range(errors.shape[0]):
            out[i] = step(state, params, errors[i])

    return run


_ddm_run = _make_runner(_ddm_step)
_eddm_run = _make_runner(_eddm_step)
_hddm_run = _make_runner(_hddm_step)
_fhddm_run = _make_runner(_fhddm_step)


class DriftDetector(BaseEstimator):
    """Shared machinery: state allocation, ``update``, ``run`` and ``reset``.

    Subclasses define ``_step``/``_run``/``_reset_state`` kernels, the state
    size and the parameter vector handed to the kernels.
    """

    _state_size = 0

    def _params(self):
        raise NotImplementedError

    def _allocate(self):
        return np.zeros(self._state_size)

    def reset(self):
        """Forget everything seen so far."""
        self._kernel_params = np.asarray(self._params(), dtype=np.float64)
        self._state = self._allocate()
        type(self)._reset_state(self._state)
        self.status_ = DetectorStatus.STABLE
        return self

    def set_params(self, **params):
        super().set_params(**params)
        self._state = None
        return self

    def _ensure_state(self):
        if getattr(self, "_state", None) is None:
            self.reset()

    def update(self, error):
        """Feed one 0/1 error and return the resulting status."""
        if error not in (0, 1):
            raise ConfigurationError(f"error must be 0 or 1, got {error!r}")
        self._ensure_state()
        code = type(self)._step(self._state, self._kernel_params, float(error))
        self.status_ = DetectorStatus(code)
        return self.status_

    def run(self, errors):
        """Feed a whole error stream; returns the status after each sample."""
        errors = check_error_stream(errors).astype(np.float64)
        self._ensure_state()
        out = np.zeros(len(errors), dtype=np.int8)
        type(self)._run(self._state, self._kernel_params, errors, out)
        if len(out):
            self.status_ = DetectorStatus(int(out[-1]))
        return out

    def count_drifts(self, errors):
        return int(np.count_nonzero(self.run(errors) == DetectorStatus.DRIFT))

    @property
    def drift_detected(self):
        return getattr(self, "status_", None) == DetectorStatus.DRIFT

    @property
    def warning_detected(self):
        return getattr(self, "status_", None) == DetectorStatus.WARNING

    def state_snapshot(self):
        self._ensure_state()
        return self._state.copy()


class DDM(DriftDetector):
    """Drift Detection Method: tracks the error rate and its binomial spread.

    Signals a warning when ``p + s`` exceeds ``p_min + warning_level * s_min``
    and a drift beyond ``p_min + drift_level * s_min``.
    """

    _state_size = 4
    _step = staticmethod(_ddm_step)
    _run = staticmethod(_ddm_run)
    _reset_state = staticmethod(_ddm_reset)

    def __init__(self, warning_level=2.0, drift_level=3.5, min_samples=100):
        self.warning_level = warning_level
        self.drift_level = drift_level
        self.min_samples = min_samples

    def _params(self):
        if not 0 < self.warning_level < self.drift_level:
            raise ConfigurationError("DDM needs 0 < warning_level < drift_level")
        check_positive_int(self.min_samples, "min_samples")
        return [self.warning_level, self.drift_level, self.min_samples]


class EDDM(DriftDetector):
    """Early Drift Detection Method, based on the distance between errors.

    Compares ``mean + 2 * std`` of inter-error distances with its running
    maximum; a ratio below ``alpha`` warns, below ``beta`` signals drift.
    """

    _state_size = 6
    _step = staticmethod(_eddm_step)
    _run = staticmethod(_eddm_run)
    _reset_state = staticmethod(_eddm_reset)

    def __init__(self, alpha=0.9, beta=0.8, min_errors=100):
        self.alpha = alpha
        self.beta = beta
        self.min_errors = min_errors

    def _params(self):
        check_fraction(self.alpha, "alpha", low_open=True, high_open=True)
        check_fraction(self.beta, "beta", low_open=True, high_open=True)
        if self.beta >= self.alpha:
            raise ConfigurationError("EDDM needs beta < alpha")
        check_positive_int(self.min_errors, "min_errors")
        return [self.alpha, self.beta, self.min_errors]


class HDDM(DriftDetector):
    """Hoeffding-bound drift detector, A-test (moving averages) variant.

    Keeps a cut point where the error mean was lowest and signals when the
    mean since the start exceeds it by a Hoeffding bound at confidence
    ``drift_confidence`` (or ``warning_confidence`` for a warning).
    """

    _state_size = 4
    _step = staticmethod(_hddm_step)
    _run = staticmethod(_hddm_run)
    _reset_state = staticmethod(_hddm_reset)

    def __init__(self, warning_confidence=5e-4, drift_confidence=1e-4):
        self.warning_confidence = warning_confidence
        self.drift_confidence = drift_confidence

    def _params(self):
        check_fraction(self.warning_confidence, "warning_confidence", low_open=True, high_open=True)
        check_fraction(self.drift_confidence, "drift_confidence", low_open=True, high_open=True)
        if self.drift_confidence >= self.warning_confidence:
            raise ConfigurationError("HDDM needs drift_confidence < warning_confidence")
        return [math.log(1 / self.warning_confidence), math.log(1 / self.drift_confidence)]


class FHDDM(DriftDetector):
    """Fast Hoeffding Drift Detection Method over a sliding accuracy window.

    Signals drift when the best windowed accuracy seen so far exceeds the
    current one by ``sqrt(ln(1/delta) / (2 * window_size))``. Has no warning
    level.
    """

    _step = staticmethod(_fhddm_step)
    _run = staticmethod(_fhddm_run)
    _reset_state = staticmethod(_fhddm_reset)

    def __init__(self, window_size=100, delta=1e-7):
        self.window_size = window_size
        self.delta = delta

    @property
    def epsilon(self):
        return math.sqrt(math.log(1 / self.delta) / (2 * self.window_size))

    def _allocate(self):
        return np.zeros(_FH_HEADER + self.window_size)

    def _params(self):
        check_positive_int(self.window_size, "window_size")
        check_fraction(self.delta, "delta", low_open=True, high_open=True)
        return [self.window_size, self.epsilon]


DETECTORS = {"DDM": DDM, "EDDM": EDDM, "HDDM": HDDM, "FHDDM": FHDDM}


def make_detector(kind, **params):
    try:
        cls = DETECTORS[kind]
    except KeyError:
        raise ConfigurationError(f"unknown detector {kind!r}; choose from {sorted(DETECTORS)}")
    return cls(**params)
