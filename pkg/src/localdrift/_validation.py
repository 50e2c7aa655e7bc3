"""Small argument checks shared across modules."""
import numbers

import numpy as np

from .exceptions import ConfigurationError


def check_fraction(value, name, *, low_open=False, high_open=False):
    if not isinstance(value, numbers.Real) or not np.isfinite(value):
        raise ConfigurationError(f"{name} must be a finite real number, got {value!r}")
    lo_bad = value <= 0 if low_open else value < 0
    hi_bad = value >= 1 if high_open else value > 1
    if lo_bad or hi_bad:
        lo = "(" if low_open else "["
        hi = ")" if high_open else "]"
        raise ConfigurationError(f"{name} must lie in {lo}0, 1{hi}, got {value!r}")
    return float(value)


def check_positive_int(value, name, minimum=1):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral) or value < minimum:
        raise ConfigurationError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)


def check_random_state(seed):
    """Turn None, an int, a SeedSequence or a Generator into a Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def check_error_stream(errors):
    arr = np.asarray(errors)
    if arr.ndim != 1:
        raise ConfigurationError("error stream must be one-dimensional")
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise ConfigurationError("error stream must contain only 0/1 values")
    return arr.astype(np.int8)
