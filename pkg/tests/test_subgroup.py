import itertools

import numpy as np
import pytest
from conftest import REFERENCE_SUBGROUPS

from localdrift import (
    InvalidSliceError, Slice, Subgroup, contains, generate_subgroup, sample_records,
    slice_probability, subgroup_probability,
)
from localdrift.stream import ATTRIBUTE_META, COL
from localdrift.subgroup import ELIGIBLE_ATTRIBUTES, random_slice


@pytest.mark.parametrize("s,p", [
    (Slice("elevel", 0, 3), 0.6),
    (Slice("age", 29, 78), 49 / 61),
    (Slice("zipcode", 6, 7), 1 / 9),
    (Slice("salary", 20_000, 151_000), 1.0),
])
def test_slice_probability(s, p):
    assert slice_probability(s) == pytest.approx(p)


@pytest.mark.parametrize("g,expected", REFERENCE_SUBGROUPS)
def test_reference_sizes(g, expected):
    assert subgroup_probability(g) == pytest.approx(expected, abs=5e-4)


@pytest.mark.parametrize("g,expected", REFERENCE_SUBGROUPS)
def test_empirical_coverage_matches(g, expected):
    X = sample_records(10_000, np.random.default_rng(11))
    assert g.contains(X).mean() == pytest.approx(g.computed_size, abs=0.02)


def test_empty_subgroup_is_everything():
    g = Subgroup()
    assert g.computed_size == 1.0
    assert g.contains(sample_records(10, np.random.default_rng(0))).all()


def test_categorical_probability_by_enumeration():
    # every record over the three categoricals, each equally likely
    g = Subgroup((Slice("elevel", 1, 3), Slice("car", 4, 11), Slice("zipcode", 2, 8)))
    grid = list(itertools.product(range(5), range(1, 21), range(9)))
    X = np.zeros((len(grid), 9))
    X[:, [COL["elevel"], COL["car"], COL["zipcode"]]] = grid
    assert g.contains(X).mean() == pytest.approx(g.computed_size, abs=1e-12)


def test_contains_record_and_half_open_bound():
    g = Subgroup((Slice("age", 30, 40),))
    X = sample_records(1, np.random.default_rng(0))
    X[0, COL["age"]] = 40
    assert contains(g, X).tolist() == [0]
    X[0, COL["age"]] = 30
    assert contains(g, X).tolist() == [1]


@pytest.mark.parametrize("args", [
    ("commission", 0, 10_000),        # dependent attribute
    ("hvalue", 0, 100_000),           # dependent attribute
    ("age", 30, 30),                  # empty
    ("age", 19, 30),                  # below support
    ("age", 30, 82),                  # above support + step
    ("salary", 20_500, 30_000),       # off grid
    ("colour", 0, 1),
])
def test_invalid_slices(args):
    with pytest.raises(InvalidSliceError):
        Slice(*args)


def test_one_slice_per_attribute():
    with pytest.raises(InvalidSliceError):
        Subgroup((Slice("age", 20, 30), Slice("age", 40, 50)))


def test_with_slice_replaces():
    g = Subgroup((Slice("age", 20, 30),)).with_slice(Slice("age", 40, 50))
    assert g.slices == (Slice("age", 40, 50),)


def test_roundtrip_list():
    g = REFERENCE_SUBGROUPS[2][0]
    assert Subgroup.from_list(g.to_list()) == g


def test_str_format():
    assert str(Subgroup((Slice("age", 20, 30),))) == "{ age in [20, 30) }"


def test_random_slice_on_grid():
    rng = np.random.default_rng(3)
    for name in ELIGIBLE_ATTRIBUTES:
        for _ in range(50):
            s = random_slice(name, rng)
            assert 0 < slice_probability(s) <= 1
            meta = ATTRIBUTE_META[name]
            assert meta.low <= s.lower < s.upper <= meta.high + meta.step


@pytest.mark.parametrize("target", [0.01, 0.05, 0.25, 0.5])
def test_generate_reaches_tolerance_mostly(target):
    rng = np.random.default_rng(17)
    hits = [abs(generate_subgroup(target, 0.01, 1000, rng).computed_size - target) <= 0.01
            for _ in range(60)]
    assert np.mean(hits) >= 0.6


def test_generate_only_uses_independent_attributes():
    rng = np.random.default_rng(2)
    for _ in range(50):
        g = generate_subgroup(0.1, random_state=rng)
        assert set(g.attributes) <= set(ELIGIBLE_ATTRIBUTES)
        assert len(set(g.attributes)) == len(g.attributes)


def test_generate_respects_max_iter():
    g = generate_subgroup(0.0001, tolerance=1e-6, max_iter=7, random_state=0)
    assert g.n_iter <= 7


def test_generate_deterministic():
    a = generate_subgroup(0.2, random_state=5)
    b = generate_subgroup(0.2, random_state=5)
    assert a == b and a.n_iter == b.n_iter


@pytest.mark.parametrize("bad", [0, -0.1, 1.5])
def test_generate_rejects_bad_target(bad):
    from localdrift import ConfigurationError
    with pytest.raises(ConfigurationError):
        generate_subgroup(bad)
