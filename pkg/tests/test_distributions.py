import json
import math

import numpy as np
import pytest

from flowshoplab import DistributionSpec, moments, sample_table, substream
from flowshoplab.distributions import (
    STANDARD_CHI_SQUARED,
    STANDARD_CONTINUOUS_UNIFORM,
    STANDARD_DISCRETE_UNIFORM,
    STANDARD_EXPONENTIAL,
)

SPECS = [
    DistributionSpec.exponential(2.0),
    DistributionSpec.exponential(0.3),
    STANDARD_DISCRETE_UNIFORM,
    DistributionSpec.discrete_uniform(0, 3),
    STANDARD_CONTINUOUS_UNIFORM,
    STANDARD_CHI_SQUARED,
    DistributionSpec.chi_squared(1),
    DistributionSpec.geometric(0.5),
    DistributionSpec.geometric(0.9),
]


def test_standard_moments():
    assert moments(DistributionSpec.exponential(2)) == (2, 4)
    assert moments(STANDARD_DISCRETE_UNIFORM) == (7, 14)
    assert moments(STANDARD_CHI_SQUARED) == (7, 14)
    m, v = moments(STANDARD_CONTINUOUS_UNIFORM)
    assert m == pytest.approx(7, rel=1e-15)
    assert v == pytest.approx(14, rel=1e-14)


def test_continuous_uniform_endpoints_full_precision():
    assert STANDARD_CONTINUOUS_UNIFORM.params["lo"] == 7 - math.sqrt(42)
    assert STANDARD_CONTINUOUS_UNIFORM.params["hi"] == 7 + math.sqrt(42)
    assert DistributionSpec.uniform_matching(7, 14) == STANDARD_CONTINUOUS_UNIFORM


def test_geometric_moments():
    assert moments(DistributionSpec.geometric(0.5)) == (1.0, 2.0)


def _exact_pmf_moments(pmf, support):
    p = np.array([pmf(k) for k in support])
    k = np.array(support, dtype=float)
    mean = (p * k).sum()
    return mean, (p * (k - mean) ** 2).sum()


def test_discrete_moments_by_enumeration():
    m, v = _exact_pmf_moments(lambda k: 1 / 13, range(1, 14))
    assert moments(STANDARD_DISCRETE_UNIFORM) == (pytest.approx(m, rel=1e-14), pytest.approx(v, rel=1e-14))
    q = 0.3
    m, v = _exact_pmf_moments(lambda k: (1 - q) * q**k, range(0, 200))
    assert moments(DistributionSpec.geometric(q)) == (pytest.approx(m, rel=1e-12), pytest.approx(v, rel=1e-12))


def test_large_table_moments_within_three_standard_errors():
    table = sample_table(DistributionSpec.exponential(2.0), 1000, 800, seed=12345)
    x = table.x.ravel()
    n = x.size
    # exponential(scale 2): Var[X] = 4, fourth central moment 9 * 2**4
    assert abs(x.mean() - 2.0) <= 3 * math.sqrt(4.0 / n)
    assert abs(x.var(ddof=1) - 4.0) <= 3 * math.sqrt((9 * 16 - 16) / n)


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: f"{s.kind}-{'-'.join(map(str, s.params.values()))}")
def test_moment_consistency(spec):
    x = spec.sample(substream(99, 0), 200_000)
    n = x.size
    mean, var = moments(spec)
    dev = (x - x.mean()) ** 2
    assert abs(x.mean() - mean) <= 4 * math.sqrt(var / n)
    assert abs(x.var(ddof=1) - var) <= 4 * dev.std(ddof=1) / math.sqrt(n)


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.kind)
def test_support(spec):
    x = spec.sample(substream(5, 1), (100, 100))
    assert np.all(x >= spec.support_min)
    if spec.kind in ("exponential", "chi-squared"):
        assert np.all(x > 0)
    if spec.kind in ("discrete-uniform", "geometric"):
        assert np.all(x == np.round(x))
    if spec.kind in ("discrete-uniform", "continuous-uniform"):
        assert np.all(x <= spec.params["hi"])


def test_discrete_uniform_covers_support():
    t = sample_table(STANDARD_DISCRETE_UNIFORM, 50, 50, seed=1)
    assert set(np.unique(t.x).tolist()) == set(range(1, 14))


def test_geometric_pmf_at_zero():
    q = 0.4
    x = DistributionSpec.geometric(q).sample(substream(7, 0), 100_000)
    p0 = np.mean(x == 0)
    assert abs(p0 - (1 - q)) <= 4 * math.sqrt(q * (1 - q) / x.size)


def test_same_seed_same_table():
    a = sample_table(STANDARD_EXPONENTIAL, 30, 20, seed=8)
    b = sample_table(STANDARD_EXPONENTIAL, 30, 20, seed=8)
    c = sample_table(STANDARD_EXPONENTIAL, 30, 20, seed=9)
    assert a == b
    assert a != c


def test_substreams_independent_of_order():
    first = substream(1, 5).random(4)
    substream(1, 4).random(100)
    assert np.array_equal(substream(1, 5).random(4), first)
    assert not np.array_equal(substream(1, 6).random(4), first)


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.kind)
def test_json_round_trip(spec):
    text = spec.to_json()
    data = json.loads(text)
    assert data["kind"] == spec.kind
    assert DistributionSpec.from_json(text) == spec


def test_json_lambda_alias():
    assert DistributionSpec.from_json('{"kind": "exponential", "lambda": 2}') == DistributionSpec.exponential(2)


@pytest.mark.parametrize(
    "kind, params",
    [
        ("exponential", {"scale": 0}),
        ("discrete-uniform", {"lo": 3, "hi": 1}),
        ("discrete-uniform", {"lo": 1.5, "hi": 3}),
        ("discrete-uniform", {"lo": -1, "hi": 3}),
        ("continuous-uniform", {"lo": -0.1, "hi": 3}),
        ("chi-squared", {"k": 0.5}),
        ("geometric", {"q": 1.0}),
        ("exponential", {"scale": 1, "extra": 2}),
        ("weibull", {"k": 1}),
    ],
)
def test_invalid_specs(kind, params):
    with pytest.raises(ValueError):
        DistributionSpec(kind, params)


def test_sample_table_rejects_empty():
    with pytest.raises(ValueError):
        sample_table(STANDARD_EXPONENTIAL, 0, 3, seed=1)
