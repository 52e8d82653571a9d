import math

import numpy as np
import pytest

from flowshoplab import (
    TABLE2,
    DistributionSpec,
    SweepResult,
    compare_rules,
    monte_carlo_sweep,
    reorder_jobs,
    row_totals,
    sample_table,
    substream,
    sweep_fiducial,
)
from flowshoplab.experiments import RunningStats, trial_makespans

EXP2 = DistributionSpec.exponential(2.0)


def test_spt_order_table2():
    spt = reorder_jobs(TABLE2, "spt")
    order = [4, 6, 1, 7, 5, 3, 8, 2]
    assert np.array_equal(spt.x, TABLE2.x[:, [j - 1 for j in order]])
    assert spt.x[0].tolist() == [1, 1, 2, 2, 3, 4, 4, 5]


def test_lpt_order_table2():
    lpt = reorder_jobs(TABLE2, "lpt")
    # descending on M1 = [2,5,4,1,3,1,2,4], ties by job index
    order = [2, 3, 8, 5, 1, 7, 4, 6]
    assert np.array_equal(lpt.x, TABLE2.x[:, [j - 1 for j in order]])


def test_reorder_normal_and_idempotence():
    assert reorder_jobs(TABLE2, "normal") == TABLE2
    spt = reorder_jobs(TABLE2, "spt")
    assert reorder_jobs(spt, "spt") == spt
    lpt = reorder_jobs(TABLE2, "lpt")
    assert reorder_jobs(lpt, "lpt") == lpt
    with pytest.raises(ValueError):
        reorder_jobs(TABLE2, "edd")


def test_reorder_keeps_row_totals():
    t = sample_table(EXP2, 12, 9, seed=3)
    for rule in ("spt", "lpt"):
        np.testing.assert_allclose(row_totals(reorder_jobs(t, rule)), row_totals(t), rtol=1e-12)


def test_running_stats_match_numpy():
    rng = np.random.default_rng(0)
    data = rng.normal(size=(37, 5))
    a, b = RunningStats(5), RunningStats(5)
    for row in data[:20]:
        a.push(row)
    for row in data[20:]:
        b.push(row)
    merged = a.merge(b)
    assert merged.count == 37
    np.testing.assert_allclose(merged.mean, data.mean(axis=0), rtol=1e-12)
    np.testing.assert_allclose(merged.stddev, data.std(axis=0, ddof=1), rtol=1e-12)
    np.testing.assert_allclose(merged.stderr, data.std(axis=0, ddof=1) / math.sqrt(37), rtol=1e-12)


def test_single_trial_equals_table_sweep():
    r = monte_carlo_sweep(EXP2, 9, 7, trials=1, seed=42)
    table = sample_table(EXP2, 9, 7, seed=substream(42, 0))
    np.testing.assert_allclose(r.mean, sweep_fiducial(table), rtol=1e-12)
    assert np.all(r.stddev == 0) and np.all(r.stderr == 0)


def test_single_trial_integer_distribution_exact():
    spec = DistributionSpec.discrete_uniform(1, 13)
    r = monte_carlo_sweep(spec, 8, 6, trials=1, seed=5, rule="spt")
    table = reorder_jobs(sample_table(spec, 8, 6, seed=substream(5, 0)), "spt")
    assert np.array_equal(r.mean, sweep_fiducial(table))


def test_per_trial_determinism():
    a = trial_makespans(EXP2, 10, 8, seed=3, trial=4, rule="lpt")
    b = trial_makespans(EXP2, 10, 8, seed=3, trial=4, rule="lpt")
    assert np.array_equal(a, b)


def test_worker_count_does_not_change_result():
    serial = monte_carlo_sweep(EXP2, 12, 10, trials=40, seed=9)
    parallel = monte_carlo_sweep(EXP2, 12, 10, trials=40, seed=9, workers=3)
    assert np.array_equal(serial.mean, parallel.mean)
    assert np.array_equal(serial.stddev, parallel.stddev)


def test_sweep_symmetry_within_three_standard_errors():
    r = monte_carlo_sweep(EXP2, 60, 60, trials=200, seed=2024)
    diff = np.abs(r.mean - r.mean[::-1])
    combined = np.hypot(r.stderr, r.stderr[::-1])
    assert np.all(diff <= 3 * combined + 1e-9)


def test_midpoint_exceeds_edge():
    r = monte_carlo_sweep(EXP2, 100, 50, trials=100, seed=77)
    mid = math.ceil(100 / 2)
    assert r.mean[mid - 1] > r.mean[0]


def test_means_respect_support_floor():
    spec = DistributionSpec.discrete_uniform(1, 13)
    r = monte_carlo_sweep(spec, 5, 30, trials=10, seed=1)
    assert np.all(r.mean >= 30 * spec.support_min)


def test_compare_rules_identity_and_values():
    base = monte_carlo_sweep(EXP2, 8, 6, trials=5, seed=1)
    same = compare_rules(base, base)
    assert same.min_rel == 0 and same.max_rel == 0
    spt = monte_carlo_sweep(EXP2, 8, 6, trials=5, seed=1, rule="spt")
    c = compare_rules(base, spt)
    np.testing.assert_allclose(c.relative, (spt.mean - base.mean) / base.mean)
    assert c.min_rel == c.relative.min() and c.max_rel == c.relative.max()


def test_compare_rules_shape_mismatch():
    a = monte_carlo_sweep(EXP2, 8, 6, trials=5, seed=1)
    with pytest.raises(ValueError):
        compare_rules(a, monte_carlo_sweep(EXP2, 9, 6, trials=5, seed=1))
    with pytest.raises(ValueError):
        compare_rules(a, monte_carlo_sweep(EXP2, 8, 6, trials=6, seed=1))
    with pytest.raises(ValueError):
        compare_rules(a, monte_carlo_sweep(DistributionSpec.exponential(1), 8, 6, trials=5, seed=1))


def test_sweep_validation():
    with pytest.raises(ValueError):
        monte_carlo_sweep(EXP2, 8, 6, trials=0, seed=1)
    with pytest.raises(ValueError):
        monte_carlo_sweep(EXP2, 8, 6, trials=2, seed=1, rule="random")


def test_sweep_csv_and_sidecar_round_trip(tmp_path):
    r = monte_carlo_sweep(EXP2, 7, 5, trials=4, seed=10, rule="lpt")
    csv_path, sidecar = r.save(tmp_path / "sweep.csv")
    assert sidecar.name == "sweep.csv.json"
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "nu,mean,stddev,stderr"
    assert len(lines) == 8
    back = SweepResult.load(csv_path)
    assert back.metadata() == r.metadata()
    assert np.array_equal(back.mean, r.mean)
    assert np.array_equal(back.stddev, r.stddev)
    assert np.array_equal(back.stderr, r.stderr)
