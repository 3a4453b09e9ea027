import logging

import numpy as np
import pytest

from lrmipt.circuit import CircuitConfig, InitialState, run_trajectory, steady_state_steps, trajectory_rng
from lrmipt.errors import DomainError
from lrmipt.observables import (
    EnsembleRecord,
    Observable,
    antipodal_regions,
    default_sample_times,
    estimate_global_entropy_series,
    estimate_half_chain,
    estimate_mutual_information,
    estimate_purification_time,
    run_ensemble,
)
from lrmipt.observables.record import MEDIAN_SE_FACTOR
from lrmipt.tableau import StabilizerState
from tests import oracle


def make_config(**overrides):
    params = {"L": 8, "alpha": 2.0, "p": 0.25, "depth": 2}
    params.update(overrides)
    return CircuitConfig(**params)


def make_record(samples, observable=Observable.HALF_CHAIN, **kwargs):
    return EnsembleRecord(8, 2.0, 0.25, observable, samples, **kwargs)


# ----------------------------------------------------------------------
# Records
# ----------------------------------------------------------------------


def test_mean_summary():
    summary = make_record([1.0, 2.0, 3.0, 4.0]).summary()
    assert summary.statistic == "mean"
    assert summary.value == pytest.approx(2.5)
    assert summary.stderr == pytest.approx(np.std([1, 2, 3, 4], ddof=1) / 2)


def test_median_summary_for_purification_time():
    samples = [1.0, 2.0, 3.0, 10.0, 12.0]
    summary = make_record(samples, Observable.PURIFICATION_TIME, censored=[False] * 5).summary()
    assert summary.statistic == "median"
    assert summary.value == 3.0
    assert summary.stderr == pytest.approx(MEDIAN_SE_FACTOR * np.std(samples, ddof=1) / np.sqrt(5))


def test_empty_record_summary_is_nan():
    summary = make_record([]).summary()
    assert summary.n == 0
    assert np.isnan(summary.value)


def test_censored_majority_flag():
    record = make_record([5.0, 5.0, 2.0], Observable.PURIFICATION_TIME, censored=[True, True, False], depth_cap=5)
    assert record.censored_fraction == pytest.approx(2 / 3)
    assert record.summary().censored_majority


def test_censored_flags_must_match_samples():
    with pytest.raises(ValueError):
        make_record([1.0, 2.0], Observable.PURIFICATION_TIME, censored=[True])


def test_series_summary_is_per_time():
    record = make_record([[4, 2], [2, 0]], Observable.GLOBAL_ENTROPY, times=[0, 8])
    summary = record.summary()
    assert summary.value.tolist() == [3.0, 1.0]


def test_resample_keeps_censoring_aligned():
    record = make_record([1.0, 9.0], Observable.PURIFICATION_TIME, censored=[False, True])
    rep = record.resample([1, 1, 0])
    assert rep.samples.tolist() == [9.0, 9.0, 1.0]
    assert rep.censored.tolist() == [True, True, False]


# ----------------------------------------------------------------------
# Ensembles
# ----------------------------------------------------------------------


def _first_draw(config, rng):
    return int(rng.integers(1 << 30))


def test_run_ensemble_is_ordered_and_reproducible():
    config = make_config()
    a = run_ensemble(_first_draw, config, 6, seed=3)
    b = run_ensemble(_first_draw, config, 6, seed=3)
    assert a == b
    assert len(set(a)) == 6
    assert run_ensemble(_first_draw, config, 0, seed=3) == []


def test_worker_count_does_not_change_results():
    config = make_config(p=0.3)
    serial = estimate_half_chain(config, 4, workers=1)
    parallel = estimate_half_chain(config, 4, workers=2)
    assert np.array_equal(serial.samples, parallel.samples)


def test_half_chain_extremes():
    assert np.all(estimate_half_chain(make_config(p=1.0), 3).samples == 0)
    volume = estimate_half_chain(make_config(p=0.0, depth=4), 3).samples
    assert np.all(volume > 1.5)


def test_half_chain_mean_matches_dense_replay():
    config = make_config(p=0.25, depth=2)
    n, seed = 6, 31
    record = estimate_half_chain(config, n, seed=seed)
    steps = steady_state_steps(config)
    expected = []
    for i in range(n):
        traj = run_trajectory(config, InitialState.PRODUCT_ZERO, rng=trajectory_rng(seed, i), keep_history=True)
        start = oracle.density_matrix(StabilizerState.zero(config.L))
        states, _ = oracle.replay(start, traj.gates, traj.outcomes, config.n_gates)
        expected.append(np.mean([oracle.entropy(states[t], range(config.L // 2)) for t in steps]))
    assert record.samples == pytest.approx(expected, abs=1e-9)
    assert record.summary().value == pytest.approx(np.mean(expected), abs=1e-9)


def test_explicit_seed_overrides_cell_seed():
    config = make_config(p=0.3)
    a = estimate_half_chain(config, 3, seed=11)
    b = estimate_half_chain(config, 3, seed=11)
    assert np.array_equal(a.samples, b.samples)


def test_antipodal_regions():
    a, b = antipodal_regions(16)
    assert list(a) == [0, 1]
    assert list(b) == [8, 9]
    with pytest.raises(DomainError):
        antipodal_regions(12)


def test_mutual_information_is_nonnegative():
    record = estimate_mutual_information(make_config(p=0.2), 4)
    assert np.all(record.samples >= 0)
    assert record.meta["region_denominator"] == 8


def test_mutual_information_rejects_indivisible_sizes():
    with pytest.raises(DomainError):
        estimate_mutual_information(make_config(L=12), 2)


def test_purification_at_full_measurement_rate():
    record = estimate_purification_time(make_config(p=1.0), 5)
    assert record.samples.tolist() == [1.0] * 5
    assert record.censored_fraction == 0.0
    assert record.summary().value == 1.0


def test_purification_without_measurements_is_censored(caplog):
    with caplog.at_level(logging.WARNING):
        record = estimate_purification_time(make_config(p=0.0), 3, depth_cap=12)
    assert record.censored_fraction == 1.0
    assert np.all(record.samples == 12)
    assert record.depth_cap == 12
    assert "censored" in caplog.text


def test_default_purification_cap_is_16_L():
    assert estimate_purification_time(make_config(p=1.0), 1).depth_cap == 128


def test_default_sample_times():
    assert default_sample_times(make_config(depth=1)) == [0, 1, 2, 3, 4, 5, 6, 7, 8]
    assert default_sample_times(make_config(L=16, depth=1)) == [0, 2, 4, 6, 8, 10, 12, 14, 16]


def test_global_entropy_without_measurements_stays_maximal():
    record = estimate_global_entropy_series(make_config(p=0.0), 2, sample_times=[0, 4, 16])
    assert record.times.tolist() == [0, 4, 16]
    assert np.all(record.samples == 8)


def test_global_entropy_series_is_non_increasing():
    record = estimate_global_entropy_series(make_config(p=0.15), 4)
    assert record.samples[:, 0].tolist() == [8.0] * 4
    assert np.all(np.diff(record.samples, axis=1) <= 0)


def test_sample_times_out_of_range_raise():
    with pytest.raises(DomainError):
        estimate_global_entropy_series(make_config(), 1, sample_times=[0, 1000])
