"""Ensemble estimators for the half-chain entropy, antipodal mutual information,
purification time and global entropy series."""

import logging
import math
from functools import partial
from typing import Optional, Sequence, Tuple

import numpy as np

from lrmipt.circuit import (
    CircuitConfig,
    EntropyRecorder,
    InitialState,
    PurificationWatcher,
    WindowAverager,
    cell_seed,
    run_trajectory,
    steady_state_steps,
)
from lrmipt.errors import DomainError
from lrmipt.observables.ensemble import run_ensemble
from lrmipt.observables.record import EnsembleRecord, Observable

logger = logging.getLogger(__name__)


def antipodal_regions(L: int, denominator: int = 8) -> Tuple[range, range]:
    """Two contiguous regions of ``L/denominator`` sites whose starts are ``L/2`` apart."""
    if denominator < 2 or L % denominator:
        raise DomainError(f"L={L} is not divisible by the region denominator {denominator}")
    m = L // denominator
    return range(0, m), range(L // 2, L // 2 + m)


def default_sample_times(config: CircuitConfig) -> list:
    stride = max(1, config.L // 8)
    return list(range(0, config.n_steps + 1, stride))


def _seed_for(config: CircuitConfig, observable: Observable, seed: Optional[int]) -> int:
    if seed is not None:
        return seed
    return cell_seed(config.seed, config.L, config.alpha, config.p, observable.value)


# ----------------------------------------------------------------------
# Per-trajectory workers
# ----------------------------------------------------------------------


def _half_chain(config: CircuitConfig, rng: np.random.Generator) -> float:
    half = range(config.L // 2)
    window = WindowAverager(steady_state_steps(config), lambda s: s.subsystem_entropy(half))
    run_trajectory(config, InitialState.PRODUCT_ZERO, [window], rng)
    return window.mean


def _mutual_information(config: CircuitConfig, rng: np.random.Generator, denominator: int) -> float:
    a, b = antipodal_regions(config.L, denominator)
    window = WindowAverager(steady_state_steps(config), lambda s: s.mutual_information(a, b))
    run_trajectory(config, InitialState.PRODUCT_ZERO, [window], rng)
    return window.mean


def _purification_time(config: CircuitConfig, rng: np.random.Generator, depth_cap: int) -> Tuple[int, bool]:
    watcher = PurificationWatcher(depth_cap)
    run_trajectory(config, InitialState.SCRAMBLED_SINGLE_MIXED, [watcher], rng)
    return watcher.value, watcher.censored


def _global_entropy(config: CircuitConfig, rng: np.random.Generator, times: Sequence[int]) -> np.ndarray:
    recorder = EntropyRecorder(times)
    run_trajectory(config, InitialState.MAXIMALLY_MIXED, [recorder], rng)
    return recorder.values()


# ----------------------------------------------------------------------
# Estimators
# ----------------------------------------------------------------------


def estimate_half_chain(
    config: CircuitConfig, n: int, workers: int = 1, seed: Optional[int] = None
) -> EnsembleRecord:
    """Steady-state-window average of ``S_{L/2}`` from a product start, ``n`` trajectories."""
    obs = Observable.HALF_CHAIN
    values = run_ensemble(_half_chain, config, n, _seed_for(config, obs, seed), workers)
    return EnsembleRecord(config.L, config.alpha, config.p, obs, np.array(values, dtype=np.float64))


def estimate_mutual_information(
    config: CircuitConfig,
    n: int,
    workers: int = 1,
    seed: Optional[int] = None,
    region_denominator: int = 8,
) -> EnsembleRecord:
    antipodal_regions(config.L, region_denominator)
    obs = Observable.MUTUAL_INFORMATION
    worker = partial(_mutual_information, denominator=region_denominator)
    values = run_ensemble(worker, config, n, _seed_for(config, obs, seed), workers)
    return EnsembleRecord(
        config.L,
        config.alpha,
        config.p,
        obs,
        np.array(values, dtype=np.float64),
        meta={"region_denominator": region_denominator},
    )


def estimate_purification_time(
    config: CircuitConfig,
    n: int,
    depth_cap: Optional[int] = None,
    workers: int = 1,
    seed: Optional[int] = None,
) -> EnsembleRecord:
    """
    Steps until a scrambled single mixed qubit purifies. Trajectories still mixed at
    ``depth_cap`` (default ``16L``) record ``depth_cap`` and are flagged as censored.
    """
    cap = 16 * config.L if depth_cap is None else int(depth_cap)
    if cap < 1:
        raise DomainError("depth_cap must be positive")
    run_config = config.model_copy(update={"depth": math.ceil(cap / config.L)})
    obs = Observable.PURIFICATION_TIME
    worker = partial(_purification_time, depth_cap=cap)
    results = run_ensemble(worker, run_config, n, _seed_for(config, obs, seed), workers)
    record = EnsembleRecord(
        config.L,
        config.alpha,
        config.p,
        obs,
        np.array([v for v, _ in results], dtype=np.float64),
        censored=np.array([c for _, c in results], dtype=bool),
        depth_cap=cap,
    )
    if record.censored_fraction > 0.5:
        logger.warning(
            "tau_p at L=%d alpha=%g p=%g: %.0f%% censored, median reported as >= %d",
            config.L,
            config.alpha,
            config.p,
            100 * record.censored_fraction,
            cap,
        )
    return record


def estimate_global_entropy_series(
    config: CircuitConfig,
    n: int,
    sample_times: Optional[Sequence[int]] = None,
    workers: int = 1,
    seed: Optional[int] = None,
) -> EnsembleRecord:
    """``S(t)`` from a maximally mixed start at ``sample_times`` (default: multiples of ``L/8``)."""
    times = default_sample_times(config) if sample_times is None else sorted(set(int(t) for t in sample_times))
    if not times:
        raise DomainError("at least one sample time is required")
    bad = [t for t in times if not 0 <= t <= config.n_steps]
    if bad:
        raise DomainError(f"sample times outside [0, {config.n_steps}]: {bad}")
    obs = Observable.GLOBAL_ENTROPY
    worker = partial(_global_entropy, times=times)
    rows = run_ensemble(worker, config, n, _seed_for(config, obs, seed), workers)
    samples = np.array(rows, dtype=np.float64).reshape(len(rows), len(times))
    return EnsembleRecord(config.L, config.alpha, config.p, obs, samples, times=np.array(times))
