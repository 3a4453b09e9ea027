import logging
from typing import Callable, List, TypeVar

import numpy as np
from joblib import Parallel, delayed

from lrmipt.circuit import CircuitConfig, trajectory_rng

logger = logging.getLogger(__name__)

T = TypeVar("T")
Worker = Callable[[CircuitConfig, np.random.Generator], T]


def _run_one(worker: Worker, config: CircuitConfig, seed: int, index: int):
    return worker(config, trajectory_rng(seed, index))


def run_ensemble(worker: Worker, config: CircuitConfig, n: int, seed: int, workers: int = 1) -> List[T]:
    """Run ``worker`` for trajectories ``0 … n-1``; results come back in index order.

    Trajectory ``i`` always draws from stream ``i`` of ``seed``, so the worker count
    never changes the results.
    """
    if n <= 0:
        return []
    logger.debug("ensemble of %d trajectories on %d worker(s), seed=%d", n, workers, seed)
    if workers == 1:
        return [_run_one(worker, config, seed, i) for i in range(n)]
    return Parallel(n_jobs=workers)(delayed(_run_one)(worker, config, seed, i) for i in range(n))
