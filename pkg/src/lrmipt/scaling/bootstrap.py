import logging
from dataclasses import replace
from typing import Optional, Sequence

import numpy as np
from joblib import Parallel, delayed
from tqdm import tqdm

from lrmipt.circuit import stream
from lrmipt.observables import EnsembleRecord, Observable
from lrmipt.scaling.collapse import SearchGrid, fit_collapse, refine
from lrmipt.scaling.data import CollapseData, CollapseForm, ScalingFit

logger = logging.getLogger(__name__)

PARAM_NAMES = ("p_c", "nu", "exponent")


def default_subsample(n: int) -> int:
    """Replicate size: ``n - 100`` for ensembles above 100 samples, never below ``n // 2``."""
    return max(n - 100, n // 2) if n > 100 else n


def _replicate(
    records: Sequence[EnsembleRecord],
    form: CollapseForm,
    data: CollapseData,
    point: ScalingFit,
    steps: np.ndarray,
    subsample: Optional[int],
    seed: int,
    index: int,
) -> Optional[np.ndarray]:
    rng = stream(seed, index)
    resampled = []
    for rec in records:
        if rec.n == 0:
            continue
        size = default_subsample(rec.n) if subsample is None else min(int(subsample), rec.n)
        rep = rec.resample(rng.integers(rec.n, size=size))
        if rec.observable is Observable.PURIFICATION_TIME and rep.censored_fraction > 0.5 and not rec.summary().censored_majority:
            return None
        resampled.append(rep)
    rep_data = CollapseData.from_records(resampled, form)
    if rep_data.same_values(data):
        return np.array(point.params)
    result = refine(rep_data, form, point.params, steps)
    if not np.isfinite(result.fun):
        return None
    return np.asarray(result.x, dtype=np.float64)


def bootstrap_exponents(
    records: Sequence[EnsembleRecord],
    form: CollapseForm,
    n_boot: int = 2500,
    subsample: Optional[int] = None,
    seed: int = 0,
    workers: int = 1,
    init_grid: Optional[SearchGrid] = None,
    point: Optional[ScalingFit] = None,
    progress: bool = False,
) -> ScalingFit:
    """
    Resample every cell's raw values with replacement, recompute the summaries and refit.

    Replicates in which a purification-time cell needed by the fit turns censored-majority
    are dropped; more than 10% drops flag the fit. ``ci95`` holds the 2.5/97.5 percentiles
    of the surviving replicates, widened where needed to contain the point estimate.
    """
    form = CollapseForm(form)
    grid = init_grid or SearchGrid()
    data = CollapseData.from_records(records, form)
    if point is None:
        point = fit_collapse(data, form, grid)
    steps = grid.steps()

    indices = range(n_boot)
    if progress:
        indices = tqdm(indices, desc=f"bootstrap {form.value}", unit="rep")
    args = (records, form, data, point, steps, subsample, seed)
    if workers == 1:
        results = [_replicate(*args, r) for r in indices]
    else:
        results = Parallel(n_jobs=workers)(delayed(_replicate)(*args, r) for r in indices)

    kept = [r for r in results if r is not None]
    n_dropped = n_boot - len(kept)
    reps = np.array(kept, dtype=np.float64).reshape(-1, 3)
    ci95 = {}
    for k, name in enumerate(PARAM_NAMES):
        estimate = point.params[k]
        if reps.shape[0]:
            lo, hi = np.percentile(reps[:, k], [2.5, 97.5])
        else:
            lo = hi = estimate
        ci95[name] = (float(min(lo, estimate)), float(max(hi, estimate)))

    flagged = point.flagged or n_dropped > 0.1 * n_boot
    if n_dropped:
        logger.warning("bootstrap dropped %d of %d replicates", n_dropped, n_boot)
    logger.info("bootstrap %s: %d replicates, ci95=%s", form.value, len(kept), ci95)
    return replace(point, bootstrap=reps, ci95=ci95, n_boot=n_boot, n_dropped=n_dropped, flagged=flagged)
