import logging
from typing import Iterable, Optional, Tuple

import numpy as np

from lrmipt.errors import FitError
from lrmipt.scaling.data import PowerFit

logger = logging.getLogger(__name__)


def fit_power_law(points: Iterable[Tuple[float, float]], L_min: Optional[int] = None) -> PowerFit:
    """Least-squares line through ``(log L, log S)``; points with ``S <= 0`` are skipped."""
    arr = np.asarray(list(points), dtype=np.float64).reshape(-1, 2)
    L, S = arr[:, 0], arr[:, 1]
    lower = 0.0 if L_min is None else float(L_min)
    in_range = L >= lower
    keep = in_range & (S > 0) & np.isfinite(S)
    skipped = int(np.count_nonzero(in_range & ~keep))
    if skipped:
        logger.debug("power-law fit skips %d non-positive points", skipped)
    if np.count_nonzero(keep) < 3:
        raise FitError(f"a power-law fit needs 3 positive points with L >= {lower:g}")
    logL, logS = np.log(L[keep]), np.log(S[keep])
    mu, log_a = np.polyfit(logL, logS, 1)
    residual = float(np.sum((logS - (log_a + mu * logL)) ** 2))
    return PowerFit(float(np.exp(log_a)), float(mu), residual, int(L[keep].min()), int(np.count_nonzero(keep)))
