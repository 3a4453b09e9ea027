"""Power-law gate distances on a periodic chain."""

from functools import lru_cache

import numpy as np

from lrmipt.errors import DomainError


class DistanceSampler:
    """Draws ``r`` in ``[1, L/2]`` with ``P(r) = r**-alpha / Σ_s s**-alpha``."""

    def __init__(self, L: int, alpha: float):
        if L < 4:
            raise DomainError(f"L must be at least 4, got {L}")
        if alpha < 0:
            raise DomainError(f"alpha must be non-negative, got {alpha}")
        self.L = L
        self.alpha = alpha
        r = np.arange(1, L // 2 + 1, dtype=np.float64)
        weights = r ** (-alpha)
        self._probabilities = weights / weights.sum()
        self._cdf = np.cumsum(self._probabilities)
        self._cdf[-1] = 1.0

    @property
    def r_max(self) -> int:
        return self.L // 2

    def probabilities(self) -> np.ndarray:
        """``P(r)`` for ``r = 1 … L/2``."""
        return self._probabilities.copy()

    def sample(self, rng: np.random.Generator, size=None):
        u = rng.random(size)
        r = np.searchsorted(self._cdf, u, side="right") + 1
        return int(r) if size is None else r.astype(np.int64)


@lru_cache(maxsize=128)
def distance_sampler(L: int, alpha: float) -> DistanceSampler:
    return DistanceSampler(L, alpha)


def sample_distance(rng: np.random.Generator, L: int, alpha: float) -> int:
    return distance_sampler(L, float(alpha)).sample(rng)
