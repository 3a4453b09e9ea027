from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional, Sequence

import numpy as np

# Standard error of the median of a normal sample: sqrt(pi/2) · σ/√n.
MEDIAN_SE_FACTOR = 1.2533


class Observable(str, Enum):
    HALF_CHAIN = "half_chain"
    MUTUAL_INFORMATION = "mutual_information"
    PURIFICATION_TIME = "purification_time"
    GLOBAL_ENTROPY = "global_entropy"

    @property
    def is_series(self) -> bool:
        return self is Observable.GLOBAL_ENTROPY


@dataclass
class Summary:
    value: np.ndarray | float
    stderr: np.ndarray | float
    statistic: str
    n: int
    censored_majority: bool = False


@dataclass
class EnsembleRecord:
    """
    Raw per-trajectory values of one observable at one ``(L, alpha, p)``.

    - samples: shape ``(n,)`` for scalars or ``(n, len(times))`` for series
    - censored: per-sample flag (purification time only); censored samples hold ``depth_cap``
    - the summary is always recomputed from the samples
    """

    L: int
    alpha: float
    p: float
    observable: Observable
    samples: np.ndarray
    times: Optional[np.ndarray] = None
    censored: Optional[np.ndarray] = None
    depth_cap: Optional[int] = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.observable = Observable(self.observable)
        self.samples = np.asarray(self.samples, dtype=np.float64)
        if self.observable.is_series:
            n_times = 0 if self.times is None else len(self.times)
            rows = 0 if self.samples.size == 0 else -1
            self.samples = self.samples.reshape(rows, n_times)
            self.times = np.asarray(self.times, dtype=np.int64)
        else:
            self.samples = self.samples.reshape(-1)
        if self.censored is not None:
            self.censored = np.asarray(self.censored, dtype=bool).reshape(-1)
            if self.censored.size != self.n:
                raise ValueError("censored flags must match the number of samples")

    @property
    def n(self) -> int:
        return int(self.samples.shape[0])

    @property
    def statistic(self) -> str:
        return "median" if self.observable is Observable.PURIFICATION_TIME else "mean"

    @property
    def censored_fraction(self) -> float:
        if self.censored is None or self.n == 0:
            return 0.0
        return float(self.censored.mean())

    def summary(self) -> Summary:
        n = self.n
        if n == 0:
            return Summary(float("nan"), float("nan"), self.statistic, 0)
        sigma = self.samples.std(axis=0, ddof=1) if n > 1 else np.zeros(self.samples.shape[1:])
        if self.statistic == "median":
            value = np.median(self.samples, axis=0)
            stderr = MEDIAN_SE_FACTOR * sigma / np.sqrt(n)
        else:
            value = self.samples.mean(axis=0)
            stderr = sigma / np.sqrt(n)
        majority = self.censored_fraction > 0.5
        if not self.observable.is_series:
            value, stderr = float(value), float(stderr)
        return Summary(value, stderr, self.statistic, n, majority)

    def resample(self, indices: Sequence[int]) -> "EnsembleRecord":
        idx = np.asarray(indices, dtype=np.int64)
        censored = None if self.censored is None else self.censored[idx]
        return replace(self, samples=self.samples[idx], censored=censored)
