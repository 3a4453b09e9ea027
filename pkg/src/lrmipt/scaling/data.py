import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from lrmipt.errors import CollapseError
from lrmipt.observables import EnsembleRecord, Observable

logger = logging.getLogger(__name__)

DY_FLOOR = 1e-6


class CollapseForm(str, Enum):
    TAU_P = "tau_p"  # Y = y / L**z
    IAB = "iab"  # Y = y / L**beta
    GLOBAL_S = "global_s"  # S(t) slices at t = c·L**z

    @property
    def exponent_name(self) -> str:
        return "beta" if self is CollapseForm.IAB else "z"

    @property
    def observable(self) -> Observable:
        return {
            CollapseForm.TAU_P: Observable.PURIFICATION_TIME,
            CollapseForm.IAB: Observable.MUTUAL_INFORMATION,
            CollapseForm.GLOBAL_S: Observable.GLOBAL_ENTROPY,
        }[self]


@dataclass
class CollapseData:
    """
    Points ``(L, p, y, dy)`` for a scaling collapse; ``t`` is set for ``global_s`` data.

    Error bars below ``DY_FLOOR`` are raised to it so every point carries a finite weight.
    """

    L: np.ndarray
    p: np.ndarray
    y: np.ndarray
    dy: np.ndarray
    t: Optional[np.ndarray] = None

    def __post_init__(self):
        self.L = np.asarray(self.L, dtype=np.int64).reshape(-1)
        self.p = np.asarray(self.p, dtype=np.float64).reshape(-1)
        self.y = np.asarray(self.y, dtype=np.float64).reshape(-1)
        self.dy = np.maximum(np.abs(np.asarray(self.dy, dtype=np.float64).reshape(-1)), DY_FLOOR)
        arrays = [self.L, self.p, self.y, self.dy]
        if self.t is not None:
            self.t = np.asarray(self.t, dtype=np.float64).reshape(-1)
            arrays.append(self.t)
        if len({a.size for a in arrays}) != 1:
            raise CollapseError("collapse columns have different lengths")
        if not np.all(np.isfinite(self.y)):
            raise CollapseError("collapse values must be finite")

    def __len__(self) -> int:
        return int(self.L.size)

    @property
    def sizes(self) -> np.ndarray:
        return np.unique(self.L)

    def subset(self, mask: np.ndarray) -> "CollapseData":
        t = None if self.t is None else self.t[mask]
        return CollapseData(self.L[mask], self.p[mask], self.y[mask], self.dy[mask], t)

    def same_values(self, other: "CollapseData") -> bool:
        return (
            len(self) == len(other)
            and np.array_equal(self.L, other.L)
            and np.array_equal(self.p, other.p)
            and np.array_equal(self.y, other.y)
            and np.array_equal(self.dy, other.dy)
        )

    @classmethod
    def from_records(
        cls,
        records: Sequence[EnsembleRecord],
        form: CollapseForm,
        exclude_censored: bool = True,
    ) -> "CollapseData":
        """Summaries of ensemble records as collapse points.

        ``tau_p`` cells with a censored majority carry only a lower bound and are left out.
        """
        form = CollapseForm(form)
        cols: Dict[str, List[float]] = {k: [] for k in ("L", "p", "y", "dy", "t")}
        for rec in records:
            if rec.n == 0:
                continue
            summary = rec.summary()
            if exclude_censored and summary.censored_majority:
                logger.warning("excluding censored-majority cell L=%d p=%g", rec.L, rec.p)
                continue
            if form is CollapseForm.GLOBAL_S:
                for t, y, dy in zip(rec.times, np.atleast_1d(summary.value), np.atleast_1d(summary.stderr)):
                    cols["L"].append(rec.L)
                    cols["p"].append(rec.p)
                    cols["t"].append(float(t))
                    cols["y"].append(float(y))
                    cols["dy"].append(float(dy))
            else:
                cols["L"].append(rec.L)
                cols["p"].append(rec.p)
                cols["y"].append(float(summary.value))
                cols["dy"].append(float(summary.stderr))
        t = np.array(cols["t"]) if form is CollapseForm.GLOBAL_S else None
        return cls(np.array(cols["L"]), np.array(cols["p"]), np.array(cols["y"]), np.array(cols["dy"]), t)


@dataclass
class ScalingFit:
    """
    Result of a collapse fit.

    - exponent: ``z`` for ``tau_p`` / ``global_s``, ``beta`` for ``iab``
    - bootstrap: replicate parameters, shape ``(n_boot - n_dropped, 3)``
    - ci95: parameter name -> (low, high), always bracketing the point estimate
    """

    form: CollapseForm
    p_c: float
    nu: float
    exponent: float
    quality: float
    converged: bool = True
    flagged: bool = False
    bootstrap: np.ndarray = field(default_factory=lambda: np.empty((0, 3)))
    ci95: Dict[str, Tuple[float, float]] = field(default_factory=dict)
    n_boot: int = 0
    n_dropped: int = 0

    @property
    def params(self) -> Tuple[float, float, float]:
        return self.p_c, self.nu, self.exponent

    @property
    def z(self) -> Optional[float]:
        return None if self.form is CollapseForm.IAB else self.exponent

    @property
    def beta(self) -> Optional[float]:
        return self.exponent if self.form is CollapseForm.IAB else None

    def to_record(self) -> dict:
        return {
            "form": CollapseForm(self.form).value,
            "p_c": self.p_c,
            "nu": self.nu,
            "exponent": self.exponent,
            "exponent_name": CollapseForm(self.form).exponent_name,
            "quality": self.quality,
            "ci95": {k: [lo, hi] for k, (lo, hi) in self.ci95.items()},
            "n_boot": self.n_boot,
            "n_dropped": self.n_dropped,
            "flagged": self.flagged,
            "converged": self.converged,
        }


@dataclass
class PowerFit:
    amplitude: float
    mu: float
    residual: float
    L_min: int
    n_points: int

    def to_record(self) -> dict:
        return {
            "amplitude": self.amplitude,
            "mu": self.mu,
            "residual": self.residual,
            "L_min": self.L_min,
            "n_points": self.n_points,
        }
