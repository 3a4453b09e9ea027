# lrmipt/scaling/__init__.py

from .data import DY_FLOOR, CollapseData, CollapseForm, PowerFit, ScalingFit
from .collapse import (
    TIME_SLICES,
    CollapseParams,
    SearchGrid,
    collapse_quality,
    fit_collapse,
    global_entropy_check,
    rescale,
)
from .bootstrap import bootstrap_exponents, default_subsample
from .powerlaw import fit_power_law
from .crossings import crossing_exponent, crossing_probability, enumerate_crossings, expected_crossings


__all__ = [
    "DY_FLOOR",
    "CollapseData",
    "CollapseForm",
    "PowerFit",
    "ScalingFit",
    "TIME_SLICES",
    "CollapseParams",
    "SearchGrid",
    "collapse_quality",
    "fit_collapse",
    "global_entropy_check",
    "rescale",
    "bootstrap_exponents",
    "default_subsample",
    "fit_power_law",
    "crossing_exponent",
    "crossing_probability",
    "enumerate_crossings",
    "expected_crossings",
]
