# lrmipt/observables/__init__.py

from .record import EnsembleRecord, Observable, Summary
from .ensemble import run_ensemble
from .estimators import (
    antipodal_regions,
    default_sample_times,
    estimate_global_entropy_series,
    estimate_half_chain,
    estimate_mutual_information,
    estimate_purification_time,
)


__all__ = [
    "EnsembleRecord",
    "Observable",
    "Summary",
    "run_ensemble",
    "antipodal_regions",
    "default_sample_times",
    "estimate_global_entropy_series",
    "estimate_half_chain",
    "estimate_mutual_information",
    "estimate_purification_time",
]
