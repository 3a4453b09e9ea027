from lrmipt.tableau.state import StabilizerState, MeasurementCase
from lrmipt.tableau.clifford import CliffordGate2Q, sample_clifford_2q
from lrmipt.circuit.config import CircuitConfig, MeasurementScheme
from lrmipt.circuit.trajectory import run_trajectory
from lrmipt.observables.record import EnsembleRecord, Observable
from lrmipt.observables.estimators import (
    estimate_global_entropy_series,
    estimate_half_chain,
    estimate_mutual_information,
    estimate_purification_time,
)
from lrmipt.scaling.data import CollapseData, CollapseForm, ScalingFit
from lrmipt.scaling.collapse import fit_collapse
from lrmipt.scaling.bootstrap import bootstrap_exponents
from lrmipt.heff.hamiltonian import HeffSpec
from lrmipt.heff.renyi import renyi2_entropy


__all__ = [
    "StabilizerState",
    "MeasurementCase",
    "CliffordGate2Q",
    "sample_clifford_2q",
    "CircuitConfig",
    "MeasurementScheme",
    "run_trajectory",
    "EnsembleRecord",
    "Observable",
    "estimate_global_entropy_series",
    "estimate_half_chain",
    "estimate_mutual_information",
    "estimate_purification_time",
    "CollapseData",
    "CollapseForm",
    "ScalingFit",
    "fit_collapse",
    "bootstrap_exponents",
    "HeffSpec",
    "renyi2_entropy",
]
