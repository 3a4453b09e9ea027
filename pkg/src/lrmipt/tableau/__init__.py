# lrmipt/tableau/__init__.py

from .pauli import PauliOperator
from .clifford import (
    CliffordGate2Q,
    CliffordGroup2Q,
    clifford_group_2q,
    random_clifford,
    sample_clifford_2q,
)
from .symplectic import is_symplectic, num_symplectic, random_symplectic, symplectic_from_index
from .state import (
    MeasurementCase,
    MeasurementOutcome,
    StabilizerState,
    apply_gate,
    global_entropy,
    measure_z,
    scramble_global,
    subsystem_entropy,
)


__all__ = [
    "PauliOperator",
    "CliffordGate2Q",
    "CliffordGroup2Q",
    "clifford_group_2q",
    "random_clifford",
    "sample_clifford_2q",
    "is_symplectic",
    "num_symplectic",
    "random_symplectic",
    "symplectic_from_index",
    "MeasurementCase",
    "MeasurementOutcome",
    "StabilizerState",
    "apply_gate",
    "global_entropy",
    "measure_z",
    "scramble_global",
    "subsystem_entropy",
]
