# lrmipt/heff/__init__.py

from .hamiltonian import (
    GroundState,
    HeffSpec,
    build_hamiltonian,
    even_sector,
    ground_state,
    lowest_state,
    parity_apply,
    solve,
    to_dense,
)
from .renyi import (
    reference_state,
    renyi2_entropy,
    renyi2_from_vector,
    renyi2_profile,
)


__all__ = [
    "GroundState",
    "HeffSpec",
    "build_hamiltonian",
    "even_sector",
    "ground_state",
    "lowest_state",
    "parity_apply",
    "solve",
    "to_dense",
    "reference_state",
    "renyi2_entropy",
    "renyi2_from_vector",
    "renyi2_profile",
]
