from typing import List, Optional, Tuple

import numpy as np

from lrmipt.circuit.config import CircuitConfig, MeasurementScheme
from lrmipt.circuit.distance import distance_sampler
from lrmipt.errors import DomainError
from lrmipt.tableau import CliffordGate2Q, StabilizerState, sample_clifford_2q

GateRecord = Tuple[CliffordGate2Q, int, int]


def sample_gate_sites(config: CircuitConfig, rng: np.random.Generator) -> Tuple[int, int]:
    """A site ``i`` uniform on the ring and its partner at a power-law distance."""
    L = config.L
    i = int(rng.integers(L))
    r = distance_sampler(L, config.alpha).sample(rng)
    direction = 1 if rng.integers(2) else -1
    return i, (i + direction * r) % L


def apply_unitary_layer(
    state: StabilizerState,
    config: CircuitConfig,
    rng: np.random.Generator,
    record: Optional[List[GateRecord]] = None,
) -> StabilizerState:
    """Apply ``config.n_gates`` random gates in sequence; gates may share qubits."""
    if state.num_qubits != config.L:
        raise DomainError(f"state has {state.num_qubits} qubits, config expects {config.L}")
    for _ in range(config.n_gates):
        i, j = sample_gate_sites(config, rng)
        gate = sample_clifford_2q(rng)
        state.apply_gate(gate, i, j)
        if record is not None:
            record.append((gate, i, j))
    return state


def floyd_sample(n: int, m: int, rng: np.random.Generator) -> np.ndarray:
    """``m`` distinct integers from ``[0, n)``, uniformly, in ascending order."""
    if not 0 <= m <= n:
        raise DomainError(f"cannot draw {m} distinct values from {n}")
    chosen = set()
    for j in range(n - m, n):
        t = int(rng.integers(j + 1))
        chosen.add(j if t in chosen else t)
    return np.array(sorted(chosen), dtype=np.int64)


def choose_measured_sites(config: CircuitConfig, rng: np.random.Generator) -> np.ndarray:
    if config.measurement_scheme is MeasurementScheme.FIXED_COUNT:
        return floyd_sample(config.L, config.n_measured, rng)
    return np.flatnonzero(rng.random(config.L) < config.p)


def apply_measurement_layer(
    state: StabilizerState, config: CircuitConfig, rng: np.random.Generator
) -> Tuple[StabilizerState, List[Tuple[int, int]]]:
    """Measure ``Z`` on the chosen sites in ascending order; returns ``(site, outcome)`` pairs."""
    outcomes = []
    for site in choose_measured_sites(config, rng):
        result = state.measure_z(int(site), rng)
        outcomes.append((int(site), result.outcome))
    return state, outcomes
