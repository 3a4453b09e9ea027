# lrmipt/circuit/__init__.py

from .config import CircuitConfig, InitialState, MeasurementScheme
from .distance import DistanceSampler, distance_sampler, sample_distance
from .layers import (
    apply_measurement_layer,
    apply_unitary_layer,
    choose_measured_sites,
    floyd_sample,
    sample_gate_sites,
)
from .seeding import cell_seed, stream, trajectory_rng
from .trajectory import (
    EntropyRecorder,
    PurificationWatcher,
    TrajectoryHook,
    TrajectoryRecord,
    WindowAverager,
    prepare_initial_state,
    run_trajectory,
    steady_state_steps,
)


__all__ = [
    "CircuitConfig",
    "InitialState",
    "MeasurementScheme",
    "DistanceSampler",
    "distance_sampler",
    "sample_distance",
    "apply_measurement_layer",
    "apply_unitary_layer",
    "choose_measured_sites",
    "floyd_sample",
    "sample_gate_sites",
    "cell_seed",
    "stream",
    "trajectory_rng",
    "EntropyRecorder",
    "PurificationWatcher",
    "TrajectoryHook",
    "TrajectoryRecord",
    "WindowAverager",
    "prepare_initial_state",
    "run_trajectory",
    "steady_state_steps",
]
