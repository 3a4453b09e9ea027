import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Protocol, Sequence

import numpy as np

from lrmipt.circuit.config import CircuitConfig, InitialState
from lrmipt.circuit.layers import GateRecord, apply_measurement_layer, apply_unitary_layer
from lrmipt.tableau import StabilizerState

logger = logging.getLogger(__name__)


class TrajectoryHook(Protocol):
    """Called with ``(step, state)``; returning ``True`` ends the trajectory."""

    def __call__(self, step: int, state: StabilizerState) -> Optional[bool]: ...


@dataclass
class TrajectoryRecord:
    """Outcome of one trajectory; observables live in the hooks that were passed in."""

    steps_run: int
    stopped_early: bool
    final_state: StabilizerState
    measurements: int = 0
    outcome_counts: Dict[int, int] = field(default_factory=dict)
    gates: Optional[List[GateRecord]] = None
    outcomes: Optional[List[List[tuple]]] = None


def steady_state_steps(config: CircuitConfig) -> List[int]:
    """Steps in the final quarter of the run that are multiples of ``L/4``."""
    n = config.n_steps
    stride = max(1, config.L // 4)
    start = n - n // 4
    steps = [t for t in range(start + 1, n + 1) if t % stride == 0]
    return steps or [n]


def prepare_initial_state(
    config: CircuitConfig, initial: InitialState, rng: np.random.Generator
) -> StabilizerState:
    if initial is InitialState.PRODUCT_ZERO:
        return StabilizerState.zero(config.L)
    if initial is InitialState.MAXIMALLY_MIXED:
        return StabilizerState.maximally_mixed(config.L)
    # Localized mixed qubit, then delocalized so no single measurement catches it early.
    return StabilizerState.single_mixed(config.L, 0).scramble(rng, config.scramble_method)


def run_trajectory(
    config: CircuitConfig,
    initial: InitialState,
    hooks: Sequence[TrajectoryHook] = (),
    rng: Optional[np.random.Generator] = None,
    keep_history: bool = False,
) -> TrajectoryRecord:
    """
    Prepare ``initial`` and alternate unitary and measurement layers for ``config.n_steps``
    time steps. Every hook sees step 0 (the prepared state) and then each completed step;
    the run stops early as soon as any hook returns ``True``.
    """
    initial = InitialState(initial)
    if rng is None:
        rng = np.random.default_rng(config.seed)
    state = prepare_initial_state(config, initial, rng)
    if config.debug:
        state.check_invariants()

    gates: Optional[List[GateRecord]] = [] if keep_history else None
    history: Optional[List[List[tuple]]] = [] if keep_history else None
    counts: Counter = Counter()
    measurements = 0

    if _notify(hooks, 0, state):
        return TrajectoryRecord(0, True, state, gates=gates, outcomes=history)

    stopped = False
    step = 0
    for step in range(1, config.n_steps + 1):
        apply_unitary_layer(state, config, rng, gates)
        if config.debug:
            state.check_invariants()
        _, outcomes = apply_measurement_layer(state, config, rng)
        if config.debug:
            state.check_invariants()
        measurements += len(outcomes)
        counts.update(o for _, o in outcomes)
        if history is not None:
            history.append(outcomes)
        if _notify(hooks, step, state):
            stopped = True
            break

    logger.debug(
        "trajectory L=%d alpha=%g p=%g: %d steps, S=%d%s",
        config.L,
        config.alpha,
        config.p,
        step,
        state.global_entropy(),
        " (stopped early)" if stopped else "",
    )
    return TrajectoryRecord(step, stopped, state, measurements, dict(counts), gates, history)


def _notify(hooks: Sequence[TrajectoryHook], step: int, state: StabilizerState) -> bool:
    stop = False
    for hook in hooks:
        if hook(step, state):
            stop = True
    return stop


# ----------------------------------------------------------------------
# Ready-made hooks
# ----------------------------------------------------------------------


class WindowAverager:
    """Averages ``measure(state)`` over a fixed set of steps."""

    def __init__(self, steps: Sequence[int], measure: Callable[[StabilizerState], float]):
        self.steps = frozenset(steps)
        self.measure = measure
        self.values: List[float] = []

    def __call__(self, step: int, state: StabilizerState) -> Optional[bool]:
        if step in self.steps:
            self.values.append(float(self.measure(state)))
        return None

    @property
    def mean(self) -> float:
        return float(np.mean(self.values)) if self.values else float("nan")


class PurificationWatcher:
    """Records the first step (≥ 1) at which the global entropy reaches zero and stops the run."""

    def __init__(self, depth_cap: int):
        self.depth_cap = depth_cap
        self.purified_at: Optional[int] = None

    def __call__(self, step: int, state: StabilizerState) -> Optional[bool]:
        if step >= 1 and state.global_entropy() == 0:
            self.purified_at = step
            return True
        return step >= self.depth_cap

    @property
    def censored(self) -> bool:
        return self.purified_at is None

    @property
    def value(self) -> int:
        return self.depth_cap if self.purified_at is None else self.purified_at


class EntropyRecorder:
    """Records the global entropy at requested steps; stops once the state is pure or the last time passed."""

    def __init__(self, times: Sequence[int]):
        self.times = sorted(set(int(t) for t in times))
        self.series: Dict[int, int] = {}

    def __call__(self, step: int, state: StabilizerState) -> Optional[bool]:
        if step in self.times:
            self.series[step] = state.global_entropy()
        if state.global_entropy() == 0:
            for t in self.times:
                if t >= step:
                    self.series.setdefault(t, 0)
            return True
        return bool(self.times) and step >= self.times[-1]

    def values(self) -> np.ndarray:
        return np.array([self.series.get(t, 0) for t in self.times], dtype=np.int64)
