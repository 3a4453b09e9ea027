"""Single-layer crossing-count model for the half-chain cut.

A gate crosses the cut when its endpoints lie in different halves ``[0, L/2)`` and
``[L/2, L)`` of the ring. For distance ``r ≤ L/2`` and either direction, exactly ``2r``
of the ``L`` starting sites produce a crossing gate.
"""

from typing import Optional, Sequence

import numpy as np

from lrmipt.circuit import distance_sampler
from lrmipt.scaling.data import PowerFit
from lrmipt.scaling.powerlaw import fit_power_law


def crossing_probability(L: int, alpha: float) -> float:
    probs = distance_sampler(L, float(alpha)).probabilities()
    r = np.arange(1, probs.size + 1)
    return float(np.sum(probs * 2 * r) / L)


def expected_crossings(L: int, alpha: float, gates_per_layer: Optional[int] = None) -> float:
    """Expected number of gates in one unitary layer that straddle the half-chain cut."""
    gates = L // 2 if gates_per_layer is None else gates_per_layer
    return gates * crossing_probability(L, alpha)


def enumerate_crossings(L: int, alpha: float, gates_per_layer: Optional[int] = None) -> float:
    """Same quantity by explicit summation over every ``(i, r, ±)`` configuration."""
    gates = L // 2 if gates_per_layer is None else gates_per_layer
    probs = distance_sampler(L, float(alpha)).probabilities()
    half = L // 2
    total = 0.0
    for i in range(L):
        for r, pr in enumerate(probs, start=1):
            for direction in (1, -1):
                j = (i + direction * r) % L
                if (i < half) != (j < half):
                    total += pr / (2 * L)
    return gates * total


def crossing_exponent(Ls: Sequence[int], alpha: float, gates_per_layer: Optional[int] = None) -> PowerFit:
    """Power-law fit of ``expected_crossings`` against ``L``."""
    return fit_power_law([(L, expected_crossings(L, alpha, gates_per_layer)) for L in Ls])
