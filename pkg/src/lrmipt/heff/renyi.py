"""Second Rényi entropy from the ground state of the effective Hamiltonian.

``exp(-S_A) = ⟨I| ∏_{i∈A} σx_i |ψ⟩ / ⟨I|ψ⟩`` with the product reference state
``|I⟩ = ⊗_i [(√3+1)|↑⟩ + (√3-1)|↓⟩]/√2``.
"""

import logging
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from lrmipt.errors import DegenerateOverlapError, DomainError
from lrmipt.heff.hamiltonian import GroundState, HeffSpec, solve

logger = logging.getLogger(__name__)

OVERLAP_TOL = 1e-12
C_UP = (np.sqrt(3.0) + 1.0) / np.sqrt(2.0)
C_DOWN = (np.sqrt(3.0) - 1.0) / np.sqrt(2.0)


def reference_state(L: int) -> np.ndarray:
    """``|I⟩`` in the bit-ordered σz basis (bit set = spin down)."""
    downs = np.bitwise_count(np.arange(1 << L, dtype=np.uint64)).astype(np.int64)
    return C_UP ** (L - downs) * C_DOWN**downs


def _region_mask(L: int, region: Iterable[int]) -> int:
    mask = 0
    for q in set(int(q) for q in region):
        if not 0 <= q < L:
            raise DomainError(f"site {q} outside [0, {L})")
        mask |= 1 << q
    return mask


def renyi2_from_vector(psi: np.ndarray, L: int, region: Iterable[int]) -> float:
    mask = _region_mask(L, region)
    ref = reference_state(L)
    denominator = float(ref @ psi)
    if abs(denominator) < OVERLAP_TOL:
        raise DegenerateOverlapError(f"reference overlap {denominator:.3e} is below {OVERLAP_TOL:g}")
    if mask == 0:
        return 0.0
    flipped = psi[np.arange(psi.size) ^ mask]
    ratio = float(ref @ flipped) / denominator
    if ratio <= 0:
        raise DegenerateOverlapError(f"domain-wall matrix element ratio {ratio:.3e} is not positive")
    return float(-np.log(ratio))


def renyi2_entropy(spec: HeffSpec, region: Iterable[int], ground: Optional[GroundState] = None) -> float:
    """``S_A^(2)`` in nats for an arbitrary site subset ``region``."""
    gs = solve(spec) if ground is None else ground
    return renyi2_from_vector(gs.vector, spec.L, region)


def renyi2_profile(spec: HeffSpec, sizes: Optional[Sequence[int]] = None) -> List[Tuple[int, float]]:
    """``(|A|, S_A^(2))`` for contiguous regions ``A = [0, |A|)`` from one ground state."""
    gs = solve(spec)
    sizes = range(1, spec.L // 2 + 1) if sizes is None else sizes
    return [(int(a), renyi2_from_vector(gs.vector, spec.L, range(int(a)))) for a in sizes]

