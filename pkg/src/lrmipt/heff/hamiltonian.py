"""Long-range quantum Ising Hamiltonian

    H = Σ_{i<j} -J/|i-j|**alpha · (3 σz_i σz_j - σx_i σx_j) - h Σ_j σx_j

on an open chain, in the σz basis with site ``q`` stored in bit ``q`` of the basis index.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import scipy.sparse as sparse
from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator
from scipy.linalg import eigh
from scipy.sparse.linalg import eigsh
from scipy.special import zeta

from lrmipt.errors import ConvergenceError, DomainError

logger = logging.getLogger(__name__)

L_MAX = 14
DENSE_MAX = 8
RESIDUAL_TOL = 1e-10
DEGENERACY_TOL = 1e-8


class HeffSpec(BaseModel):
    """Parameters of the effective Hamiltonian; the transverse field ``h`` is derived."""

    model_config = ConfigDict(frozen=True)

    L: int = Field(ge=2)
    J: float = Field(ge=0.0, allow_inf_nan=False)
    Gamma: float = Field(ge=0.0, allow_inf_nan=False)
    alpha: float = Field(gt=1.0, allow_inf_nan=False)

    @model_validator(mode="after")
    def _check(self) -> "HeffSpec":
        if self.J == 0 and self.Gamma == 0:
            raise ValueError("J and Gamma cannot both vanish")
        return self

    @computed_field
    @property
    def h(self) -> float:
        """``Γ/3 + Σ_{r≥1} J/(9 r**alpha) = Γ/3 + J·ζ(alpha)/9``."""
        return self.Gamma / 3 + self.J * float(zeta(self.alpha, 1)) / 9


def build_hamiltonian(spec: HeffSpec) -> sparse.csr_matrix:
    L = spec.L
    if not 2 <= L <= L_MAX:
        raise DomainError(f"L must lie in [2, {L_MAX}], got {L}")
    dim = 1 << L
    index = np.arange(dim, dtype=np.int64)
    spins = 1 - 2 * ((index[:, None] >> np.arange(L)) & 1)  # +1 up, -1 down

    diagonal = np.zeros(dim)
    rows, cols, data = [index], [index], []
    for i in range(L):
        for j in range(i + 1, L):
            coupling = spec.J / float(j - i) ** spec.alpha
            diagonal -= 3 * coupling * spins[:, i] * spins[:, j]
            rows.append(index ^ ((1 << i) | (1 << j)))
            cols.append(index)
            data.append(np.full(dim, coupling))
    data.insert(0, diagonal)
    for j in range(L):
        rows.append(index ^ (1 << j))
        cols.append(index)
        data.append(np.full(dim, -spec.h))

    H = sparse.coo_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))), shape=(dim, dim)
    ).tocsr()
    H.sum_duplicates()
    H.eliminate_zeros()
    return H


def to_dense(spec: HeffSpec) -> np.ndarray:
    if spec.L > DENSE_MAX:
        raise DomainError(f"dense matrices are limited to L <= {DENSE_MAX}")
    return build_hamiltonian(spec).toarray()


def parity_apply(psi: np.ndarray) -> np.ndarray:
    """``∏_i σx_i ψ``: flips every bit of the basis index."""
    return psi[::-1]


def even_sector(H) -> np.ndarray | sparse.csr_matrix:
    """``H`` restricted to states with ``∏σx = +1`` in the basis ``(|b⟩ + |~b⟩)/√2``, ``b < dim/2``."""
    dim = H.shape[0]
    half = dim // 2
    flipped = dim - 1 - np.arange(half)
    if sparse.issparse(H):
        H = H.tocsr()
        return (H[:half, :half] + H[:half, :][:, flipped]).tocsr()
    return H[:half, :half] + H[:half][:, flipped]


def _lowest(H, k: int) -> Tuple[np.ndarray, np.ndarray]:
    dim = H.shape[0]
    if dim <= 1 << DENSE_MAX or dim <= k + 1:
        dense = H.toarray() if sparse.issparse(H) else np.asarray(H)
        vals, vecs = eigh(dense)
        return vals[:k], vecs[:, :k]
    v0 = np.random.default_rng(12345).standard_normal(dim)
    vals, vecs = eigsh(H, k=k, which="SA", v0=v0, tol=0)
    order = np.argsort(vals)
    return vals[order], vecs[:, order]


def _residual(H, energy: float, psi: np.ndarray) -> float:
    return float(np.linalg.norm(H @ psi - energy * psi))


def _fix_sign(psi: np.ndarray) -> np.ndarray:
    pivot = int(np.argmax(np.abs(psi)))
    return psi if psi[pivot] >= 0 else -psi


@dataclass
class GroundState:
    energy: float
    vector: np.ndarray
    gap: Optional[float]
    sector: str
    residual: float

    @property
    def parity(self) -> float:
        return float(self.vector @ parity_apply(self.vector))


def _even_state(H) -> Tuple[float, np.ndarray, Optional[float]]:
    block = even_sector(H)
    vals, vecs = _lowest(block, min(2, block.shape[0]))
    phi = vecs[:, 0]
    gap = float(vals[1] - vals[0]) if vals.size > 1 else None
    return float(vals[0]), np.concatenate([phi, phi[::-1]]) / np.sqrt(2), gap


def lowest_state(H, sector: str = "full") -> GroundState:
    """Lowest eigenpair of ``H`` over all states or over the ``∏σx = +1`` sector.

    With ``sector="full"`` a (near-)degenerate doublet is resolved in the even sector;
    ``gap`` is always measured within the sector the state was taken from.
    """
    if sector not in ("full", "even"):
        raise DomainError(f"unknown sector {sector!r}")
    dim = H.shape[0]
    if dim == 1:
        energy = float(H[0, 0])
        return GroundState(energy, np.ones(1), None, "full", 0.0)
    if sector == "even":
        energy, psi, gap = _even_state(H)
    else:
        vals, vecs = _lowest(H, 2)
        energy, psi = float(vals[0]), vecs[:, 0]
        gap = float(vals[1] - vals[0])
        if gap < DEGENERACY_TOL:
            logger.debug("degenerate ground doublet (gap=%.2e); using the even sector", gap)
            energy, psi, _ = _even_state(H)
            sector = "even"
    psi = _fix_sign(np.real(psi))
    residual = _residual(H, energy, psi)
    if residual >= RESIDUAL_TOL:
        raise ConvergenceError("ground state did not converge", residual)
    return GroundState(energy, psi, gap, sector, residual)


def ground_state(H) -> Tuple[float, np.ndarray]:
    """``(energy, state vector)`` of the lowest eigenpair, residual below ``1e-10``."""
    gs = lowest_state(H)
    return gs.energy, gs.vector


def solve(spec: HeffSpec) -> GroundState:
    """Lowest state of ``H_eff`` with ``∏σx = +1``.

    The reference-state ratio for the whole chain equals the parity eigenvalue, so only
    the even sector gives ``S = 0`` for ``A`` = every site.
    """
    gs = lowest_state(build_hamiltonian(spec), sector="even")
    logger.info(
        "H_eff L=%d J=%g Gamma=%g alpha=%g: E0=%.10f gap=%s",
        spec.L,
        spec.J,
        spec.Gamma,
        spec.alpha,
        gs.energy,
        "n/a" if gs.gap is None else f"{gs.gap:.3e}",
    )
    return gs
