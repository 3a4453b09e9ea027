"""Two-qubit Clifford gates in the symplectic-plus-phase representation."""

from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np

from lrmipt.errors import DomainError
from lrmipt.tableau.gf2 import pauli_product, popcount
from lrmipt.tableau.pauli import PauliOperator
from lrmipt.tableau.symplectic import is_symplectic, num_symplectic, random_symplectic, symplectic_from_index

# A two-qubit Pauli (qubits a, b) is encoded in 4 bits: x_a, x_b, z_a, z_b.
_BASIS = (1, 2, 4, 8)  # X_a, X_b, Z_a, Z_b, matching the symplectic row order
_PRODUCT_ORDER = ((0, 1), (2, 4), (1, 2), (3, 8))  # (row, bit): X_a, Z_a, X_b, Z_b

_SINGLE = {
    (0, 0): np.eye(2, dtype=complex),
    (1, 0): np.array([[0, 1], [1, 0]], dtype=complex),
    (0, 1): np.array([[1, 0], [0, -1]], dtype=complex),
    (1, 1): np.array([[0, -1j], [1j, 0]], dtype=complex),
}


def _decode(v: int) -> Tuple[int, int, int, int]:
    return v & 1, (v >> 1) & 1, (v >> 2) & 1, (v >> 3) & 1


def pauli_matrix_2q(v: int) -> np.ndarray:
    """Dense 4×4 matrix of the Hermitian two-qubit Pauli with code ``v`` (qubit a first)."""
    xa, xb, za, zb = _decode(v)
    return np.kron(_SINGLE[(xa, za)], _SINGLE[(xb, zb)])


def _conjugation_tables(symplectics: np.ndarray, phases: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Images and sign flips of all 16 Paulis for a batch of ``(N, 4, 4)`` gates."""
    weights = np.array([1, 2, 4, 8], dtype=np.uint64)
    codes = (symplectics.astype(np.uint64) * weights).sum(axis=-1)  # (N, 4)
    img_x = (codes & np.uint64(3))[..., None]
    img_z = ((codes >> np.uint64(2)) & np.uint64(3))[..., None]
    img_p = phases.astype(np.int64)

    n = symplectics.shape[0]
    images = np.zeros((n, 16), dtype=np.uint8)
    signs = np.zeros((n, 16), dtype=np.uint8)
    for v in range(16):
        x_in = np.uint64(v & 3)
        z_in = np.uint64((v >> 2) & 3)
        acc_x = np.zeros((n, 1), dtype=np.uint64)
        acc_z = np.zeros((n, 1), dtype=np.uint64)
        acc_p = np.full(n, int(popcount(np.array([x_in & z_in]))), dtype=np.int64)
        for row, bit in _PRODUCT_ORDER:
            if v & bit:
                acc_x, acc_z, acc_p = pauli_product(
                    acc_x, acc_z, acc_p, img_x[:, row], img_z[:, row], img_p[:, row]
                )
        if np.any(acc_p % 2):
            raise DomainError("symplectic/phase data does not define a Hermitian-preserving gate")
        images[:, v] = (acc_x[:, 0] | (acc_z[:, 0] << np.uint64(2))).astype(np.uint8)
        signs[:, v] = (acc_p // 2).astype(np.uint8)
    return images, signs


@dataclass(frozen=True, eq=False)
class CliffordGate2Q:
    """
    Conjugation action of a two-qubit Clifford ``U``: ``U P U† = (-1)**signs[v] · P_images[v]``.

    - symplectic: 4×4 binary matrix; row r is the image of X_a, X_b, Z_a, Z_b
    - phases: exponent of i (0 or 2) carried by those four images
    - images / signs: lookup tables over all 16 Pauli codes, used by the tableau
    """

    symplectic: np.ndarray
    phases: np.ndarray
    images: np.ndarray
    signs: np.ndarray

    @classmethod
    def from_symplectic(cls, symplectic, phases=(0, 0, 0, 0)) -> "CliffordGate2Q":
        s = np.asarray(symplectic, dtype=np.uint8) & 1
        ph = np.asarray(phases, dtype=np.uint8) % 4
        if s.shape != (4, 4) or ph.shape != (4,):
            raise DomainError("a two-qubit gate needs a 4x4 matrix and 4 phases")
        if not is_symplectic(s):
            raise DomainError("matrix is not symplectic over GF(2)")
        images, signs = _conjugation_tables(s[None], ph[None])
        return cls(s, ph, images[0], signs[0])

    @classmethod
    def from_unitary(cls, unitary: np.ndarray, atol: float = 1e-8) -> "CliffordGate2Q":
        """Read the conjugation action off a dense 4×4 Clifford unitary."""
        u = np.asarray(unitary, dtype=complex)
        rows = np.zeros((4, 4), dtype=np.uint8)
        phases = np.zeros(4, dtype=np.uint8)
        for r, v in enumerate(_BASIS):
            image = u @ pauli_matrix_2q(v) @ u.conj().T
            for w in range(1, 16):
                coeff = np.trace(pauli_matrix_2q(w) @ image) / 4
                if abs(abs(coeff) - 1) < atol:
                    if abs(coeff.imag) > atol:
                        raise DomainError("unitary maps a Hermitian Pauli to an anti-Hermitian one")
                    rows[r] = _decode(w)
                    phases[r] = 0 if coeff.real > 0 else 2
                    break
            else:
                raise DomainError("unitary is not a Clifford operation")
        return cls.from_symplectic(rows, phases)

    # ------------------------------------------------------------------
    # Group operations
    # ------------------------------------------------------------------

    def conjugate(self, pauli: PauliOperator) -> PauliOperator:
        if pauli.num_qubits != 2:
            raise DomainError("two-qubit gates conjugate two-qubit Paulis")
        v = int(pauli.x_bits[0] | pauli.x_bits[1] << 1 | pauli.z_bits[0] << 2 | pauli.z_bits[1] << 3)
        xa, xb, za, zb = _decode(int(self.images[v]))
        return PauliOperator([xa, xb], [za, zb], pauli.phase + 2 * int(self.signs[v]))

    def compose(self, other: "CliffordGate2Q") -> "CliffordGate2Q":
        """The gate that applies ``self`` first and ``other`` second."""
        images = other.images[self.images]
        signs = self.signs ^ other.signs[self.images]
        return self._from_tables(images, signs)

    def inverse(self) -> "CliffordGate2Q":
        images = np.zeros(16, dtype=np.uint8)
        signs = np.zeros(16, dtype=np.uint8)
        images[self.images] = np.arange(16, dtype=np.uint8)
        signs[self.images] = self.signs
        return self._from_tables(images, signs)

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.images, np.arange(16)) and not self.signs.any())

    @classmethod
    def _from_tables(cls, images: np.ndarray, signs: np.ndarray) -> "CliffordGate2Q":
        s = np.array([_decode(int(images[v])) for v in _BASIS], dtype=np.uint8)
        ph = np.array([2 * int(signs[v]) for v in _BASIS], dtype=np.uint8)
        return cls(s, ph, np.asarray(images, np.uint8), np.asarray(signs, np.uint8))

    def __repr__(self) -> str:
        rows = ",".join("".join(map(str, r)) for r in self.symplectic)
        return f"CliffordGate2Q(symplectic=[{rows}], phases={self.phases.tolist()})"


@dataclass(frozen=True, eq=False)
class CliffordGroup2Q:
    symplectics: np.ndarray  # (11520, 4, 4)
    phases: np.ndarray  # (11520, 4)
    images: np.ndarray  # (11520, 16)
    signs: np.ndarray  # (11520, 16)

    def __len__(self) -> int:
        return int(self.images.shape[0])

    def gate(self, index: int) -> CliffordGate2Q:
        return CliffordGate2Q(
            self.symplectics[index], self.phases[index], self.images[index], self.signs[index]
        )


@lru_cache(maxsize=1)
def clifford_group_2q() -> CliffordGroup2Q:
    """All 11,520 two-qubit Cliffords modulo global phase (720 symplectics × 16 sign patterns)."""
    symplectics = np.stack([symplectic_from_index(i, 2) for i in range(num_symplectic(2))])
    sign_bits = (np.arange(16)[:, None] >> np.arange(4)) & 1
    all_s = np.repeat(symplectics, 16, axis=0)
    all_p = np.tile(2 * sign_bits, (symplectics.shape[0], 1)).astype(np.uint8)
    images, signs = _conjugation_tables(all_s, all_p)
    for arr in (all_s, all_p, images, signs):
        arr.setflags(write=False)
    return CliffordGroup2Q(all_s, all_p, images, signs)


def sample_clifford_2q(rng: np.random.Generator) -> CliffordGate2Q:
    """A gate drawn uniformly from the two-qubit Clifford group."""
    group = clifford_group_2q()
    return group.gate(int(rng.integers(len(group))))


def random_clifford(num_qubits: int, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    """Symplectic matrix and basis-image phases of a uniformly random n-qubit Clifford."""
    s = random_symplectic(num_qubits, rng)
    phases = 2 * rng.integers(0, 2, size=2 * num_qubits).astype(np.uint8)
    return s, phases
