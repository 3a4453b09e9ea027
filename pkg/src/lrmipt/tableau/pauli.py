from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from lrmipt.errors import DomainError
from lrmipt.tableau.gf2 import pack_bits, pauli_product, symplectic_product, unpack_bits

_LETTERS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_PHASE_PREFIX = {"": 0, "+": 0, "+i": 1, "i": 1, "-": 2, "-i": 3}
_PHASE_LABEL = ("+", "+i", "-", "-i")


@dataclass
class PauliOperator:
    """
    A Pauli string ``i**phase · ⊗_q σ(x_q, z_q)`` on ``L`` qubits.

    Conceptual model:
    - x_bits / z_bits: the symplectic (X part, Z part) representation
    - phase: exponent of ``i`` in {0, 1, 2, 3}; Hermitian operators have an even phase
    - σ(1, 1) is Y itself, so ``+XYZ`` is Hermitian with phase 0
    """

    x_bits: np.ndarray
    z_bits: np.ndarray
    phase: int = 0
    num_qubits: int = field(init=False)

    def __post_init__(self):
        self.x_bits = np.asarray(self.x_bits, dtype=np.uint8) & 1
        self.z_bits = np.asarray(self.z_bits, dtype=np.uint8) & 1
        if self.x_bits.shape != self.z_bits.shape or self.x_bits.ndim != 1:
            raise DomainError("x_bits and z_bits must be equal-length bit vectors")
        self.phase = int(self.phase) % 4
        self.num_qubits = int(self.x_bits.size)

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def identity(cls, num_qubits: int) -> "PauliOperator":
        return cls(np.zeros(num_qubits, np.uint8), np.zeros(num_qubits, np.uint8))

    @classmethod
    def from_label(cls, label: str) -> "PauliOperator":
        """Parse labels such as ``"XZI"``, ``"-YY"`` or ``"+iXX"``."""
        body = label.lstrip("+-i")
        prefix = label[: len(label) - len(body)]
        if prefix not in _PHASE_PREFIX:
            raise DomainError(f"bad phase prefix in Pauli label {label!r}")
        try:
            pairs = [_LETTERS[c] for c in body.upper()]
        except KeyError as exc:
            raise DomainError(f"bad Pauli letter in {label!r}") from exc
        xs = np.array([x for x, _ in pairs], dtype=np.uint8)
        zs = np.array([z for _, z in pairs], dtype=np.uint8)
        return cls(xs, zs, _PHASE_PREFIX[prefix])

    @classmethod
    def single(cls, num_qubits: int, site: int, letter: str) -> "PauliOperator":
        """A single-site operator such as ``Z_site``."""
        if not 0 <= site < num_qubits:
            raise DomainError(f"site {site} outside [0, {num_qubits})")
        op = cls.identity(num_qubits)
        op.x_bits[site], op.z_bits[site] = _LETTERS[letter.upper()]
        return op

    @classmethod
    def from_packed(cls, x_words, z_words, phase: int, num_qubits: int) -> "PauliOperator":
        return cls(unpack_bits(x_words, num_qubits), unpack_bits(z_words, num_qubits), phase)

    # ------------------------------------------------------------------
    # Algebra
    # ------------------------------------------------------------------

    def packed(self) -> Tuple[np.ndarray, np.ndarray]:
        return pack_bits(self.x_bits), pack_bits(self.z_bits)

    @property
    def is_hermitian(self) -> bool:
        return self.phase % 2 == 0

    @property
    def weight(self) -> int:
        return int(np.count_nonzero(self.x_bits | self.z_bits))

    def commutes_with(self, other: "PauliOperator") -> bool:
        x1, z1 = self.packed()
        x2, z2 = other.packed()
        return int(symplectic_product(x1, z1, x2, z2)) == 0

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        if other.num_qubits != self.num_qubits:
            raise DomainError("Pauli operators act on different qubit counts")
        x1, z1 = self.packed()
        x2, z2 = other.packed()
        x, z, phase = pauli_product(x1, z1, self.phase, x2, z2, other.phase)
        return PauliOperator.from_packed(x, z, int(phase), self.num_qubits)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliOperator):
            return NotImplemented
        return (
            self.phase == other.phase
            and np.array_equal(self.x_bits, other.x_bits)
            and np.array_equal(self.z_bits, other.z_bits)
        )

    # ------------------------------------------------------------------
    # Display
    # ------------------------------------------------------------------

    def label(self) -> str:
        letters = "".join("IZXY"[2 * x + z] for x, z in zip(self.x_bits, self.z_bits))
        return _PHASE_LABEL[self.phase] + letters

    def __repr__(self) -> str:
        return f"PauliOperator({self.label()})"
