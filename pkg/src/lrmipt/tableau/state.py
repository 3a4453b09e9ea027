"""Mixed-state stabilizer tableau without destabilizers."""

import logging
from enum import Enum
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from lrmipt.errors import DomainError, TableauInvariantError
from lrmipt.tableau.clifford import CliffordGate2Q, random_clifford, sample_clifford_2q
from lrmipt.tableau.gf2 import (
    WORD_BITS,
    bit_mask,
    gf2_rank,
    mask_for,
    num_words,
    pack_bits,
    pauli_product,
    popcount,
)
from lrmipt.tableau.pauli import PauliOperator

logger = logging.getLogger(__name__)


class MeasurementCase(str, Enum):
    RANDOM = "random"  # Z anticommutes with a generator
    DETERMINISTIC = "deterministic"  # ±Z already in the group
    PURIFYING = "purifying"  # Z independent of the group; k grows by one


class MeasurementOutcome(NamedTuple):
    outcome: int
    case: MeasurementCase


class StabilizerState:
    """
    A stabilizer state on ``L`` qubits described by ``k ≤ L`` commuting, independent
    Hermitian Pauli generators: ``ρ = 2**-L · ∏_g (I + g)``.

    Conceptual model:
    - rows 0..k-1 of ``xs`` / ``zs`` hold the bit-packed X and Z parts of the generators
    - ``phases`` holds the exponent of i of each generator (0 or 2, i.e. a sign)
    - the global entropy is ``L - k`` bits; ``k == L`` means the state is pure
    - all operations mutate the state in place and return it
    """

    def __init__(
        self,
        num_qubits: int,
        xs: Optional[np.ndarray] = None,
        zs: Optional[np.ndarray] = None,
        phases: Optional[np.ndarray] = None,
    ):
        if num_qubits < 1:
            raise DomainError("a stabilizer state needs at least one qubit")
        self.num_qubits = num_qubits
        self.num_words = num_words(num_qubits)
        self.xs = np.zeros((num_qubits, self.num_words), dtype=np.uint64)
        self.zs = np.zeros((num_qubits, self.num_words), dtype=np.uint64)
        self.phases = np.zeros(num_qubits, dtype=np.uint8)
        self.k = 0
        if xs is not None:
            k = xs.shape[0]
            if k > num_qubits or zs is None or zs.shape != xs.shape:
                raise DomainError("generator rows do not fit the register")
            self.xs[:k] = xs
            self.zs[:k] = zs
            self.phases[:k] = 0 if phases is None else np.asarray(phases, dtype=np.uint8) % 4
            self.k = k

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, num_qubits: int) -> "StabilizerState":
        """The product state ``|0…0⟩`` stabilized by ``Z_0 … Z_{L-1}``."""
        eye = pack_bits(np.eye(num_qubits, dtype=np.uint8))
        return cls(num_qubits, np.zeros_like(eye), eye)

    @classmethod
    def maximally_mixed(cls, num_qubits: int) -> "StabilizerState":
        return cls(num_qubits)

    @classmethod
    def single_mixed(cls, num_qubits: int, site: int = 0) -> "StabilizerState":
        """``|0…0⟩`` with qubit ``site`` replaced by a maximally mixed qubit."""
        if not 0 <= site < num_qubits:
            raise DomainError(f"site {site} outside [0, {num_qubits})")
        keep = [q for q in range(num_qubits) if q != site]
        eye = pack_bits(np.eye(num_qubits, dtype=np.uint8)[keep], num_qubits)
        return cls(num_qubits, np.zeros_like(eye), eye)

    @classmethod
    def from_generators(cls, generators: Sequence[PauliOperator], num_qubits: Optional[int] = None) -> "StabilizerState":
        """Build a state from explicit generators and validate it."""
        if num_qubits is None:
            if not generators:
                raise DomainError("num_qubits is required for an empty generator list")
            num_qubits = generators[0].num_qubits
        if any(g.num_qubits != num_qubits for g in generators):
            raise DomainError("generators act on different qubit counts")
        if not generators:
            return cls(num_qubits)
        xs = np.stack([pack_bits(g.x_bits, num_qubits) for g in generators])
        zs = np.stack([pack_bits(g.z_bits, num_qubits) for g in generators])
        state = cls(num_qubits, xs, zs, [g.phase for g in generators])
        state.check_invariants()
        return state

    @classmethod
    def from_labels(cls, labels: Iterable[str]) -> "StabilizerState":
        return cls.from_generators([PauliOperator.from_label(s) for s in labels])

    def copy(self) -> "StabilizerState":
        other = StabilizerState.__new__(StabilizerState)
        other.num_qubits = self.num_qubits
        other.num_words = self.num_words
        other.xs = self.xs.copy()
        other.zs = self.zs.copy()
        other.phases = self.phases.copy()
        other.k = self.k
        return other

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    @property
    def is_pure(self) -> bool:
        return self.k == self.num_qubits

    def generators(self) -> List[PauliOperator]:
        return [
            PauliOperator.from_packed(self.xs[r], self.zs[r], int(self.phases[r]), self.num_qubits)
            for r in range(self.k)
        ]

    def check_invariants(self) -> None:
        """Raise ``TableauInvariantError`` unless the generators commute, are independent and Hermitian."""
        k = self.k
        xs, zs = self.xs[:k], self.zs[:k]
        if np.any(self.phases[:k] % 2):
            raise TableauInvariantError("a generator carries an imaginary phase")
        if self.num_qubits % WORD_BITS:
            padding = ~mask_for(range(self.num_qubits), self.num_qubits)
            if np.any(xs & padding) or np.any(zs & padding):
                raise TableauInvariantError("bits set beyond the last qubit")
        if k:
            sym = popcount((xs[:, None, :] & zs[None, :, :]) ^ (zs[:, None, :] & xs[None, :, :])) & 1
            if np.any(sym):
                a, b = np.argwhere(sym)[0]
                raise TableauInvariantError(f"generators {a} and {b} anticommute")
            if gf2_rank(np.hstack([xs, zs])) != k:
                raise TableauInvariantError("generators are linearly dependent")

    def __repr__(self) -> str:
        return f"StabilizerState(L={self.num_qubits}, k={self.k})"

    # ------------------------------------------------------------------
    # Unitary evolution
    # ------------------------------------------------------------------

    def _check_site(self, site: int) -> None:
        if not 0 <= site < self.num_qubits:
            raise DomainError(f"site {site} outside [0, {self.num_qubits})")

    def _column(self, words: np.ndarray, site: int) -> np.ndarray:
        w, b = divmod(site, WORD_BITS)
        return ((words[: self.k, w] >> np.uint64(b)) & np.uint64(1)).astype(np.intp)

    def _write_column(self, words: np.ndarray, site: int, bits: np.ndarray) -> None:
        w, mask = bit_mask(site)
        shift = np.uint64(site % WORD_BITS)
        words[: self.k, w] = (words[: self.k, w] & ~mask) | (bits.astype(np.uint64) << shift)

    def apply_gate(self, gate: CliffordGate2Q, i: int, j: int) -> "StabilizerState":
        """Conjugate every generator by ``gate`` acting on qubits ``(i, j)``."""
        self._check_site(i)
        self._check_site(j)
        if i == j:
            raise DomainError("a two-qubit gate needs two distinct sites")
        if self.k == 0:
            return self
        code = (
            self._column(self.xs, i)
            | self._column(self.xs, j) << 1
            | self._column(self.zs, i) << 2
            | self._column(self.zs, j) << 3
        )
        image = gate.images[code]
        self._write_column(self.xs, i, image & 1)
        self._write_column(self.xs, j, (image >> 1) & 1)
        self._write_column(self.zs, i, (image >> 2) & 1)
        self._write_column(self.zs, j, (image >> 3) & 1)
        self.phases[: self.k] = (self.phases[: self.k] + 2 * gate.signs[code]) % 4
        return self

    def scramble(self, rng: np.random.Generator, method: str = "canonical") -> "StabilizerState":
        """Apply a random global Clifford.

        ``"canonical"`` draws an exactly uniform L-qubit Clifford; ``"brickwork"`` applies
        ``2L`` layers of random two-qubit gates on random pairings.
        """
        if method == "canonical":
            return self._scramble_canonical(rng)
        if method == "brickwork":
            return self._scramble_brickwork(rng)
        raise DomainError(f"unknown scramble method {method!r}")

    def _scramble_canonical(self, rng: np.random.Generator) -> "StabilizerState":
        n, k = self.num_qubits, self.k
        symplectic, image_phases = random_clifford(n, rng)
        img_x = pack_bits(symplectic[:, :n], n)
        img_z = pack_bits(symplectic[:, n:], n)
        if k == 0:
            return self

        xs, zs = self.xs[:k], self.zs[:k]
        acc_x = np.zeros_like(xs)
        acc_z = np.zeros_like(zs)
        # σ(1, 1) = Y = i·X·Z, so each row starts from i**popcount(x & z) · ∏ X^x Z^z.
        acc_p = (self.phases[:k].astype(np.int64) + popcount(xs & zs)) % 4
        for q in range(n):
            w, mask = bit_mask(q)
            for basis, words in ((q, xs), (n + q, zs)):
                rows = np.flatnonzero(words[:, w] & mask)
                if rows.size == 0:
                    continue
                acc_x[rows], acc_z[rows], acc_p[rows] = pauli_product(
                    acc_x[rows], acc_z[rows], acc_p[rows], img_x[basis], img_z[basis], image_phases[basis]
                )
        self.xs[:k], self.zs[:k] = acc_x, acc_z
        self.phases[:k] = acc_p.astype(np.uint8)
        return self

    def _scramble_brickwork(self, rng: np.random.Generator) -> "StabilizerState":
        n = self.num_qubits
        for _ in range(2 * n):
            order = rng.permutation(n)
            for a, b in zip(order[0::2], order[1::2]):
                self.apply_gate(sample_clifford_2q(rng), int(a), int(b))
        return self

    # ------------------------------------------------------------------
    # Measurement
    # ------------------------------------------------------------------

    def _multiply_rows(self, targets: np.ndarray, source: int, xs, zs, phases) -> None:
        xs[targets], zs[targets], phases[targets] = pauli_product(
            xs[targets], zs[targets], phases[targets], xs[source], zs[source], phases[source]
        )

    def _reduce(self, x: np.ndarray, z: np.ndarray, phase: int) -> Tuple[np.ndarray, np.ndarray, int]:
        """Multiply ``i**phase · P(x, z)`` by group elements until no pivot bit remains.

        The residual is the identity with phase ``φ`` exactly when the group contains
        ``i**φ`` times the input operator.
        """
        k, n = self.k, self.num_qubits
        xs = self.xs[:k].copy()
        zs = self.zs[:k].copy()
        phases = self.phases[:k].copy()
        acc_x, acc_z, acc_p = x.copy(), z.copy(), np.uint8(phase % 4)

        rank = 0
        for col in range(2 * n):
            if rank == k:
                break
            words = xs if col < n else zs
            w, mask = bit_mask(col % n)
            hits = rank + np.flatnonzero(words[rank:, w] & mask)
            if hits.size == 0:
                continue
            pivot = int(hits[0])
            if pivot != rank:
                for arr in (xs, zs, phases):
                    arr[[rank, pivot]] = arr[[pivot, rank]]
            below = hits[1:]
            if below.size:
                self._multiply_rows(below, rank, xs, zs, phases)
            target_words = acc_x if col < n else acc_z
            if target_words[w] & mask:
                acc_x, acc_z, acc_p = pauli_product(acc_x, acc_z, acc_p, xs[rank], zs[rank], phases[rank])
            rank += 1
        return acc_x, acc_z, int(acc_p)

    def measure_z(self, site: int, rng: np.random.Generator) -> MeasurementOutcome:
        """Projectively measure ``Z_site``; outcome 1 means eigenvalue -1."""
        self._check_site(site)
        k = self.k
        anti = np.flatnonzero(self._column(self.xs, site))

        if anti.size:
            first = int(anti[0])
            if anti.size > 1:
                self._multiply_rows(anti[1:], first, self.xs[:k], self.zs[:k], self.phases[:k])
            outcome = int(rng.integers(2))
            self._set_row(first, site, outcome)
            case = MeasurementCase.RANDOM
        else:
            z = np.zeros(self.num_words, dtype=np.uint64)
            w, mask = bit_mask(site)
            z[w] = mask
            rx, rz, phase = self._reduce(np.zeros_like(z), z, 0)
            if not rx.any() and not rz.any():
                outcome = phase // 2
                case = MeasurementCase.DETERMINISTIC
            else:
                outcome = int(rng.integers(2))
                self.k += 1
                self._set_row(self.k - 1, site, outcome)
                case = MeasurementCase.PURIFYING

        if logger.isEnabledFor(logging.DEBUG):
            logger.debug("measure Z_%d: %s outcome=%d k=%d", site, case.value, outcome, self.k)
        return MeasurementOutcome(outcome, case)

    def _set_row(self, row: int, site: int, outcome: int) -> None:
        w, mask = bit_mask(site)
        self.xs[row] = 0
        self.zs[row] = 0
        self.zs[row, w] = mask
        self.phases[row] = 2 * outcome

    def expectation(self, pauli: PauliOperator) -> int:
        """``Tr(ρ P)`` for a Hermitian Pauli: +1, -1, or 0 when the outcome is undetermined."""
        if pauli.num_qubits != self.num_qubits:
            raise DomainError("operator and state act on different qubit counts")
        if not pauli.is_hermitian:
            raise DomainError("expectation values are defined for Hermitian Paulis")
        x, z = pauli.packed()
        k = self.k
        anti = popcount((self.xs[:k] & z) ^ (self.zs[:k] & x)) & 1
        if np.any(anti):
            return 0
        rx, rz, phase = self._reduce(x, z, pauli.phase)
        if rx.any() or rz.any():
            return 0
        return 1 if phase == 0 else -1

    # ------------------------------------------------------------------
    # Entropies (bits)
    # ------------------------------------------------------------------

    def subsystem_entropy(self, region: Iterable[int]) -> int:
        """``S_A = |A| - g_A`` with ``g_A`` the number of independent group elements inside ``A``."""
        sites = sorted(set(int(q) for q in region))
        for q in sites:
            self._check_site(q)
        if not sites:
            return 0
        inside = set(sites)
        complement = [q for q in range(self.num_qubits) if q not in inside]
        if self.k == 0:
            return len(sites)
        mask = mask_for(complement, self.num_qubits)
        restricted = np.hstack([self.xs[: self.k] & mask, self.zs[: self.k] & mask])
        offset = self.num_words * WORD_BITS
        columns = complement + [offset + q for q in complement]
        rank = gf2_rank(restricted, columns)
        return len(sites) - (self.k - rank)

    def global_entropy(self) -> int:
        return self.num_qubits - self.k

    def mutual_information(self, region_a: Iterable[int], region_b: Iterable[int]) -> int:
        a, b = set(region_a), set(region_b)
        if a & b:
            raise DomainError("mutual information needs disjoint regions")
        return self.subsystem_entropy(a) + self.subsystem_entropy(b) - self.subsystem_entropy(a | b)


# ----------------------------------------------------------------------
# Functional forms
# ----------------------------------------------------------------------


def apply_gate(state: StabilizerState, gate: CliffordGate2Q, i: int, j: int) -> StabilizerState:
    return state.apply_gate(gate, i, j)


def measure_z(state: StabilizerState, site: int, rng: np.random.Generator) -> Tuple[int, StabilizerState]:
    """Measure a copy of ``state``; the argument is left untouched."""
    new = state.copy()
    return new.measure_z(site, rng).outcome, new


def subsystem_entropy(state: StabilizerState, region: Iterable[int]) -> int:
    return state.subsystem_entropy(region)


def global_entropy(state: StabilizerState) -> int:
    return state.global_entropy()


def scramble_global(state: StabilizerState, rng: np.random.Generator, method: str = "canonical") -> StabilizerState:
    return state.scramble(rng, method)
