"""Bit-packed GF(2) helpers.

Rows of bits are stored little-endian in ``uint64`` words: bit ``q`` of a row lives in
word ``q // 64`` at position ``q % 64``.
"""

from typing import Iterable, Optional, Tuple

import numpy as np

WORD_BITS = 64
_ONE = np.uint64(1)


def num_words(num_bits: int) -> int:
    return max(1, (num_bits + WORD_BITS - 1) // WORD_BITS)


def bit_mask(position: int) -> Tuple[int, np.uint64]:
    """Word index and single-bit mask for a bit position."""
    word, offset = divmod(position, WORD_BITS)
    return word, _ONE << np.uint64(offset)


def pack_bits(bits: np.ndarray, num_bits: Optional[int] = None) -> np.ndarray:
    """Pack a ``(..., n)`` array of 0/1 values into ``(..., num_words(n))`` uint64 words."""
    bits = np.asarray(bits, dtype=np.uint8) & 1
    n = bits.shape[-1] if num_bits is None else num_bits
    width = num_words(n) * WORD_BITS
    padded = np.zeros(bits.shape[:-1] + (width,), dtype=np.uint8)
    padded[..., : bits.shape[-1]] = bits
    packed = np.packbits(padded, axis=-1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64)


def unpack_bits(words: np.ndarray, num_bits: int) -> np.ndarray:
    """Inverse of :func:`pack_bits`."""
    words = np.ascontiguousarray(np.asarray(words, dtype="<u8"))
    as_bytes = words.view(np.uint8)
    bits = np.unpackbits(as_bytes, axis=-1, bitorder="little")
    return bits[..., :num_bits]


def popcount(words: np.ndarray) -> np.ndarray:
    """Number of set bits, summed over the last (word) axis."""
    return np.bitwise_count(words).sum(axis=-1, dtype=np.int64)


def mask_for(positions: Iterable[int], num_bits: int) -> np.ndarray:
    bits = np.zeros(num_bits, dtype=np.uint8)
    bits[list(positions)] = 1
    return pack_bits(bits)


def gf2_rank(rows: np.ndarray, columns: Optional[Iterable[int]] = None) -> int:
    """Rank over GF(2) of a packed ``(m, W)`` row matrix.

    Only the listed bit ``columns`` are used as pivot candidates; callers that restrict a
    matrix to a column subset should clear the other bits first. The input is not modified.
    """
    m = np.array(rows, dtype=np.uint64, copy=True)
    n_rows = m.shape[0]
    if n_rows == 0:
        return 0
    if columns is None:
        columns = range(m.shape[1] * WORD_BITS)

    rank = 0
    for col in columns:
        if rank == n_rows:
            break
        word, bit = bit_mask(col)
        hits = np.flatnonzero(m[rank:, word] & bit)
        if hits.size == 0:
            continue
        pivot = rank + hits[0]
        if pivot != rank:
            m[[rank, pivot]] = m[[pivot, rank]]
        below = rank + 1 + np.flatnonzero(m[rank + 1 :, word] & bit)
        if below.size:
            m[below] ^= m[rank]
        rank += 1
    return rank


def pauli_product(
    x1: np.ndarray,
    z1: np.ndarray,
    p1: np.ndarray,
    x2: np.ndarray,
    z2: np.ndarray,
    p2: np.ndarray,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Multiply packed Pauli strings ``P1 · P2`` (broadcasting over leading axes).

    A string is ``i**p · ⊗_q σ(x_q, z_q)`` with ``σ(1, 1) = Y``. Phases are exponents of
    ``i`` modulo 4. Per qubit the product contributes ``i**1`` or ``i**3`` exactly when the
    two factors anticommute; the two counters below accumulate which one.
    """
    x1z2 = x1 & z2
    anti = (x2 & z1) ^ x1z2
    x = x1 ^ x2
    z = z1 ^ z2
    minus = (x ^ z ^ x1z2) & anti
    log_i = popcount(anti) + 2 * popcount(minus)
    phase = (np.asarray(p1, dtype=np.int64) + np.asarray(p2, dtype=np.int64) + log_i) % 4
    return x, z, phase.astype(np.uint8)


def symplectic_product(x1: np.ndarray, z1: np.ndarray, x2: np.ndarray, z2: np.ndarray) -> np.ndarray:
    """Symplectic inner product ``x1·z2 ⊕ z1·x2`` of packed strings (0 = commute)."""
    return (popcount((x1 & z2) ^ (z1 & x2)) & 1).astype(np.uint8)
