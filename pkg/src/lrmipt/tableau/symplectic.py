"""Uniform sampling of binary symplectic matrices by the canonical (transvection) construction.

Internally matrices use the interleaved ordering ``(x_0, z_0, x_1, z_1, ...)``; the public
functions return the standard ordering ``(x_0 .. x_{n-1}, z_0 .. z_{n-1})``. Row ``a`` of a
returned matrix is the image of basis vector ``a``, so a bit row ``v`` maps to ``v @ S % 2``.
"""

from typing import List, Optional, Tuple

import numpy as np

Digit = Tuple[np.ndarray, np.ndarray]


def symplectic_form(n: int) -> np.ndarray:
    """The standard form ``[[0, I], [I, 0]]`` of size ``2n``."""
    omega = np.zeros((2 * n, 2 * n), dtype=np.uint8)
    omega[:n, n:] = np.eye(n, dtype=np.uint8)
    omega[n:, :n] = np.eye(n, dtype=np.uint8)
    return omega


def is_symplectic(s: np.ndarray) -> bool:
    n = s.shape[0] // 2
    s = np.asarray(s, dtype=np.int64)
    omega = symplectic_form(n).astype(np.int64)
    return np.array_equal((s @ omega @ s.T) % 2, omega)


def _inner(k: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Interleaved symplectic inner product of ``k`` with each row of ``v``."""
    return (
        (v[..., 0::2] & k[1::2]).sum(axis=-1) + (v[..., 1::2] & k[0::2]).sum(axis=-1)
    ) & 1


def _transvect(k: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Apply the transvection ``Z_k`` to a vector or to each row of a matrix."""
    return v ^ (np.asarray(_inner(k, v))[..., None] * k).astype(np.uint8)


def _find_transvection(x: np.ndarray, y: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Two vectors ``h1, h2`` with ``y = Z_h1 Z_h2 x`` (either may be zero)."""
    nn = x.size
    h1 = np.zeros(nn, dtype=np.uint8)
    h2 = np.zeros(nn, dtype=np.uint8)
    if np.array_equal(x, y):
        return h1, h2
    if _inner(x, y) == 1:
        return (x ^ y).astype(np.uint8), h2

    z = np.zeros(nn, dtype=np.uint8)
    for ii in range(0, nn, 2):
        x_pair = x[ii] | x[ii + 1]
        y_pair = y[ii] | y[ii + 1]
        if x_pair and y_pair:
            z[ii] = x[ii] ^ y[ii]
            z[ii + 1] = x[ii + 1] ^ y[ii + 1]
            if not (z[ii] or z[ii + 1]):
                z[ii + 1] = 1
                if x[ii] != x[ii + 1]:
                    z[ii] = 1
            return x ^ z, y ^ z

    for ii in range(0, nn, 2):
        if (x[ii] | x[ii + 1]) and not (y[ii] | y[ii + 1]):
            if x[ii] == x[ii + 1]:
                z[ii + 1] = 1
            else:
                z[ii + 1] = x[ii]
                z[ii] = x[ii + 1]
            break
    for ii in range(0, nn, 2):
        if not (x[ii] | x[ii + 1]) and (y[ii] | y[ii + 1]):
            if y[ii] == y[ii + 1]:
                z[ii + 1] = 1
            else:
                z[ii + 1] = y[ii]
                z[ii] = y[ii + 1]
            break
    return x ^ z, y ^ z


def _build(digits: List[Digit]) -> np.ndarray:
    """Assemble an interleaved symplectic matrix from per-level digits (outermost first).

    Each digit is ``(f1, bits)``: a nonzero vector of length ``2m`` and ``2m - 1`` free bits
    for the level acting on ``m`` qubits.
    """
    g: Optional[np.ndarray] = None
    for f1, bits in reversed(digits):
        nn = f1.size
        e1 = np.zeros(nn, dtype=np.uint8)
        e1[0] = 1
        t0, t1 = _find_transvection(e1, f1)
        eprime = e1.copy()
        eprime[2:] = bits[1:]
        h0 = _transvect(t1, _transvect(t0, eprime))
        f1 = np.zeros_like(f1) if bits[0] else f1

        block = np.zeros((nn, nn), dtype=np.uint8)
        block[:2, :2] = np.eye(2, dtype=np.uint8)
        if g is not None:
            block[2:, 2:] = g
        block = _transvect(t0, block)
        block = _transvect(t1, block)
        block = _transvect(h0, block)
        g = _transvect(f1, block)
    assert g is not None
    return g


def _to_standard(g: np.ndarray) -> np.ndarray:
    n = g.shape[0] // 2
    perm = np.concatenate([np.arange(0, 2 * n, 2), np.arange(1, 2 * n, 2)])
    return np.ascontiguousarray(g[np.ix_(perm, perm)])


def _int_to_bits(value: int, width: int) -> np.ndarray:
    return np.array([(value >> j) & 1 for j in range(width)], dtype=np.uint8)


def num_symplectic(n: int) -> int:
    """Order of Sp(2n, 2)."""
    total = 2 ** (n * n)
    for j in range(1, n + 1):
        total *= 4**j - 1
    return total


def symplectic_from_index(index: int, n: int) -> np.ndarray:
    """The symplectic matrix with canonical ``index`` in ``[0, num_symplectic(n))``."""
    digits: List[Digit] = []
    for m in range(n, 0, -1):
        nn = 2 * m
        cosets = (1 << nn) - 1
        f1 = _int_to_bits(index % cosets + 1, nn)
        index //= cosets
        bits = _int_to_bits(index % (1 << (nn - 1)), nn - 1)
        index >>= nn - 1
        digits.append((f1, bits))
    return _to_standard(_build(digits))


def random_symplectic(n: int, rng: np.random.Generator) -> np.ndarray:
    """A uniformly random element of Sp(2n, 2) in the standard ordering."""
    digits: List[Digit] = []
    for m in range(n, 0, -1):
        nn = 2 * m
        f1 = rng.integers(0, 2, size=nn, dtype=np.uint8)
        while not f1.any():
            f1 = rng.integers(0, 2, size=nn, dtype=np.uint8)
        bits = rng.integers(0, 2, size=nn - 1, dtype=np.uint8)
        digits.append((f1, bits))
    return _to_standard(_build(digits))
