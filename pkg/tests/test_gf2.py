import numpy as np
import pytest

from lrmipt.tableau.gf2 import (
    WORD_BITS,
    gf2_rank,
    mask_for,
    num_words,
    pack_bits,
    pauli_product,
    popcount,
    symplectic_product,
    unpack_bits,
)


def make_rows(*rows):
    return pack_bits(np.array(rows, dtype=np.uint8))


@pytest.mark.parametrize("bits, words", [(1, 1), (64, 1), (65, 2), (130, 3)])
def test_num_words(bits, words):
    assert num_words(bits) == words


def test_pack_unpack_across_word_boundary():
    rng = np.random.default_rng(7)
    bits = rng.integers(0, 2, size=(3, 70), dtype=np.uint8)
    packed = pack_bits(bits)
    assert packed.shape == (3, 2)
    assert np.array_equal(unpack_bits(packed, 70), bits)


def test_bit_q_lives_in_word_q_div_64():
    bits = np.zeros(WORD_BITS + 5, dtype=np.uint8)
    bits[WORD_BITS + 2] = 1
    packed = pack_bits(bits)
    assert packed[0] == 0
    assert packed[1] == np.uint64(1 << 2)


def test_popcount_and_mask():
    mask = mask_for([0, 3, 64], 70)
    assert popcount(mask) == 3


def test_rank_of_identity_and_dependent_rows():
    assert gf2_rank(pack_bits(np.eye(5, dtype=np.uint8))) == 5
    assert gf2_rank(make_rows([1, 1, 0], [0, 1, 1], [1, 0, 1])) == 2
    assert gf2_rank(np.zeros((0, 1), dtype=np.uint64)) == 0


def test_rank_restricted_to_columns():
    rows = make_rows([1, 0, 1], [0, 1, 1])
    assert gf2_rank(rows, columns=[2]) == 1
    assert gf2_rank(rows, columns=[0, 1]) == 2


def test_rank_does_not_modify_input():
    rows = make_rows([1, 1], [1, 0])
    before = rows.copy()
    gf2_rank(rows)
    assert np.array_equal(rows, before)


def test_pauli_product_phases():
    x1, z1 = make_rows([1]), make_rows([0])
    x2, z2 = make_rows([0]), make_rows([1])
    # X·Z = -iY
    x, z, phase = pauli_product(x1[0], z1[0], 0, x2[0], z2[0], 0)
    assert (int(x[0]), int(z[0]), int(phase)) == (1, 1, 3)
    # Z·X = iY
    x, z, phase = pauli_product(x2[0], z2[0], 0, x1[0], z1[0], 0)
    assert (int(x[0]), int(z[0]), int(phase)) == (1, 1, 1)


def test_symplectic_product():
    x1, z1 = make_rows([1, 0]), make_rows([0, 0])
    x2, z2 = make_rows([0, 0]), make_rows([1, 1])
    assert symplectic_product(x1[0], z1[0], x2[0], z2[0]) == 1
    assert symplectic_product(x1[0], z1[0], x1[0], z1[0]) == 0
