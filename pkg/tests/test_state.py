import numpy as np
import pytest

from lrmipt.errors import DomainError, TableauInvariantError
from lrmipt.tableau import (
    CliffordGate2Q,
    MeasurementCase,
    PauliOperator,
    StabilizerState,
    global_entropy,
    measure_z,
    sample_clifford_2q,
    scramble_global,
    subsystem_entropy,
)
from tests import oracle


def make_bell():
    return StabilizerState.from_labels(["XX", "ZZ"])


def make_random_state(L, steps, seed, p=0.3):
    """A state reached by random gates and measurements from |0…0⟩."""
    rng = np.random.default_rng(seed)
    state = StabilizerState.zero(L)
    for _ in range(steps):
        i, j = rng.choice(L, size=2, replace=False)
        state.apply_gate(CliffordGate2Q.from_unitary(oracle.random_clifford_unitary(rng)), int(i), int(j))
        if rng.random() < p:
            state.measure_z(int(rng.integers(L)), rng)
    return state


# ----------------------------------------------------------------------
# Construction and invariants
# ----------------------------------------------------------------------


def test_zero_state_is_pure_product():
    state = StabilizerState.zero(5)
    assert state.is_pure
    assert state.global_entropy() == 0
    assert all(state.subsystem_entropy([q]) == 0 for q in range(5))
    state.check_invariants()


def test_maximally_mixed_entropy_is_region_size():
    state = StabilizerState.maximally_mixed(6)
    assert state.k == 0
    assert state.subsystem_entropy(range(4)) == 4
    assert state.global_entropy() == 6


def test_single_mixed_has_one_bit():
    state = StabilizerState.single_mixed(6, site=2)
    assert state.global_entropy() == 1
    assert state.subsystem_entropy([2]) == 1
    assert state.subsystem_entropy([0, 1]) == 0


def test_anticommuting_generators_are_rejected():
    with pytest.raises(TableauInvariantError):
        StabilizerState.from_labels(["XI", "ZI"])


def test_dependent_generators_are_rejected():
    with pytest.raises(TableauInvariantError):
        StabilizerState.from_labels(["ZZ", "ZZ"])


def test_imaginary_phase_is_rejected():
    with pytest.raises(TableauInvariantError):
        StabilizerState.from_labels(["iZ"])


def test_wide_register_spans_several_words():
    state = StabilizerState.zero(70)
    assert state.num_words == 2
    state.apply_gate(CliffordGate2Q.from_unitary(oracle.CNOT @ np.kron(oracle.H, oracle.I2)), 3, 68)
    state.check_invariants()
    assert state.subsystem_entropy([68]) == 1
    assert state.subsystem_entropy([3, 68]) == 0


# ----------------------------------------------------------------------
# Measurement
# ----------------------------------------------------------------------


def test_measuring_zero_state_is_deterministic():
    state = StabilizerState.zero(3)
    result = state.measure_z(1, np.random.default_rng(0))
    assert result.outcome == 0
    assert result.case is MeasurementCase.DETERMINISTIC
    assert state.k == 3


def test_negative_generator_gives_outcome_one():
    state = StabilizerState.from_labels(["-ZI", "IZ"])
    assert state.measure_z(0, np.random.default_rng(0)).outcome == 1


def test_measuring_mixed_qubit_purifies():
    state = StabilizerState.maximally_mixed(4)
    result = state.measure_z(2, np.random.default_rng(1))
    assert result.case is MeasurementCase.PURIFYING
    assert state.k == 1
    assert state.global_entropy() == 3
    repeat = state.measure_z(2, np.random.default_rng(2))
    assert repeat.case is MeasurementCase.DETERMINISTIC
    assert repeat.outcome == result.outcome


def test_bell_pair_outcomes_agree():
    for seed in range(8):
        state = make_bell()
        first = state.measure_z(0, np.random.default_rng(seed))
        assert first.case is MeasurementCase.RANDOM
        second = state.measure_z(1, np.random.default_rng(seed + 100))
        assert second.case is MeasurementCase.DETERMINISTIC
        assert second.outcome == first.outcome
        state.check_invariants()


def test_random_outcomes_are_balanced():
    rng = np.random.default_rng(11)
    ones = sum(make_bell().measure_z(0, rng).outcome for _ in range(2000))
    assert abs(ones - 1000) < 5 * np.sqrt(500)


def test_plus_state_outcomes_follow_born_rule_after_sampled_gates():
    rng = np.random.default_rng(17)
    trials = 1500
    ones, expected = 0, 0.0
    z0 = oracle.pauli_matrix(PauliOperator.single(4, 0, "Z"))
    for _ in range(trials):
        state = StabilizerState.from_labels(["XIII", "IXII", "IIXI", "IIIX"])
        for _ in range(3):
            i, j = (int(v) for v in rng.choice(4, size=2, replace=False))
            state.apply_gate(sample_clifford_2q(rng), i, j)
        rho = oracle.density_matrix(state)
        expected += (1 - np.real(np.trace(rho @ z0))) / 2
        ones += state.measure_z(0, rng).outcome
    assert abs(ones - expected) < 5 * np.sqrt(trials / 4)


def test_functional_measure_leaves_its_argument_alone():
    state = make_bell()
    before = [g.label() for g in state.generators()]
    outcome, new = measure_z(state, 0, np.random.default_rng(0))
    assert new is not state
    assert [g.label() for g in state.generators()] == before
    assert new.expectation(PauliOperator.single(2, 0, "Z")) == (-1) ** outcome


# ----------------------------------------------------------------------
# Expectation values
# ----------------------------------------------------------------------


@pytest.mark.parametrize(
    "label, expected",
    [("+XX", 1), ("+ZZ", 1), ("+YY", -1), ("-YY", 1), ("+ZI", 0), ("+II", 1)],
)
def test_bell_expectations(label, expected):
    assert make_bell().expectation(PauliOperator.from_label(label)) == expected


def test_expectation_rejects_anti_hermitian():
    with pytest.raises(DomainError):
        make_bell().expectation(PauliOperator.from_label("iXX"))


# ----------------------------------------------------------------------
# Gates, entropies and argument checks
# ----------------------------------------------------------------------


@pytest.mark.parametrize("i, j", [(0, 0), (0, 4), (-1, 2)])
def test_bad_gate_sites_raise(i, j):
    gate = CliffordGate2Q.from_unitary(oracle.CNOT)
    with pytest.raises(DomainError):
        StabilizerState.zero(4).apply_gate(gate, i, j)


def test_overlapping_regions_raise():
    with pytest.raises(DomainError):
        StabilizerState.zero(4).mutual_information([0, 1], [1, 2])


def test_bell_mutual_information():
    state = StabilizerState.from_labels(["XXII", "ZZII", "IIZI", "IIIZ"])
    assert state.mutual_information([0], [1]) == 2
    assert state.mutual_information([0], [2]) == 0


def test_pure_state_entropy_is_symmetric():
    state = make_random_state(8, 40, seed=1, p=0.0)
    assert state.is_pure
    for region in oracle.contiguous_regions(8):
        complement = [q for q in range(8) if q not in region]
        assert state.subsystem_entropy(region) == state.subsystem_entropy(complement)


def test_entropy_is_subadditive_and_mi_nonnegative():
    state = StabilizerState.maximally_mixed(8)
    rng = np.random.default_rng(9)
    for _ in range(30):
        i, j = rng.choice(8, size=2, replace=False)
        state.apply_gate(CliffordGate2Q.from_unitary(oracle.random_clifford_unitary(rng)), int(i), int(j))
        state.measure_z(int(rng.integers(8)), rng)
        a, b = [0, 1], [4, 5]
        assert state.mutual_information(a, b) >= 0
        assert state.subsystem_entropy(a + b) <= state.subsystem_entropy(a) + state.subsystem_entropy(b)


def test_functional_forms_match_methods():
    state = make_random_state(6, 20, seed=2)
    assert subsystem_entropy(state, [0, 1, 2]) == state.subsystem_entropy([0, 1, 2])
    assert global_entropy(state) == state.global_entropy()


@pytest.mark.parametrize("method", ["canonical", "brickwork"])
def test_scramble_preserves_entropy_and_invariants(method):
    rng = np.random.default_rng(3)
    state = StabilizerState.single_mixed(8)
    scramble_global(state, rng, method)
    state.check_invariants()
    assert state.global_entropy() == 1
    assert state.k == 7


def test_canonical_scramble_delocalizes_the_mixed_qubit():
    rng = np.random.default_rng(5)
    localized = 0
    for _ in range(50):
        state = StabilizerState.single_mixed(8).scramble(rng)
        localized += state.subsystem_entropy([0]) == 1 and state.subsystem_entropy(range(1, 8)) == 0
    assert localized < 5


def test_unknown_scramble_method_raises():
    with pytest.raises(DomainError):
        StabilizerState.zero(4).scramble(np.random.default_rng(0), "shuffle")


def test_copy_is_independent():
    state = StabilizerState.zero(4)
    other = state.copy()
    other.measure_z(0, np.random.default_rng(0))
    other.apply_gate(CliffordGate2Q.from_unitary(np.kron(oracle.H, oracle.I2)), 0, 1)
    assert state.expectation(PauliOperator.from_label("ZIII")) == 1
    assert other.expectation(PauliOperator.from_label("ZIII")) == 0


# ----------------------------------------------------------------------
# Dense oracle
# ----------------------------------------------------------------------


def _initial(kind, L):
    if kind == "zero":
        return StabilizerState.zero(L)
    if kind == "mixed":
        return StabilizerState.maximally_mixed(L)
    return StabilizerState.single_mixed(L, 1)


@pytest.mark.parametrize("L", [4, 6, 8])
@pytest.mark.parametrize("kind", ["zero", "mixed", "single"])
def test_trajectories_match_dense_density_matrices(L, kind):
    rng = np.random.default_rng(1000 * L + len(kind))
    for _ in range(4):
        state = _initial(kind, L)
        rho = oracle.density_matrix(state)
        for _ in range(3 * L):
            u = oracle.random_clifford_unitary(rng)
            i, j = (int(v) for v in rng.choice(L, size=2, replace=False))
            state.apply_gate(CliffordGate2Q.from_unitary(u), i, j)
            rho = oracle.apply_two_qubit(rho, u, i, j)
            if rng.random() < 0.4:
                site = int(rng.integers(L))
                result = state.measure_z(site, rng)
                rho, prob = oracle.measure(rho, site, result.outcome)
                assert rho is not None
                expected = 1.0 if result.case is MeasurementCase.DETERMINISTIC else 0.5
                assert prob == pytest.approx(expected, abs=1e-9)
            state.check_invariants()
            assert np.allclose(oracle.density_matrix(state), rho, atol=1e-9)
        for region in oracle.contiguous_regions(L):
            assert state.subsystem_entropy(region) == round(oracle.entropy(rho, region))
        assert state.global_entropy() == round(oracle.entropy(rho, range(L)))


def _purify_rate(L, method, trials, seed, site=None):
    rng = np.random.default_rng(seed)
    hits = 0
    for _ in range(trials):
        state = StabilizerState.single_mixed(L, 0).scramble(rng, method)
        target = int(rng.integers(L)) if site is None else site
        hits += state.measure_z(target, rng).case is MeasurementCase.PURIFYING
    return hits / trials


def test_unscrambled_mixed_qubit_is_caught_by_one_measurement():
    state = StabilizerState.single_mixed(8, 0)
    assert state.measure_z(0, np.random.default_rng(0)).case is MeasurementCase.PURIFYING


@pytest.mark.parametrize("method", ["canonical", "brickwork"])
def test_scrambled_mixed_qubit_escapes_single_measurements(method):
    L = 8
    assert _purify_rate(L, method, 400, seed=8, site=0) <= 2 / L
    assert _purify_rate(L, method, 400, seed=9) <= 2 / L


@pytest.mark.slow
def test_scrambled_purify_probability_at_sixteen_sites():
    L, trials = 16, 10_000
    sigma = np.sqrt((2 / L) * (1 - 2 / L) / trials)
    assert _purify_rate(L, "canonical", trials, seed=16) <= 2 / L + 3 * sigma
