import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_density, random_ket, random_matrix, seeds
from heliumgates.errors import DimensionError, NotHermitianError, NotPositiveError
from heliumgates.quantum import (
    BASIS,
    DIM,
    PAULI_X,
    PAULI_Z,
    BasisLabel,
    Spin,
    check_density_matrix,
    expm_hermitian,
    herm_matrix_function,
    ket,
    partial_trace_spin,
    phase_distance,
    projector,
    pure_fidelity,
    sqrtm_psd,
    state_fidelity,
    state_vector,
    tensor_product,
)

DOWN, UP = Spin.DOWN, Spin.UP


def test_basis_is_spin_major():
    labels = [(b.spin, b.rydberg) for b in BASIS]
    assert labels == [(DOWN, 1), (DOWN, 2), (DOWN, 3), (UP, 1), (UP, 2), (UP, 3)]
    assert DIM == 6
    assert [b.index for b in BASIS] == list(range(6))
    assert BasisLabel(UP, 2).index == 4


def test_basis_label_rejects_bad_level():
    with pytest.raises(ValueError):
        BasisLabel(UP, 4)


def test_state_vector_is_normalized():
    v = state_vector([3.0, 4.0j])
    assert abs(np.linalg.norm(v) - 1.0) <= 1e-12
    with pytest.raises(ValueError):
        state_vector([0.0, 0.0])


# ---- tensor products -------------------------------------------------------


def test_identity_tensor_identity():
    assert np.array_equal(tensor_product(np.eye(2), np.eye(3)), np.eye(6))


def test_spin_up_controlled_flip():
    x3 = np.zeros((3, 3))
    x3[0, 1] = x3[1, 0] = 1.0
    up = np.diag([0.0, 1.0])
    out = tensor_product(up, x3) @ ket(UP, 1)
    assert np.allclose(out, ket(UP, 2), atol=0)


def test_sigma_z_tensor_sigma_z_entries():
    expected = np.diag([1.0, -1.0, -1.0, 1.0])
    assert np.array_equal(tensor_product(PAULI_Z, PAULI_Z), expected)


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_tensor_product_associative(seed):
    rng = np.random.default_rng(seed)
    a, b, c = random_matrix(rng, 2), random_matrix(rng, 3, 2), random_matrix(rng, 2, 3)
    left = tensor_product(tensor_product(a, b), c)
    right = tensor_product(a, tensor_product(b, c))
    assert np.max(np.abs(left - right)) <= 1e-12


# ---- partial trace ---------------------------------------------------------


def test_partial_trace_of_basis_projector():
    red = partial_trace_spin(projector(ket(DOWN, 1)))
    assert np.array_equal(red, np.diag([1.0, 0.0, 0.0]).astype(complex))


def test_partial_trace_of_bell_pattern():
    phi = state_vector(ket(DOWN, 1) + ket(UP, 2))
    red = partial_trace_spin(projector(phi))
    assert np.allclose(red, np.diag([0.5, 0.5, 0.0]), atol=1e-15)


def test_partial_trace_of_product_state(rng):
    rho_s, rho_r = random_density(rng, 2), random_density(rng, 3)
    assert np.allclose(partial_trace_spin(np.kron(rho_s, rho_r)), rho_r, atol=1e-14)


def test_partial_trace_dimension_error():
    with pytest.raises(DimensionError):
        partial_trace_spin(np.eye(5) / 5)


@given(seeds)
@settings(max_examples=40, deadline=None)
def test_partial_trace_of_kron(seed):
    rng = np.random.default_rng(seed)
    a, b = random_matrix(rng, 2), random_matrix(rng, 3)
    out = partial_trace_spin(np.kron(a, b))
    assert np.max(np.abs(out - np.trace(a) * b)) <= 1e-12


# ---- fidelity --------------------------------------------------------------


def test_fidelity_examples(rng):
    rho = random_density(rng, 6)
    assert state_fidelity(rho, rho) == pytest.approx(1.0, abs=1e-9)
    zero, one = np.diag([1.0, 0.0]), np.diag([0.0, 1.0])
    assert state_fidelity(zero, one) == pytest.approx(0.0, abs=1e-12)
    plus = projector(np.array([1.0, 1.0]) / np.sqrt(2))
    assert state_fidelity(zero, plus) == pytest.approx(1 / np.sqrt(2), abs=1e-12)


def test_fidelity_of_mixed_states_matches_closed_form():
    # commuting states: F = sum_i sqrt(p_i q_i)
    p, q = np.array([0.7, 0.2, 0.1]), np.array([0.2, 0.5, 0.3])
    f = state_fidelity(np.diag(p), np.diag(q))
    assert f == pytest.approx(np.sum(np.sqrt(p * q)), abs=1e-12)


def test_fidelity_rejects_bad_inputs():
    with pytest.raises(NotPositiveError):
        state_fidelity(np.diag([1.2, -0.2]), np.diag([1.0, 0.0]))
    with pytest.raises(NotHermitianError):
        state_fidelity(np.array([[0.5, 0.3], [0.0, 0.5]]), np.eye(2) / 2)
    with pytest.raises(DimensionError):
        state_fidelity(np.eye(2) / 2, np.eye(3) / 3)


@given(seeds, st.integers(min_value=1, max_value=6))
@settings(max_examples=40, deadline=None)
def test_fidelity_symmetric(seed, rank):
    rng = np.random.default_rng(seed)
    a, b = random_density(rng, 6, rank), random_density(rng, 6)
    f_ab, f_ba = state_fidelity(a, b), state_fidelity(b, a)
    assert abs(f_ab - f_ba) <= 1e-9
    assert 0.0 <= f_ab <= 1.0


@given(seeds)
@settings(max_examples=40, deadline=None)
def test_fidelity_of_pure_states_is_overlap(seed):
    rng = np.random.default_rng(seed)
    psi, phi = random_ket(rng, 6), random_ket(rng, 6)
    f = state_fidelity(projector(psi), projector(phi))
    assert abs(f - pure_fidelity(psi, phi)) <= 1e-9


def test_check_density_matrix_tolerances():
    rho = np.diag([0.5, 0.5 + 5e-10])
    check_density_matrix(rho)
    with pytest.raises(ValueError):
        check_density_matrix(np.diag([0.5, 0.6]))
    with pytest.raises(ValueError):
        check_density_matrix(np.array([[1.0, np.nan], [np.nan, 0.0]]))


# ---- matrix functions -----------------------------------------------------


def test_exp_of_zero_is_identity():
    out = herm_matrix_function(np.zeros((4, 4)), np.exp)
    assert np.allclose(out, np.eye(4), atol=1e-15)


def test_sqrt_of_diagonal():
    out = herm_matrix_function(np.diag([4.0, 9.0]), np.sqrt)
    assert np.allclose(out, np.diag([2.0, 3.0]), atol=1e-14)
    assert np.allclose(sqrtm_psd(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]), atol=1e-14)


def test_pauli_exponential():
    out = expm_hermitian(np.pi / 2 * PAULI_X)
    assert np.allclose(out, -1j * PAULI_X, atol=1e-14)


def test_matrix_function_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        herm_matrix_function(np.array([[0.0, 1.0], [0.0, 0.0]]), np.exp)


@given(seeds, st.floats(min_value=0.01, max_value=50.0))
@settings(max_examples=40, deadline=None)
def test_exponential_is_unitary(seed, scale):
    rng = np.random.default_rng(seed)
    a = random_matrix(rng, 6)
    h = scale * (a + a.conj().T)
    u = expm_hermitian(h)
    assert np.max(np.abs(u.conj().T @ u - np.eye(6))) <= 1e-10


def test_phase_distance_ignores_global_phase(rng):
    a = random_matrix(rng, 3)
    assert phase_distance(a, np.exp(0.7j) * a) <= 1e-14
    assert phase_distance(a, -a) <= 1e-14
    assert phase_distance(a, a + 0.1) > 1e-3
