import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import pure_pair_trace_distance, trace_norm_svd
from quantum_guesswork.errors import ValidationError
from quantum_guesswork.hermitian import (
    as_hermitian,
    is_psd,
    loewner_geq,
    matrix_abs,
    projector_parts,
    spectral_decompose,
    trace_norm,
)
from quantum_guesswork.objects import basis_state, pure_state, random_density

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Z = np.diag([1.0, -1.0]).astype(complex)

seeds = st.integers(0, 2**32 - 1)
dims = st.integers(1, 6)


def random_hermitian(dim, seed):
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (g + g.conj().T) / 2


def test_spectral_decompose_identity():
    es = spectral_decompose(np.eye(2))
    np.testing.assert_allclose(es.eigenvalues, [1, 1])


def test_spectral_decompose_diagonal():
    es = spectral_decompose(np.diag([3.0, -1.0]))
    np.testing.assert_allclose(es.eigenvalues, [3, -1])
    np.testing.assert_allclose(np.abs(es.eigenvectors), np.eye(2), atol=1e-12)


def test_spectral_decompose_pauli_x():
    es = spectral_decompose(PAULI_X)
    np.testing.assert_allclose(es.eigenvalues, [1, -1], atol=1e-12)
    # eigenvectors are (1, +1)/sqrt2 and (1, -1)/sqrt2 up to phase
    for vec, sign in zip(es.eigenvectors.T, (1, -1)):
        expected = np.array([1, sign]) / np.sqrt(2)
        assert abs(abs(np.vdot(expected, vec)) - 1) < 1e-12


def test_non_hermitian_rejected():
    with pytest.raises(ValidationError):
        spectral_decompose(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ValidationError):
        spectral_decompose(np.ones((2, 3)))


def test_tiny_asymmetry_is_symmetrized():
    a = np.array([[1, 1e-13], [0, 2]], dtype=complex)
    np.testing.assert_allclose(as_hermitian(a), as_hermitian(a).conj().T)


@settings(max_examples=60, deadline=None)
@given(dim=dims, seed=seeds)
def test_reconstruction_and_orthonormality(dim, seed):
    a = random_hermitian(dim, seed)
    es = spectral_decompose(a)
    assert np.all(np.diff(es.eigenvalues) <= 0)
    np.testing.assert_allclose(es.reconstruct(), a, atol=1e-10)
    np.testing.assert_allclose(es.eigenvectors.conj().T @ es.eigenvectors, np.eye(dim), atol=1e-10)


def test_matrix_abs_examples():
    np.testing.assert_allclose(matrix_abs(np.diag([3.0, -1.0])), np.diag([3, 1]), atol=1e-12)
    rho = random_density(3, seed=1)
    np.testing.assert_allclose(matrix_abs(rho), rho, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(dim=dims, seed=seeds)
def test_abs_and_trace_norm_symmetry(dim, seed):
    a = random_hermitian(dim, seed)
    np.testing.assert_allclose(matrix_abs(-a), matrix_abs(a), atol=1e-10)
    assert is_psd(matrix_abs(a))
    assert trace_norm(a) == pytest.approx(np.trace(matrix_abs(a)).real, abs=1e-10)
    assert trace_norm(-a) == pytest.approx(trace_norm(a), abs=1e-12)
    assert trace_norm(a) == pytest.approx(trace_norm_svd(a), abs=1e-10)


def test_trace_norm_examples():
    assert trace_norm(np.diag([3.0, -1.0])) == pytest.approx(4)
    assert trace_norm(np.zeros((3, 3))) == 0
    diff = basis_state(2, 0) - pure_state([1, 1])
    assert trace_norm(diff) == pytest.approx(pure_pair_trace_distance([1, 0], [1, 1]), abs=1e-12)
    assert trace_norm(diff) == pytest.approx(np.sqrt(2), abs=1e-12)


def test_projector_parts_examples():
    pos, neg, null = projector_parts(np.diag([3.0, -1.0]))
    np.testing.assert_allclose(pos, np.diag([1, 0]), atol=1e-12)
    np.testing.assert_allclose(neg, np.diag([0, 1]), atol=1e-12)
    np.testing.assert_allclose(null, 0, atol=1e-12)

    pos, neg, null = projector_parts(np.zeros((2, 2)))
    np.testing.assert_allclose(null, np.eye(2))

    pos, neg, _ = projector_parts(PAULI_Z)
    np.testing.assert_allclose(pos, basis_state(2, 0), atol=1e-12)
    np.testing.assert_allclose(neg, basis_state(2, 1), atol=1e-12)


def test_projector_parts_zero_tol_is_respected():
    a = np.diag([1.0, 1e-6, -1.0])
    _, _, null = projector_parts(a, zero_tol=1e-5)
    assert np.trace(null).real == pytest.approx(1)
    pos, _, _ = projector_parts(a, zero_tol=1e-9)
    assert np.trace(pos).real == pytest.approx(2)
    with pytest.raises(ValidationError):
        projector_parts(a, zero_tol=0)


@settings(max_examples=40, deadline=None)
@given(dim=dims, seed=seeds, rank_drop=st.integers(0, 3))
def test_projectors_resolve_identity(dim, seed, rank_drop):
    a = random_hermitian(dim, seed)
    # inject an exact null space
    vals, vecs = np.linalg.eigh(a)
    vals[: min(rank_drop, dim)] = 0
    a = (vecs * vals) @ vecs.conj().T
    parts = projector_parts(a)
    np.testing.assert_allclose(sum(parts), np.eye(dim), atol=1e-10)
    for i, p in enumerate(parts):
        np.testing.assert_allclose(p @ p, p, atol=1e-10)
        np.testing.assert_allclose(p, p.conj().T, atol=1e-12)
        for q in parts[i + 1 :]:
            np.testing.assert_allclose(p @ q, 0, atol=1e-10)


def test_is_psd():
    assert is_psd(np.eye(2))
    assert not is_psd(np.diag([1, -0.5]), 1e-9)
    assert is_psd(np.diag([1, -1e-12]), 1e-9)


def test_loewner_geq():
    assert loewner_geq(2 * np.eye(2), np.eye(2))
    a, b = np.diag([2.0, 0.0]), np.diag([0.0, 2.0])
    assert not loewner_geq(a, b) and not loewner_geq(b, a)
    assert loewner_geq(a, a)
    with pytest.raises(ValidationError):
        loewner_geq(np.eye(2), np.eye(3))


@settings(max_examples=60, deadline=None)
@given(dim=st.integers(1, 5), seed=seeds)
def test_trace_monotone_lemma(dim, seed):
    rng = np.random.default_rng(seed)
    a = random_density(dim, seed=rng)
    x = random_hermitian(dim, rng.integers(2**32))
    y = x + random_density(dim, seed=rng) * rng.exponential()
    assert loewner_geq(y, x)
    assert np.trace(a @ x).real <= np.trace(a @ y).real + 1e-10
