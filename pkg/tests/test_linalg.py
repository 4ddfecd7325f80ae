import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_density, random_hermitian, random_unitary
from illume import (
    eig,
    haar_random_state,
    partial_trace_first,
    projector,
    require_density_matrix,
    require_hermitian,
    require_state_vector,
    tensor,
    trace_norm,
)


class TestValidation:
    def test_rejects_non_square(self):
        with pytest.raises(ValueError, match="square"):
            require_hermitian(np.ones((2, 3)))

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError, match="Hermitian"):
            require_hermitian([[0.0, 1.0], [0.0, 0.0]])

    def test_accepts_tolerant_hermitian(self):
        a = np.array([[1.0, 0.5 + 1e-12j], [0.5 - 1e-12j, 2.0]])
        require_hermitian(a)

    def test_state_vector_norm(self):
        require_state_vector([1.0, 0.0])
        with pytest.raises(ValueError, match="normalized"):
            require_state_vector([1.0, 1.0])

    def test_density_checks(self):
        require_density_matrix(np.eye(3) / 3)
        with pytest.raises(ValueError, match="trace"):
            require_density_matrix(np.eye(3))
        with pytest.raises(ValueError, match="negative eigenvalue"):
            require_density_matrix(np.diag([1.5, -0.5]))


class TestEig:
    def test_diagonal_input(self):
        decomp = eig(np.diag([0.5, 0.3, 0.2]))
        np.testing.assert_allclose(decomp.eigenvalues, [0.5, 0.3, 0.2], atol=1e-14)
        # standard-basis eigenvectors, up to phase
        np.testing.assert_allclose(np.abs(decomp.eigenvectors), np.eye(3), atol=1e-14)

    def test_rank_one_projector(self):
        decomp = eig([[0.5, 0.5], [0.5, 0.5]])
        np.testing.assert_allclose(decomp.eigenvalues, [1.0, 0.0], atol=1e-14)

    def test_descending_order(self):
        rng = np.random.default_rng(1)
        values = eig(random_hermitian(rng, 6)).eigenvalues
        assert np.all(np.diff(values) <= 0)

    def test_reconstruction_random_4x4(self):
        rng = np.random.default_rng(7)
        op = random_hermitian(rng, 4)
        values, vectors = eig(op)
        rebuilt = (vectors * values) @ vectors.conj().T
        assert np.max(np.abs(rebuilt - op)) <= 1e-8

    def test_eigenvector_orthonormality(self):
        rng = np.random.default_rng(8)
        vectors = eig(random_hermitian(rng, 5)).eigenvectors
        gram = vectors.conj().T @ vectors
        assert np.max(np.abs(gram - np.eye(5))) <= 1e-8

    def test_basis_consistency_under_rotation(self):
        rng = np.random.default_rng(9)
        op = random_hermitian(rng, 5)
        u = random_unitary(rng, 5)
        rotated = u @ op @ u.conj().T
        np.testing.assert_allclose(
            eig(rotated).eigenvalues, eig(op).eigenvalues, atol=1e-8
        )


class TestTraceNorm:
    def test_zero_matrix(self):
        assert trace_norm(np.zeros((3, 3))) == 0.0

    def test_density_matrix_is_one(self):
        rng = np.random.default_rng(2)
        assert trace_norm(random_density(rng, 4)) == pytest.approx(1.0, abs=1e-12)

    def test_sum_of_absolute_eigenvalues(self):
        assert trace_norm(np.diag([0.3, -0.7])) == pytest.approx(1.0, abs=1e-14)

    @settings(max_examples=60, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), dim=st.integers(2, 6))
    def test_dominates_absolute_trace(self, seed, dim):
        rng = np.random.default_rng(seed)
        op = random_hermitian(rng, dim)
        tn = trace_norm(op)
        tr = abs(float(np.trace(op).real))
        assert tn >= tr - 1e-12
        # equality exactly when the spectrum has a single sign
        w = np.linalg.eigvalsh(op)
        if w[0] * w[-1] >= -1e-10:
            assert tn == pytest.approx(tr, abs=1e-10)
        else:
            assert tn > tr + 1e-10


class TestTensor:
    def test_identity(self):
        np.testing.assert_array_equal(tensor(np.eye(2), np.eye(2)), np.eye(4))

    def test_basis_bookkeeping(self):
        out = tensor(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]))
        np.testing.assert_array_equal(out, np.diag([0.0, 1.0, 0.0, 0.0]))

    def test_trace_multiplicative(self):
        rng = np.random.default_rng(3)
        a = random_hermitian(rng, 3)
        b = random_hermitian(rng, 4)
        assert np.trace(tensor(a, b)) == pytest.approx(
            np.trace(a) * np.trace(b), abs=1e-12
        )


class TestPartialTraceFirst:
    def test_product_state(self):
        rng = np.random.default_rng(4)
        rho = random_density(rng, 3)
        sigma = random_density(rng, 4)
        out = partial_trace_first(tensor(rho, sigma), 3, 4)
        np.testing.assert_allclose(out, sigma, atol=1e-12)

    def test_maximally_entangled(self):
        bell = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2)
        out = partial_trace_first(projector(bell), 2, 2)
        np.testing.assert_allclose(out, np.eye(2) / 2, atol=1e-14)

    def test_trace_preserved(self):
        rng = np.random.default_rng(5)
        op = random_hermitian(rng, 6)
        out = partial_trace_first(op, 2, 3)
        assert np.trace(out) == pytest.approx(np.trace(op), abs=1e-12)

    def test_recovers_second_factor_scaled(self):
        rng = np.random.default_rng(6)
        a = random_hermitian(rng, 2)
        b = random_hermitian(rng, 3)
        out = partial_trace_first(tensor(a, b), 2, 3)
        assert np.max(np.abs(out - np.trace(a) * b)) <= 1e-10

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="shape"):
            partial_trace_first(np.eye(5), 2, 3)


class TestHaarRandomState:
    def test_dim_one_is_a_phase(self):
        psi = haar_random_state(1, seed=0)
        assert abs(abs(psi[0]) - 1.0) <= 1e-14

    def test_deterministic_given_seed(self):
        np.testing.assert_array_equal(
            haar_random_state(5, seed=42), haar_random_state(5, seed=42)
        )

    def test_unit_norm(self):
        psi = haar_random_state(7, seed=1)
        assert np.linalg.norm(psi) == pytest.approx(1.0, abs=1e-12)

    def test_first_component_moment(self):
        # E|<e_0|psi>|^2 = 1/dim for Haar states; Monte-Carlo at dim 4
        rng = np.random.default_rng(123)
        n = 100_000
        acc = 0.0
        for _ in range(n):
            acc += abs(haar_random_state(4, rng)[0]) ** 2
        assert acc / n == pytest.approx(0.25, abs=0.01)

    def test_rejects_bad_dim(self):
        with pytest.raises(ValueError, match="dim"):
            haar_random_state(0, seed=0)
