import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import expm_series
from twistphase import (
    DegeneracyError,
    InvalidInputError,
    eigenpairs,
    eta_phi_generator,
    from_circular,
    hermitian_inner,
    mat_exp,
    normalized,
    rotation_matrix,
    to_circular,
)
from twistphase.media import birefringence_generator

finite = st.floats(-10, 10, allow_nan=False)
angles = st.floats(0, 2 * math.pi, allow_nan=False, exclude_max=True)


def lossless_generator(a, b, c, d):
    # -i times a Hermitian matrix; d is the isotropic part
    H = np.array([[a + d, b - 1j * c], [b + 1j * c, -a + d]])
    return -1j * H


class TestRotation:
    def test_identity(self):
        np.testing.assert_array_equal(rotation_matrix(0.0), np.eye(2))

    def test_quarter_turn(self):
        np.testing.assert_allclose(rotation_matrix(math.pi / 2), [[0, -1], [1, 0]], atol=1e-16)

    def test_half_turn(self):
        np.testing.assert_allclose(rotation_matrix(math.pi), -np.eye(2), atol=1e-15)

    @pytest.mark.parametrize("bad", [math.nan, math.inf])
    def test_non_finite(self, bad):
        with pytest.raises(InvalidInputError):
            rotation_matrix(bad)

    @given(finite)
    def test_inverse(self, a):
        np.testing.assert_allclose(rotation_matrix(a) @ rotation_matrix(-a), np.eye(2), atol=1e-14)

    @given(finite)
    def test_orthogonal_unit_determinant(self, a):
        S = rotation_matrix(a)
        np.testing.assert_allclose(S.T @ S, np.eye(2), atol=1e-14)
        assert np.linalg.det(S) == pytest.approx(1.0, abs=1e-14)


class TestMatExp:
    def test_zero_generator(self):
        np.testing.assert_array_equal(mat_exp(np.zeros((2, 2)), 3.7), np.eye(2))

    def test_rotator_quarter(self):
        N = eta_phi_generator(1.0, 0.0)
        expected = expm_series(N, math.pi / 2)
        np.testing.assert_allclose(expected, [[0, -1], [1, 0]], atol=1e-13)
        np.testing.assert_allclose(mat_exp(N, math.pi / 2), expected, atol=1e-13)

    def test_pauli_closed_form(self):
        N = eta_phi_generator(1.0, math.pi / 4)
        expected = expm_series(N, 1.0)
        np.testing.assert_allclose(expected, math.cos(1) * np.eye(2) + math.sin(1) * N, atol=1e-13)
        np.testing.assert_allclose(mat_exp(N, 1.0), expected, atol=1e-13)

    def test_non_lossless_traceless(self):
        # Hermitian generator: real growth rates, complex-root branch
        N = birefringence_generator(0.3, 0.8)
        np.testing.assert_allclose(mat_exp(N, 1.3), expm_series(N, 1.3), atol=1e-12)

    def test_nilpotent(self):
        N = np.array([[0, 2.0], [0, 0]])
        np.testing.assert_allclose(mat_exp(N, 0.5), [[1, 1], [0, 1]], atol=1e-15)

    def test_tiny_delta_series_branch(self):
        N = eta_phi_generator(1e-9, 0.3)
        np.testing.assert_allclose(mat_exp(N, 2.0), expm_series(N, 2.0), atol=1e-15)

    def test_general_matrix_fallback(self):
        N = np.array([[0.2 + 0.1j, -0.4], [0.7j, -0.5]])
        np.testing.assert_allclose(mat_exp(N, 1.5), expm_series(N, 1.5), atol=1e-12)

    @settings(max_examples=60)
    @given(finite, finite, finite, finite, st.floats(-10, 10), st.floats(-1, 1), st.floats(-1, 1))
    def test_unitarity(self, a, b, c, d, z, re, im):
        N = lossless_generator(a / 5, b / 5, c / 5, d / 5)
        eps = np.array([1.0 + re * 1j, im - 0.5j])
        out = mat_exp(N, z) @ eps
        assert np.linalg.norm(out) == pytest.approx(np.linalg.norm(eps), abs=1e-10)

    @settings(max_examples=60)
    @given(finite, finite, finite, st.floats(-5, 5), st.floats(-5, 5))
    def test_semigroup(self, a, b, c, z1, z2):
        N = lossless_generator(a / 5, b / 5, c / 5, 0.0)
        np.testing.assert_allclose(mat_exp(N, z1 + z2), mat_exp(N, z1) @ mat_exp(N, z2), atol=1e-10)

    def test_non_finite_z(self):
        with pytest.raises(InvalidInputError):
            mat_exp(np.zeros((2, 2)), math.inf)


class TestEigenpairs:
    def test_paper_generator(self):
        (l1, v1), (l2, v2) = eigenpairs(eta_phi_generator(2.0, 0.0))
        assert l1 == pytest.approx(2j, abs=1e-14)
        assert l2 == pytest.approx(-2j, abs=1e-14)
        np.testing.assert_allclose(v1, [1j, 1], atol=1e-14)
        np.testing.assert_allclose(v2, [-1j, 1], atol=1e-14)

    def test_zero_is_degenerate(self):
        with pytest.raises(DegeneracyError) as info:
            eigenpairs(np.zeros((2, 2)))
        assert info.value.eigenvalue == 0

    def test_defective(self):
        with pytest.raises(DegeneracyError):
            eigenpairs([[1.0, 1.0], [0.0, 1.0]])

    def test_pure_rotator(self):
        # characteristic polynomial l^2 + 1 = 0; (N - iI)v = 0 -> v1 = i v2
        N = birefringence_generator(1.0, 0.0)
        (l1, v1), (l2, v2) = eigenpairs(N)
        assert (l1, l2) == (pytest.approx(1j), pytest.approx(-1j))
        np.testing.assert_allclose(v1, [1j, 1], atol=1e-15)
        np.testing.assert_allclose(v2, [-1j, 1], atol=1e-15)
        for lam, v in ((l1, v1), (l2, v2)):
            assert np.linalg.norm(N @ v - lam * v) <= 1e-12

    def test_second_component_zero(self):
        (l1, v1), (l2, v2) = eigenpairs(np.diag([1j, -1j]))
        np.testing.assert_array_equal(v1, [1, 0])
        np.testing.assert_array_equal(v2, [0, 1])

    @settings(max_examples=100)
    @given(finite, finite, finite)
    def test_residual_random_lossless(self, a, b, c):
        N = lossless_generator(a, b, c, 0.0)
        if np.linalg.norm([a, b, c]) < 1e-3:
            return
        for lam, v in eigenpairs(N):
            assert np.linalg.norm(N @ v - lam * v) / np.linalg.norm(v) <= 1e-12

    @given(st.floats(0.1, 10), angles)
    def test_paper_generator_grid(self, eta, phi):
        (l1, v1), (l2, v2) = eigenpairs(eta_phi_generator(eta, phi))
        assert abs(l1 - 1j * eta) <= 1e-12
        assert abs(l2 + 1j * eta) <= 1e-12


class TestInner:
    def test_unit(self):
        assert hermitian_inner([1, 0], [1, 0]) == 1

    def test_lcp_rcp_orthogonal(self):
        assert hermitian_inner([1, 1j], [1, -1j]) == 0

    def test_direct(self):
        assert hermitian_inner([1j, 1], [1, 1j]) == 0

    @given(finite, finite, finite, finite, finite, finite, finite, finite)
    def test_conjugate_symmetry(self, a, b, c, d, e, f, g, h):
        u, v = [a + b * 1j, c + d * 1j], [e + f * 1j, g + h * 1j]
        assert hermitian_inner(u, v) == pytest.approx(np.conj(hermitian_inner(v, u)))


def test_circular_basis_round_trip():
    eps = np.array([0.3 - 0.2j, 1.1 + 0.5j])
    np.testing.assert_allclose(from_circular(to_circular(eps)), eps, atol=1e-15)
    # LCP (1, i) is purely psi_- in this basis
    np.testing.assert_allclose(to_circular([1, 1j]), [0, math.sqrt(2)], atol=1e-15)


def test_normalized():
    np.testing.assert_allclose(np.linalg.norm(normalized([3, 4j])), 1.0)
    with pytest.raises(InvalidInputError):
        normalized([0, 0])


def test_shape_validation():
    with pytest.raises(InvalidInputError):
        hermitian_inner([1, 2, 3], [1, 2, 3])
    with pytest.raises(InvalidInputError):
        mat_exp(np.eye(3), 1.0)
