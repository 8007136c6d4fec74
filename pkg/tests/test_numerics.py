import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from rieszgibbs import numerics
from rieszgibbs.errors import DomainError, NotHermitian, Singular

E1 = np.exp(-1.0)
E2 = np.exp(-2.0)


def random_hermitian(n, rng, scale=1.0):
    b = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * (b + b.conj().T)


class TestHermEig:
    def test_diagonal_is_exact(self):
        eig = numerics.herm_eig(np.diag([1.0, 2.0]).astype(complex))
        np.testing.assert_allclose(eig.values, [1.0, 2.0], rtol=0, atol=0)
        np.testing.assert_allclose(np.abs(eig.vectors), np.eye(2), atol=1e-15)

    def test_pauli_x_spectrum(self):
        # characteristic polynomial lambda^2 - 1
        eig = numerics.herm_eig(np.array([[0, 1], [1, 0]], dtype=complex))
        np.testing.assert_allclose(eig.values, [-1.0, 1.0], atol=1e-15)

    def test_reconstruction_residual(self, rng):
        a = random_hermitian(16, rng)
        eig = numerics.herm_eig(a)
        recon = eig.vectors @ np.diag(eig.values) @ eig.vectors.conj().T
        assert numerics.frobenius(recon - a) <= 1e-12 * numerics.frobenius(a)

    def test_large_dimension_residual(self, rng):
        a = random_hermitian(128, rng)
        eig = numerics.herm_eig(a)
        recon = eig.vectors @ np.diag(eig.values) @ eig.vectors.conj().T
        assert numerics.frobenius(recon - a) <= 1e-11 * numerics.frobenius(a)
        ortho = eig.vectors.conj().T @ eig.vectors - np.eye(128)
        assert numerics.frobenius(ortho) <= 1e-12 * np.sqrt(128)

    def test_ascending_order(self, rng):
        eig = numerics.herm_eig(random_hermitian(9, rng))
        assert np.all(np.diff(eig.values) >= 0)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            numerics.herm_eig(np.array([[0, 1], [0, 0]], dtype=complex))


class TestSvd:
    def test_identity(self):
        u, s, v = numerics.svd(np.eye(3, dtype=complex))
        np.testing.assert_allclose(s, np.ones(3), atol=1e-15)

    def test_diagonal_nonneg(self):
        _, s, _ = numerics.svd(np.diag([3.0, 0.0]).astype(complex))
        np.testing.assert_allclose(s, [3.0, 0.0], atol=1e-15)

    def test_golden_ratio_values(self):
        # sigma1*sigma2 = |det| = 1 and sigma1^2 + sigma2^2 = ||A||_F^2 = 3
        a = np.array([[1, 1], [0, 1]], dtype=complex)
        u, s, v = numerics.svd(a)
        assert abs(s[0] * s[1] - 1.0) < 1e-14
        assert abs(s[0] ** 2 + s[1] ** 2 - 3.0) < 1e-14
        np.testing.assert_allclose(u @ np.diag(s) @ v.conj().T, a, atol=1e-14)

    def test_descending(self, rng):
        _, s, _ = numerics.svd(rng.standard_normal((7, 7)) + 0j)
        assert np.all(np.diff(s) <= 0) and np.all(s >= 0)


class TestAbsOfAdjoint:
    def test_unitary_gives_identity(self, rng):
        from rieszgibbs.models import random_unitary

        u = random_unitary(5, rng)
        np.testing.assert_allclose(numerics.abs_of_adjoint(u), np.eye(5), atol=1e-13)

    def test_positive_diagonal_fixed(self):
        d = np.diag([2.0, 3.0]).astype(complex)
        np.testing.assert_allclose(numerics.abs_of_adjoint(d), d, atol=1e-14)

    def test_jordan_block_invariants(self):
        # AA* = [[2,1],[1,1]]: tr P^2 = 3, det P = 1
        a = np.array([[1, 1], [0, 1]], dtype=complex)
        p = numerics.abs_of_adjoint(a)
        assert abs(np.trace(p @ p).real - 3.0) < 1e-13
        assert abs(np.linalg.det(p).real - 1.0) < 1e-13

    def test_square_recovers_gram(self, rng):
        a = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
        p = numerics.abs_of_adjoint(a)
        gram = a @ a.conj().T
        assert numerics.frobenius(p @ p - gram) <= 1e-10 * numerics.frobenius(a) ** 2


class TestFuncOfHermitian:
    def test_exp_on_diagonal_exact(self):
        out = numerics.func_of_hermitian(np.diag([1.0, 2.0]).astype(complex), lambda x: np.exp(-x))
        np.testing.assert_array_equal(out, np.diag([E1, E2]))

    def test_log_on_diagonal_exact(self):
        out = numerics.func_of_hermitian(np.diag([np.e, np.e**2]).astype(complex), np.log)
        np.testing.assert_allclose(out, np.diag([1.0, 2.0]), atol=0)

    def test_imaginary_power_is_unitary(self, rng):
        a = random_hermitian(6, rng)
        a = a @ a.conj().T + np.eye(6)  # positive definite
        u = numerics.func_of_hermitian(a, lambda x: x ** (1j * 0.7))
        assert numerics.frobenius(u.conj().T @ u - np.eye(6)) < 1e-12

    def test_exp_inverse_pair(self, rng):
        a = random_hermitian(8, rng, scale=0.5)
        fwd = numerics.func_of_hermitian(a, np.exp)
        bwd = numerics.func_of_hermitian(a, lambda x: np.exp(-x))
        assert numerics.frobenius(fwd @ bwd - np.eye(8)) <= 1e-10

    def test_log_domain_error(self):
        with pytest.raises(DomainError):
            numerics.func_of_hermitian(np.diag([1.0, -1.0]).astype(complex), np.log)
        with pytest.raises(DomainError):
            numerics.func_of_hermitian(np.diag([0.0, 1.0]).astype(complex), np.log)


class TestInverseTraceInner:
    def test_inverse_closed_form(self):
        a = np.array([[1, 1], [0, 1]], dtype=complex)
        np.testing.assert_allclose(numerics.inverse(a), [[1, -1], [0, 1]], atol=1e-15)

    def test_inverse_residual(self, rng):
        a = np.eye(12) + 0.3 * (rng.standard_normal((12, 12)) + 1j * rng.standard_normal((12, 12)))
        assert numerics.frobenius(a @ numerics.inverse(a) - np.eye(12)) <= 1e-12 * numerics.cond(a)

    def test_singular_refused(self):
        with pytest.raises(Singular):
            numerics.inverse(np.array([[1, 1], [1, 1]], dtype=complex))
        with pytest.raises(Singular):
            numerics.inverse(np.diag([1.0, 1e-15]).astype(complex))

    def test_trace_fixed_value(self):
        assert abs(numerics.trace(np.diag([E1, E2])) - 0.5032147244080551) < 1e-15

    def test_hs_inner_identity(self):
        assert numerics.hs_inner(np.eye(2), np.eye(2)) == pytest.approx(2.0)

    def test_hs_inner_matches_trace_form(self, rng):
        s = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        t = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        assert numerics.hs_inner(s, t) == pytest.approx(np.trace(t.conj().T @ s))

    def test_non_finite_entries_rejected(self):
        with pytest.raises(ValueError, match="finite"):
            numerics.as_operator(np.array([[1.0, np.nan], [0.0, 1.0]]))
        with pytest.raises(ValueError, match="square"):
            numerics.as_operator(np.ones((2, 3)))


finite_entries = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)


@settings(max_examples=25, deadline=None)
@given(
    re=arrays(np.float64, (4, 4), elements=finite_entries),
    im=arrays(np.float64, (4, 4), elements=finite_entries),
)
def test_hs_inner_positive_definite(re, im):
    s = re + 1j * im
    val = numerics.hs_inner(s, s)
    assert val.imag == 0.0
    assert val.real >= 0.0
    if np.any(s != 0):
        assert val.real > 0.0


@settings(max_examples=25, deadline=None)
@given(
    re=arrays(np.float64, (4, 4), elements=finite_entries),
    im=arrays(np.float64, (4, 4), elements=finite_entries),
)
def test_herm_eig_reconstructs_any_hermitian(re, im):
    a = (re + 1j * im) + (re + 1j * im).conj().T
    eig = numerics.herm_eig(a)
    recon = eig.vectors @ np.diag(eig.values) @ eig.vectors.conj().T
    assert numerics.frobenius(recon - a) <= 1e-12 * max(1.0, numerics.frobenius(a))
