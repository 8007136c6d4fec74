import numpy as np
import pytest

from conftest import instance
from rieszgibbs import dynamics, gibbs, numerics, riesz
from rieszgibbs.models import random_observable

E01 = np.array([[0, 1], [0, 0]], dtype=complex)


def two_level_ham():
    sys_ = riesz.identity_system(2)
    spec = gibbs.Spectrum(lambdas=np.array([1.0, 2.0]), beta=1.0)
    return dynamics.hamiltonian(sys_, spec)


class TestAlpha0:
    def test_time_zero_is_identity_map(self, rng):
        ham = two_level_ham()
        x = random_observable(2, rng)
        np.testing.assert_array_equal(dynamics.alpha0(ham, 0.0, x), x)

    def test_hamiltonian_is_fixed(self):
        ham = two_level_ham()
        assert numerics.frobenius(dynamics.alpha0(ham, 3.7, ham.h0) - ham.h0) <= 1e-14

    def test_offdiagonal_phase(self):
        # entry (0,1) picks up e^{it(lambda_0 - lambda_1)} = e^{-it}
        ham = two_level_ham()
        for t in (0.3, 2.0, -5.0):
            out = dynamics.alpha0(ham, t, E01)
            assert out[0, 1] == pytest.approx(np.exp(-1j * t), abs=1e-15)
            assert abs(out[1, 0]) <= 1e-15


class TestPropagators:
    def test_time_zero(self):
        inst = instance("shift_half", n=8)
        ham = dynamics.hamiltonian(inst.system, inst.spectrum)
        np.testing.assert_allclose(dynamics.exp_ith(ham, 0.0), np.eye(8), atol=1e-14)
        np.testing.assert_allclose(dynamics.exp_ithdag(ham, 0.0), np.eye(8), atol=1e-14)

    def test_identity_t_matches_spectral_calculus(self):
        ham = two_level_ham()
        t = 1.3
        via_calculus = numerics.func_of_hermitian(ham.h0, lambda x: np.exp(1j * t * x))
        assert numerics.frobenius(dynamics.exp_ith(ham, t) - via_calculus) <= 1e-14

    def test_adjoint_relation_entrywise(self, jordan2):
        ham = dynamics.hamiltonian(jordan2.system, jordan2.spectrum)
        for t in (0.4, 1.9, -3.2):
            lhs = dynamics.exp_ith(ham, t).conj().T
            rhs = dynamics.exp_ithdag(ham, -t)
            assert np.max(np.abs(lhs - rhs)) <= 1e-13

    def test_group_law_of_propagators(self):
        inst = instance("exp_gen", n=10)
        ham = dynamics.hamiltonian(inst.system, inst.spectrum)
        s, t = 0.8, -2.1
        prod = dynamics.exp_ith(ham, s) @ dynamics.exp_ith(ham, t)
        assert numerics.frobenius(dynamics.exp_ith(ham, s + t) - prod) <= 1e-12


class TestDeformedEvolutions:
    def test_time_zero(self, rng, jordan2):
        ham = dynamics.hamiltonian(jordan2.system, jordan2.spectrum)
        x = random_observable(2, rng)
        np.testing.assert_allclose(dynamics.alpha_phi(ham, 0.0, x), x, atol=1e-15)

    def test_generator_is_fixed_point(self):
        inst = instance("shift_half", n=8)
        ham = dynamics.hamiltonian(inst.system, inst.spectrum)
        assert numerics.frobenius(dynamics.alpha_phi(ham, 2.2, ham.h) - ham.h) <= 1e-11

    def test_two_path_factorization(self, rng):
        # direct conjugation vs the sandwich through the reference evolution
        inst = instance("shift_half", n=32)
        sys_ = inst.system
        ham = dynamics.hamiltonian(sys_, inst.spectrum)
        x = random_observable(32, rng)
        t = 1.4
        direct = dynamics.alpha_phi(ham, t, x)
        sandwich = sys_.t_op @ dynamics.alpha0(ham, t, sys_.t_inv @ x @ sys_.t_op) @ sys_.t_inv
        assert numerics.frobenius(direct - sandwich) <= 1e-12

    def test_adjoint_exchanges_families(self, rng):
        inst = instance("exp_gen", n=12)
        ham = dynamics.hamiltonian(inst.system, inst.spectrum)
        x = random_observable(12, rng)
        for t in (0.5, -4.0):
            lhs = dynamics.alpha_phi(ham, t, x).conj().T
            rhs = dynamics.alpha_psi(ham, t, x.conj().T)
            assert numerics.frobenius(lhs - rhs) <= 1e-12

    def test_group_law(self, rng):
        inst = instance("diag_sqrt", n=16)
        ham = dynamics.hamiltonian(inst.system, inst.spectrum)
        x = random_observable(16, rng)
        for s, t in ((0.5, 0.25), (-3.0, 7.0), (9.0, -8.5)):
            for which in ("0", "phi", "psi"):
                lhs = dynamics.evolve(ham, which, s + t, x)
                rhs = dynamics.evolve(ham, which, s, dynamics.evolve(ham, which, t, x))
                assert numerics.frobenius(lhs - rhs) <= 1e-11

    def test_intertwining(self, rng):
        inst = instance("shift_half", n=16)
        sys_ = inst.system
        ham = dynamics.hamiltonian(sys_, inst.spectrum)
        x = random_observable(16, rng)
        t = 2.7
        lhs = dynamics.alpha_phi(ham, t, x) @ sys_.t_op
        rhs = sys_.t_op @ dynamics.alpha0(ham, t, sys_.t_inv @ x @ sys_.t_op)
        assert numerics.frobenius(lhs - rhs) <= 1e-11 * sys_.cond_t**2

    def test_psi_evolution_is_dual_phi(self, rng):
        inst = instance("exp_gen", n=10)
        ham = dynamics.hamiltonian(inst.system, inst.spectrum)
        dual_ham = dynamics.hamiltonian(riesz.dual_system(inst.system), inst.spectrum)
        x = random_observable(10, rng)
        t = 1.1
        assert numerics.frobenius(
            dynamics.alpha_psi(ham, t, x) - dynamics.alpha_phi(dual_ham, t, x)
        ) <= 1e-12


class TestGenerators:
    def test_commuting_observable_gives_zero(self):
        inst = instance("diag_sqrt", n=16)
        ham = dynamics.hamiltonian(inst.system, inst.spectrum)
        for which in ("0", "phi", "psi"):
            g = dynamics.generator_of(ham, which)
            assert dynamics.generator_residual(ham, which, g, 1.0) <= 1e-10

    def test_linear_shrinkage(self, rng):
        inst = instance("shift_half", n=8)
        ham = dynamics.hamiltonian(inst.system, inst.spectrum)
        x = random_observable(8, rng)
        for which in ("0", "phi", "psi"):
            r1 = dynamics.generator_residual(ham, which, x, 1e-3)
            r2 = dynamics.generator_residual(ham, which, x, 5e-4)
            assert 0.4 <= r2 / r1 <= 0.6

    def test_scalar_phase_taylor_bound(self):
        ham = two_level_ham()
        for t in (1e-2, 1e-3, 1e-4):
            assert dynamics.generator_residual(ham, "0", E01, t) <= t * numerics.frobenius(E01)

    def test_rejects_nonpositive_step(self):
        ham = two_level_ham()
        with pytest.raises(ValueError):
            dynamics.generator_residual(ham, "0", E01, 0.0)


class TestSpectralData:
    def test_eigenvalue_equations(self):
        for name, n in (("jordan2", None), ("shift_half", 16), ("exp_gen", 12)):
            inst = instance(name, n=n)
            ham = dynamics.hamiltonian(inst.system, inst.spectrum)
            tol = dynamics.generator_tolerance(inst.system.cond_t, inst.spectrum.lambdas)
            assert dynamics.eigenvector_residual(ham) <= tol

    def test_real_spectrum(self):
        for name, n in (("jordan2", None), ("diag_sqrt", 32), ("exp_gen", 16)):
            inst = instance(name, n=n)
            ham = dynamics.hamiltonian(inst.system, inst.spectrum)
            tol = 1e-9 * inst.system.cond_t * inst.spectrum.lambdas[-1]
            assert dynamics.spectrum_residual(ham) <= tol

    def test_hdag_is_matrix_adjoint(self):
        inst = instance("exp_gen", n=12)
        ham = dynamics.hamiltonian(inst.system, inst.spectrum)
        defect = numerics.frobenius(ham.h_dag - ham.h.conj().T)
        assert defect <= 1e-12 * numerics.frobenius(ham.h)
