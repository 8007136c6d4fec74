"""Heisenberg evolutions for the reference and deformed Hamiltonians.

The deformed Hamiltonian is the similarity transform H = T H0 T^{-1} with
adjoint companion H^dag = (T^H)^{-1} H0 T^H; both share the real spectrum of
H0 while H itself is non-normal.  The propagators are *defined* through the
same similarity,

    e^{itH}     = T e^{itH0} T^{-1},
    e^{itH^dag} = (T^H)^{-1} e^{itH0} T^H,

never through a general dense matrix exponential, and e^{itH0} is assembled
from the known eigenpairs (frame columns, lambda_n).  Three one-parameter
groups act on observables:

    alpha0_t(X)   = e^{itH0} X e^{-itH0}          (a *-automorphism group)
    alphaphi_t(X) = e^{itH}  X e^{-itH}
    alphapsi_t(X) = e^{itHd} X e^{-itHd}

The deformed pair are automorphism groups that exchange under the adjoint,
``alphaphi_t(X)^H = alphapsi_t(X^H)``; individually they do not respect the
star operation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from numpy.typing import NDArray

from . import numerics
from .gibbs import Spectrum, standard_hamiltonian
from .numerics import CMatrix
from .riesz import RieszSystem

Evolution = Literal["0", "phi", "psi"]


@dataclass(frozen=True)
class NonHermitianHamiltonian:
    """H = T H0 T^{-1} and its adjoint companion, with cached spectral data."""

    system: RieszSystem
    spectrum: Spectrum
    h0: CMatrix = field(repr=False)
    h: CMatrix = field(repr=False)
    h_dag: CMatrix = field(repr=False)


def hamiltonian(system: RieszSystem, spectrum: Spectrum) -> NonHermitianHamiltonian:
    h0 = standard_hamiltonian(system, spectrum)
    t, ti = system.t_op, system.t_inv
    h = t @ h0 @ ti
    h_dag = numerics.dagger(ti) @ h0 @ numerics.dagger(t)
    return NonHermitianHamiltonian(system=system, spectrum=spectrum, h0=h0, h=h, h_dag=h_dag)


def h0_exponential(ham: NonHermitianHamiltonian, z: complex) -> CMatrix:
    """e^{izH0} = F diag(e^{iz lambda}) F^H for any complex z."""
    f = ham.system.frame
    phases = np.exp(1j * z * ham.spectrum.lambdas)
    return (f * phases) @ numerics.dagger(f)


def exp_ith(ham: NonHermitianHamiltonian, t: float) -> CMatrix:
    """e^{itH} via the similarity factorization."""
    return ham.system.t_op @ h0_exponential(ham, t) @ ham.system.t_inv


def exp_ithdag(ham: NonHermitianHamiltonian, t: float) -> CMatrix:
    """e^{itH^dag} via the adjoint similarity factorization."""
    ti_h = numerics.dagger(ham.system.t_inv)
    return ti_h @ h0_exponential(ham, t) @ numerics.dagger(ham.system.t_op)


def alpha0(ham: NonHermitianHamiltonian, t: float, x: CMatrix) -> CMatrix:
    u = h0_exponential(ham, t)
    return u @ x @ numerics.dagger(u)


def alpha_phi(ham: NonHermitianHamiltonian, t: float, x: CMatrix) -> CMatrix:
    return exp_ith(ham, t) @ x @ exp_ith(ham, -t)


def alpha_psi(ham: NonHermitianHamiltonian, t: float, x: CMatrix) -> CMatrix:
    return exp_ithdag(ham, t) @ x @ exp_ithdag(ham, -t)


def evolve(ham: NonHermitianHamiltonian, which: Evolution, t: float, x: CMatrix) -> CMatrix:
    if which == "0":
        return alpha0(ham, t, x)
    if which == "phi":
        return alpha_phi(ham, t, x)
    if which == "psi":
        return alpha_psi(ham, t, x)
    raise ValueError(f"unknown evolution {which!r}")


def generator_of(ham: NonHermitianHamiltonian, which: Evolution) -> CMatrix:
    return {"0": ham.h0, "phi": ham.h, "psi": ham.h_dag}[which]


def generator_residual(
    ham: NonHermitianHamiltonian, which: Evolution, x: CMatrix, t_step: float
) -> float:
    """||(alpha_t(X) - X)/t - i[G, X]||_F for the first-order difference quotient.

    Shrinks linearly in t_step for smooth X; vanishes (to roundoff) when X
    commutes with the generator.
    """
    if t_step <= 0.0:
        raise ValueError("t_step must be positive")
    g = generator_of(ham, which)
    quotient = (evolve(ham, which, t_step, x) - x) / t_step
    commutator = 1j * (g @ x - x @ g)
    return numerics.frobenius(quotient - commutator)


def spectrum_residual(ham: NonHermitianHamiltonian) -> float:
    """max_n |eig_n(H) - lambda_n| with eigenvalues sorted by real part.

    The general (non-Hermitian) eigenvalues are computed as an independent
    oracle; the similarity H = T H0 T^{-1} forces them onto the real spectrum.
    """
    eigs = np.linalg.eigvals(ham.h)
    eigs = eigs[np.argsort(eigs.real)]
    return float(np.max(np.abs(eigs - ham.spectrum.lambdas)))


def eigenvector_residual(ham: NonHermitianHamiltonian) -> float:
    """Largest of ||H phi_n - lambda_n phi_n|| and ||H^dag psi_n - lambda_n psi_n||."""
    lam = ham.spectrum.lambdas
    r_phi = ham.h @ ham.system.phi - ham.system.phi * lam
    r_psi = ham.h_dag @ ham.system.psi - ham.system.psi * lam
    return float(
        max(np.max(np.linalg.norm(r_phi, axis=0)), np.max(np.linalg.norm(r_psi, axis=0)))
    )


def generator_tolerance(cond_t: float, lambdas: NDArray[np.float64]) -> float:
    return 1e-10 * max(cond_t, 1.0) * float(np.max(lambdas))
