"""Gibbs functionals for the frame family and its two deformed companions.

Given a spectrum of strictly positive energies lambda_n at inverse temperature
beta, the reference Hamiltonian is H0 = F diag(lambda) F^H.  Three normalized
positive functionals are realized, indexed by which family carries the
Boltzmann weights:

    kind "f"  : omega(X) = (1/Z0)   sum_n e^{-beta lambda_n} (X f_n  | f_n)
    kind "phi": omega(X) = (1/Zphi) sum_n e^{-beta lambda_n} (X phi_n|phi_n)
    kind "psi": omega(X) = (1/Zpsi) sum_n e^{-beta lambda_n} (X psi_n|psi_n)

Each admits an equivalent trace form, e.g. for the phi kind
``omega(X) = (1/Zphi) tr(T^H X T e^{-beta H0})``, and the agreement of the two
evaluation routes is one of the identities this package certifies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, NamedTuple

import numpy as np
from numpy.typing import NDArray

from . import numerics
from .errors import BadModel, DimensionMismatch, Overflow
from .numerics import CMatrix
from .riesz import RieszSystem

StateKind = Literal["f", "phi", "psi"]

#: exponent below which exp() would overflow double precision
_EXP_OVERFLOW = 700.0


@dataclass(frozen=True)
class Spectrum:
    """Strictly positive energies in ascending order plus inverse temperature."""

    lambdas: NDArray[np.float64]
    beta: float

    def __post_init__(self):
        lam = np.asarray(self.lambdas, dtype=float)
        if lam.ndim != 1 or lam.size == 0:
            raise BadModel("spectrum must be a nonempty 1-D array")
        if not np.all(np.isfinite(lam)):
            raise BadModel("spectrum must be finite")
        if np.min(lam) <= 0.0:
            raise BadModel("spectrum must be strictly positive")
        if np.any(np.diff(lam) < 0.0):
            raise BadModel("spectrum must be ascending")
        if not (np.isfinite(self.beta) and self.beta > 0.0):
            raise BadModel("inverse temperature must be positive")
        lam = lam.copy()
        lam.setflags(write=False)
        object.__setattr__(self, "lambdas", lam)

    @property
    def dim(self) -> int:
        return int(self.lambdas.size)

    def weights(self) -> NDArray[np.float64]:
        """Boltzmann weights e^{-beta lambda_n} (guarded against overflow)."""
        exponent = -self.beta * self.lambdas
        if np.max(exponent) > _EXP_OVERFLOW:
            raise Overflow("Boltzmann exponent exceeds double-precision range")
        return np.exp(exponent)


def _check_dims(system: RieszSystem, spectrum: Spectrum) -> None:
    if system.dim != spectrum.dim:
        raise DimensionMismatch(
            f"system dimension {system.dim} != spectrum length {spectrum.dim}"
        )


def standard_hamiltonian(system: RieszSystem, spectrum: Spectrum) -> CMatrix:
    """H0 = F diag(lambda) F^H, Hermitian positive with the frame as eigenbasis."""
    _check_dims(system, spectrum)
    f = system.frame
    return (f * spectrum.lambdas) @ numerics.dagger(f)


def boltzmann_operator(system: RieszSystem, spectrum: Spectrum, scale: float = 1.0) -> CMatrix:
    """e^{-scale * beta * H0} assembled directly from the spectral data."""
    _check_dims(system, spectrum)
    w = np.exp(-scale * spectrum.beta * spectrum.lambdas)
    f = system.frame
    return (f * w) @ numerics.dagger(f)


class PartitionConstants(NamedTuple):
    z0: float
    z_phi: float
    z_psi: float


def partition_constants(system: RieszSystem, spectrum: Spectrum) -> PartitionConstants:
    """Z0 = sum e^{-beta lambda_n}, and the norm-weighted Zphi, Zpsi."""
    _check_dims(system, spectrum)
    w = spectrum.weights()
    phi_norms = np.sum(np.abs(system.phi) ** 2, axis=0)
    psi_norms = np.sum(np.abs(system.psi) ** 2, axis=0)
    return PartitionConstants(
        z0=float(np.sum(w)),
        z_phi=float(np.sum(w * phi_norms)),
        z_psi=float(np.sum(w * psi_norms)),
    )


@dataclass(frozen=True)
class GibbsState:
    """One of the three normalized functionals, with cached evaluation data."""

    kind: StateKind
    partition: float
    system: RieszSystem
    spectrum: Spectrum
    # cached: family columns, Boltzmann weights and trace-form factors
    vectors: CMatrix = field(repr=False)
    weights: NDArray[np.float64] = field(repr=False)
    left: CMatrix = field(repr=False)
    right_boltzmann: CMatrix = field(repr=False)
    half_factor: CMatrix = field(repr=False)

    def __call__(self, x: CMatrix) -> complex:
        return omega_sum(self, x)


def gibbs_state(system: RieszSystem, spectrum: Spectrum, kind: StateKind) -> GibbsState:
    _check_dims(system, spectrum)
    z = partition_constants(system, spectrum)
    boltz = boltzmann_operator(system, spectrum)
    half = boltzmann_operator(system, spectrum, scale=0.5)
    if kind == "f":
        partition, vectors = z.z0, system.frame
        left = np.eye(system.dim, dtype=complex)
        c_op = np.eye(system.dim, dtype=complex)
    elif kind == "phi":
        partition, vectors = z.z_phi, system.phi
        left = numerics.dagger(system.t_op)
        c_op = system.t_op
    elif kind == "psi":
        partition, vectors = z.z_psi, system.psi
        left = system.t_inv
        c_op = numerics.dagger(system.t_inv)
    else:
        raise ValueError(f"unknown state kind {kind!r}")
    return GibbsState(
        kind=kind,
        partition=partition,
        system=system,
        spectrum=spectrum,
        vectors=vectors,
        weights=spectrum.weights(),
        left=left,
        right_boltzmann=c_op @ boltz,
        half_factor=c_op @ half,
    )


def omega_sum(state: GibbsState, x: CMatrix) -> complex:
    """Weighted sum over the family: (1/Z) sum_n w_n (X v_n | v_n)."""
    v = state.vectors
    quad = np.einsum("in,in->n", v.conj(), x @ v)
    return complex(np.sum(state.weights * quad) / state.partition)


def omega_trace(state: GibbsState, x: CMatrix) -> complex:
    """Trace form of the same functional, e.g. (1/Zphi) tr(T^H X T e^{-beta H0})."""
    return complex(np.trace(state.left @ x @ state.right_boltzmann) / state.partition)


def omega_trace_sandwich(state: GibbsState, x: CMatrix) -> complex:
    """Sandwich ordering (1/Z) tr((C e^{-beta H0/2})^H X (C e^{-beta H0/2}))."""
    k = state.half_factor
    return complex(np.trace(numerics.dagger(k) @ x @ k) / state.partition)


def omega_ratio_residual(system: RieszSystem, spectrum: Spectrum, x: CMatrix) -> float:
    """|omega_phi(X) - (Z0/Zphi) omega_f(T^H X T)|, zero in exact arithmetic."""
    z = partition_constants(system, spectrum)
    state_phi = gibbs_state(system, spectrum, "phi")
    state_f = gibbs_state(system, spectrum, "f")
    pulled = numerics.dagger(system.t_op) @ x @ system.t_op
    lhs = omega_sum(state_phi, x)
    rhs = (z.z0 / z.z_phi) * omega_trace(state_f, pulled)
    return abs(lhs - rhs)


class FaithfulnessWitness(NamedTuple):
    min_eigenvalue: float
    density: CMatrix


def faithfulness_witness(state: GibbsState) -> FaithfulnessWitness:
    """Density operator rho with omega(X) = tr(X rho) and its smallest eigenvalue.

    For the phi kind rho = T e^{-beta H0} T^H / Zphi; the functional is
    faithful exactly when rho is positive definite.  The construction keeps
    rho Hermitian by symmetrizing roundoff.
    """
    boltz = boltzmann_operator(state.system, state.spectrum)
    if state.kind == "f":
        rho = boltz / state.partition
    elif state.kind == "phi":
        t = state.system.t_op
        rho = t @ boltz @ numerics.dagger(t) / state.partition
    else:
        ti = state.system.t_inv
        rho = numerics.dagger(ti) @ boltz @ ti / state.partition
    rho = 0.5 * (rho + numerics.dagger(rho))
    eig = numerics.herm_eig(rho)
    return FaithfulnessWitness(min_eigenvalue=float(eig.values[0]), density=rho)


def state_tolerance(cond_t: float, dim: int) -> float:
    """Error allowance for double-precision trace chains."""
    return 1e-11 * max(cond_t, 1.0) ** 2 * dim
