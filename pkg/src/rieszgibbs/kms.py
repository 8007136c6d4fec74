"""Strip functions and the twisted boundary identities of the deformed states.

For observables X, Y the two-point function

    f_{X,Y}(z) = (1/Z) tr(C^H X alpha_z(Y) C e^{-beta H0}),   0 <= Im z <= beta,

with C the constructing operator of the family (C = T for the phi state,
C = (T^{-1})^H for the psi state) is entire at finite dimension and matches
the state on both strip boundaries, up to a twist by M = C C^H on the shifted
one:

    f(t)          = omega(X alpha_t(Y)),
    f(t + i beta) = omega(M^{-1} alpha_t(Y) M X).

For a unitary constructing operator the twist drops out and the boundary pair
is the textbook thermal condition.  Numerically the Boltzmann factor is merged
into the complex evolution phases so every factor in the trace chain stays
bounded on the strip.
"""

from __future__ import annotations

import cmath
import warnings
from dataclasses import dataclass, field
from typing import Literal, NamedTuple, Sequence

import numpy as np

from . import numerics
from .dynamics import NonHermitianHamiltonian, h0_exponential, hamiltonian
from .gibbs import GibbsState, Spectrum, gibbs_state, omega_trace
from .numerics import CMatrix
from .riesz import RieszSystem, dual_system


def kms_tolerance(cond_t: float, dim: int) -> float:
    return 1e-10 * max(cond_t, 1.0) ** 2 * dim


@dataclass(frozen=True)
class StripFunction:
    """Two-point function data for one observable pair and one state kind."""

    x: CMatrix
    y: CMatrix
    system: RieszSystem
    spectrum: Spectrum
    kind: Literal["phi", "psi"]
    state: GibbsState = field(repr=False)
    ham: NonHermitianHamiltonian = field(repr=False)
    c_op: CMatrix = field(repr=False)
    c_inv: CMatrix = field(repr=False)
    twist: CMatrix = field(repr=False)
    twist_inv: CMatrix = field(repr=False)
    # merged trace-chain factors: A = C^H X C, B = C^{-1} Y C
    a_factor: CMatrix = field(repr=False)
    b_factor: CMatrix = field(repr=False)

    @property
    def beta(self) -> float:
        return self.spectrum.beta


def strip_function(
    system: RieszSystem,
    spectrum: Spectrum,
    x: CMatrix,
    y: CMatrix,
    kind: Literal["phi", "psi"] = "phi",
) -> StripFunction:
    x = numerics.as_operator(x)
    y = numerics.as_operator(y)
    state = gibbs_state(system, spectrum, kind)
    ham = hamiltonian(system, spectrum)
    if kind == "phi":
        c_op, c_inv = system.t_op, system.t_inv
    elif kind == "psi":
        c_op = numerics.dagger(system.t_inv)
        c_inv = numerics.dagger(system.t_op)
    else:
        raise ValueError(f"strip function kind must be 'phi' or 'psi', got {kind!r}")
    twist = c_op @ numerics.dagger(c_op)
    return StripFunction(
        x=x,
        y=y,
        system=system,
        spectrum=spectrum,
        kind=kind,
        state=state,
        ham=ham,
        c_op=c_op,
        c_inv=c_inv,
        twist=twist,
        twist_inv=numerics.inverse(twist),
        a_factor=numerics.dagger(c_op) @ x @ c_op,
        b_factor=c_inv @ y @ c_op,
    )


def _warn_outside_strip(z: complex, beta: float) -> None:
    if not (0.0 <= z.imag <= beta):
        warnings.warn(
            f"z = {z} lies outside the strip 0 <= Im z <= {beta}; "
            "values grow without the thermal damping",
            stacklevel=3,
        )


def alpha_phi_z(ham: NonHermitianHamiltonian, z: complex, y: CMatrix) -> CMatrix:
    """Complex-time conjugation T e^{izH0} T^{-1} Y T e^{-izH0} T^{-1}."""
    _warn_outside_strip(complex(z), ham.spectrum.beta)
    t, ti = ham.system.t_op, ham.system.t_inv
    return t @ h0_exponential(ham, z) @ ti @ y @ t @ h0_exponential(ham, -z) @ ti


def alpha_psi_z(ham: NonHermitianHamiltonian, z: complex, y: CMatrix) -> CMatrix:
    """Mirror conjugation through (T^H)^{-1} e^{izH0} T^H."""
    _warn_outside_strip(complex(z), ham.spectrum.beta)
    s = numerics.dagger(ham.system.t_inv)
    si = numerics.dagger(ham.system.t_op)
    return s @ h0_exponential(ham, z) @ si @ y @ s @ h0_exponential(ham, -z) @ si


def strip_f(sf: StripFunction, z: complex) -> complex:
    """Evaluate the strip function at z = t + is, 0 <= s <= beta.

    Assembled as (1/Z) tr(A P(z) B P(i beta - z)) with A = C^H X C,
    B = C^{-1} Y C and P(w) = e^{iwH0}; both phase factors have nonpositive
    real exponents inside the strip, so the chain never leaves double range.
    """
    z = complex(z)
    _warn_outside_strip(z, sf.beta)
    p_fwd = h0_exponential(sf.ham, z)
    p_bwd = h0_exponential(sf.ham, 1j * sf.beta - z)
    chain = sf.a_factor @ p_fwd @ sf.b_factor @ p_bwd
    return complex(np.trace(chain) / sf.state.partition)


def _alpha_t(sf: StripFunction, t: float, y: CMatrix) -> CMatrix:
    u_fwd = sf.c_op @ h0_exponential(sf.ham, t) @ sf.c_inv
    u_bwd = sf.c_op @ h0_exponential(sf.ham, -t) @ sf.c_inv
    return u_fwd @ y @ u_bwd


class BoundaryResiduals(NamedTuple):
    max_real: float
    max_shifted: float


def _boundary_residuals(sf: StripFunction, t_grid: Sequence[float]) -> BoundaryResiduals:
    max_real = 0.0
    max_shifted = 0.0
    for t in t_grid:
        evolved = _alpha_t(sf, float(t), sf.y)
        lhs_real = strip_f(sf, float(t))
        rhs_real = omega_trace(sf.state, sf.x @ evolved)
        lhs_shift = strip_f(sf, float(t) + 1j * sf.beta)
        rhs_shift = omega_trace(sf.state, sf.twist_inv @ evolved @ sf.twist @ sf.x)
        max_real = max(max_real, abs(lhs_real - rhs_real))
        max_shifted = max(max_shifted, abs(lhs_shift - rhs_shift))
    return BoundaryResiduals(max_real=max_real, max_shifted=max_shifted)


def verify_kms_like(sf: StripFunction, t_grid: Sequence[float]) -> BoundaryResiduals:
    """Boundary residuals of the phi-state identity over a real grid."""
    if sf.kind != "phi":
        raise ValueError("verify_kms_like expects a phi-kind strip function")
    return _boundary_residuals(sf, t_grid)


def verify_kms_like_psi(sf: StripFunction, t_grid: Sequence[float]) -> BoundaryResiduals:
    """Mirror check for the psi state; the twist enters with inverted sides."""
    if sf.kind != "psi":
        raise ValueError("verify_kms_like_psi expects a psi-kind strip function")
    return _boundary_residuals(sf, t_grid)


def cauchy_mean_residual(
    sf: StripFunction, z0: complex, radius: float | None = None, nodes: int = 32
) -> float:
    """|mean of f over a circle around z0 - f(z0)|, an interior-analyticity probe.

    The circle must stay inside the open strip; the default radius is half the
    distance to the nearer boundary (capped at 0.5).
    """
    z0 = complex(z0)
    margin = min(z0.imag, sf.beta - z0.imag)
    if margin <= 0.0:
        raise ValueError("z0 must lie strictly inside the strip")
    if radius is None:
        radius = min(0.5 * margin, 0.5)
    if radius >= margin:
        raise ValueError("circle leaves the strip")
    angles = 2.0 * np.pi * np.arange(nodes) / nodes
    samples = [strip_f(sf, z0 + radius * cmath.exp(1j * a)) for a in angles]
    return abs(sum(samples) / nodes - strip_f(sf, z0))


def nonhermitian_density_residual(
    system: RieszSystem, spectrum: Spectrum, x: CMatrix
) -> float:
    """Deviation of omega_phi(X) from tr(e^{-beta H} T T^H X)/Zphi.

    e^{-beta H} is the similarity transform T e^{-beta H0} T^{-1}; the identity
    rewrites the state as a trace against the non-Hermitian density.
    """
    ham = hamiltonian(system, spectrum)
    state = gibbs_state(system, spectrum, "phi")
    exp_beta_h = system.t_op @ h0_exponential(ham, 1j * spectrum.beta) @ system.t_inv
    twist = system.t_op @ numerics.dagger(system.t_op)
    val = np.trace(exp_beta_h @ twist @ x) / state.partition
    return abs(complex(val) - omega_trace(state, x))


class KmsRow(NamedTuple):
    t: float
    f_real: float
    f_imag: float
    res_real_boundary: float
    res_shifted_boundary: float


KMS_COLUMNS = ("t", "f_real", "f_imag", "res_real_boundary", "res_shifted_boundary")


def verification_rows(sf: StripFunction, t_grid: Sequence[float]) -> list[KmsRow]:
    """Per-grid-point values and boundary residuals, ready for CSV emission."""
    rows = []
    for t in t_grid:
        t = float(t)
        evolved = _alpha_t(sf, t, sf.y)
        val = strip_f(sf, t)
        res_real = abs(val - omega_trace(sf.state, sf.x @ evolved))
        res_shift = abs(
            strip_f(sf, t + 1j * sf.beta)
            - omega_trace(sf.state, sf.twist_inv @ evolved @ sf.twist @ sf.x)
        )
        rows.append(
            KmsRow(
                t=t,
                f_real=float(val.real),
                f_imag=float(val.imag),
                res_real_boundary=res_real,
                res_shifted_boundary=res_shift,
            )
        )
    return rows


def dual_strip_residual(
    system: RieszSystem, spectrum: Spectrum, x: CMatrix, y: CMatrix, t_grid: Sequence[float]
) -> float:
    """Agreement of the psi-state check with the phi-state check of the dual system."""
    sf_psi = strip_function(system, spectrum, x, y, kind="psi")
    sf_dual = strip_function(dual_system(system), spectrum, x, y, kind="phi")
    res = 0.0
    for t in t_grid:
        for z in (float(t), float(t) + 1j * spectrum.beta):
            res = max(res, abs(strip_f(sf_psi, z) - strip_f(sf_dual, z)))
    return res
