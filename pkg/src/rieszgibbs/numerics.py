"""Dense complex linear-algebra kernel.

Every operator in this package is a square ``complex128`` ndarray of some
fixed dimension N.  This module wraps the handful of factorizations the rest
of the library is expressed through (Hermitian eigendecomposition, SVD,
spectral calculus, inversion, traces) and enforces their accuracy contracts:
each routine validates its own result and raises instead of returning a
silently inaccurate factorization.

Conventions
-----------
- Inner product on vectors is linear in the *first* argument,
  ``(x|y) = sum_i x_i conj(y_i)``, so that the rank-one operator built from
  ``x`` and ``y`` acts as ``xi -> (xi|y) x``.
- The trace inner product on matrices is ``(S|T) = tr(T^H S)``.
- All routines are pure functions of immutable inputs; nothing here keeps
  global state, so values may be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .errors import DomainError, NoConvergence, NotHermitian, Singular

CMatrix = NDArray[np.complex128]

#: relative accuracy demanded of eigen/SVD factorizations
EIG_TOL = 1e-12
SVD_TOL = 1e-12
#: relative Hermiticity tolerance for spectral-routine inputs
HERM_TOL = 1e-10
#: largest condition number for which an inverse is attempted
COND_MAX = 1e12


def as_operator(a) -> CMatrix:
    """Coerce ``a`` to a square complex matrix, rejecting non-finite entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains non-finite entries")
    return m


def dagger(a: CMatrix) -> CMatrix:
    """Matrix adjoint (conjugate transpose)."""
    return a.conj().T


def frobenius(a: CMatrix) -> float:
    return float(np.linalg.norm(a, "fro"))


def hermiticity_defect(a: CMatrix) -> float:
    """Relative Frobenius distance of ``a`` from its adjoint."""
    scale = frobenius(a)
    if scale == 0.0:
        return 0.0
    return frobenius(a - dagger(a)) / scale


@dataclass(frozen=True)
class HermitianEig:
    """Eigendecomposition A = V diag(values) V^H with ascending real values."""

    values: NDArray[np.float64]
    vectors: CMatrix


def herm_eig(a: CMatrix, check: bool = True) -> HermitianEig:
    """Eigendecomposition of a Hermitian matrix.

    Raises NotHermitian if the input is farther than HERM_TOL (relative,
    Frobenius) from its adjoint, and NoConvergence if the factorization
    fails or misses its reconstruction/unitarity contract.
    """
    a = as_operator(a)
    if check and hermiticity_defect(a) > HERM_TOL:
        raise NotHermitian(
            f"relative Hermiticity defect {hermiticity_defect(a):.3e} exceeds {HERM_TOL:.0e}"
        )
    h = 0.5 * (a + dagger(a))
    try:
        values, vectors = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergence(f"eigendecomposition failed: {exc}") from exc
    scale = max(frobenius(a), 1.0)
    recon = frobenius(vectors @ np.diag(values) @ dagger(vectors) - h)
    ortho = frobenius(dagger(vectors) @ vectors - np.eye(a.shape[0]))
    if recon > EIG_TOL * scale or ortho > EIG_TOL * max(1.0, np.sqrt(a.shape[0])):
        raise NoConvergence(
            f"eigendecomposition residuals too large: recon={recon:.3e}, ortho={ortho:.3e}"
        )
    return HermitianEig(values=values, vectors=np.ascontiguousarray(vectors))


def svd(a: CMatrix) -> tuple[CMatrix, NDArray[np.float64], CMatrix]:
    """Singular value decomposition A = U diag(s) V^H.

    Returns (U, s, V) with descending nonnegative singular values and V
    holding right singular vectors as columns (so ``A = U @ diag(s) @ V.conj().T``).
    """
    a = as_operator(a)
    try:
        u, s, vh = np.linalg.svd(a)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"SVD failed to converge: {exc}") from exc
    recon = frobenius(u @ np.diag(s) @ vh - a)
    if recon > SVD_TOL * max(frobenius(a), 1.0):
        raise NoConvergence(f"SVD reconstruction residual {recon:.3e} too large")
    return u, s, dagger(vh)


def cond(a: CMatrix) -> float:
    """2-norm condition number via singular values (inf when singular)."""
    s = np.linalg.svd(as_operator(a), compute_uv=False)
    if s[-1] == 0.0:
        return np.inf
    return float(s[0] / s[-1])


def inverse(a: CMatrix) -> CMatrix:
    """Inverse of ``a``, refused when the condition estimate exceeds COND_MAX."""
    a = as_operator(a)
    c = cond(a)
    if not np.isfinite(c) or c > COND_MAX:
        raise Singular(f"condition estimate {c:.3e} exceeds {COND_MAX:.0e}")
    try:
        inv = np.linalg.inv(a)
    except np.linalg.LinAlgError as exc:
        raise Singular(str(exc)) from exc
    return inv


def abs_of_adjoint(a: CMatrix) -> CMatrix:
    """|A^H| = (A A^H)^{1/2}, a positive semidefinite Hermitian matrix."""
    a = as_operator(a)
    gram = a @ dagger(a)
    eig = herm_eig(gram, check=False)
    roots = np.sqrt(np.clip(eig.values, 0.0, None))
    return eig.vectors @ np.diag(roots) @ dagger(eig.vectors)


def func_of_eig(eig: HermitianEig, f) -> CMatrix:
    """Apply a scalar function through an existing eigendecomposition."""
    with np.errstate(all="ignore"):
        w = np.asarray(f(eig.values), dtype=complex)
    if w.shape != eig.values.shape:
        raise ValueError("scalar function must map the eigenvalue vector elementwise")
    if not np.all(np.isfinite(w)):
        bad = eig.values[~np.isfinite(w)]
        raise DomainError(f"function undefined or overflowing at eigenvalue(s) {bad}")
    return (eig.vectors * w) @ dagger(eig.vectors)


def func_of_hermitian(a: CMatrix, f) -> CMatrix:
    """Spectral calculus f(A) = V f(Lambda) V^H for Hermitian A.

    Exactly diagonal inputs short-circuit to f applied on the diagonal, so
    diagonal examples are reproduced without roundoff.
    """
    a = as_operator(a)
    diag = np.diag(a)
    if np.count_nonzero(a - np.diag(diag)) == 0 and np.all(diag.imag == 0.0):
        with np.errstate(all="ignore"):
            w = np.asarray(f(diag.real), dtype=complex)
        if not np.all(np.isfinite(w)):
            bad = diag.real[~np.isfinite(w)]
            raise DomainError(f"function undefined or overflowing at eigenvalue(s) {bad}")
        return np.diag(w)
    return func_of_eig(herm_eig(a), f)


def trace(a: CMatrix) -> complex:
    return complex(np.trace(as_operator(a)))


def hs_inner(s: CMatrix, t: CMatrix) -> complex:
    """Trace inner product (S|T) = tr(T^H S), linear in the first argument."""
    s = np.asarray(s, dtype=complex)
    t = np.asarray(t, dtype=complex)
    if s.shape != t.shape:
        raise ValueError(f"shape mismatch {s.shape} vs {t.shape}")
    return complex(np.vdot(t, s))


def hs_norm(s: CMatrix) -> float:
    return float(np.sqrt(hs_inner(s, s).real))
