"""Small complex linear algebra and entropy helpers.

Everything here operates on plain numpy arrays.  Spectra are returned as
real 1-d arrays sorted in descending order; for a trace-one PSD Gram
matrix they are the eigenvalues of the corresponding density operator.
All entropies are in bits (base-2 logarithms).
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError, NegativeEigenvalue, NonHermitianInput

HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-10
# eigenvalues below this magnitude are treated as exact zeros in entropy sums
ZERO_EIG_TOL = 1e-12


def hermiticity_residual(m: np.ndarray) -> float:
    """Largest absolute deviation of m from its conjugate transpose."""
    m = np.asarray(m, dtype=complex)
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def is_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    return hermiticity_residual(m) <= tol


def hermitian_eigenvalues(m: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, sorted descending.

    Raises NonHermitianInput if the symmetry residual exceeds ``tol``.
    The eigenvalues sum to the (real) trace up to solver round-off.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NonHermitianInput(f"expected a square matrix, got shape {m.shape}")
    res = hermiticity_residual(m)
    if res > tol:
        raise NonHermitianInput(f"hermiticity residual {res:.3e} exceeds {tol:.0e}")
    return np.sort(np.linalg.eigvalsh(m))[::-1]


def min_eigenvalue(m: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(np.asarray(m, dtype=complex))[0].real)


def is_psd(m: np.ndarray, tol: float = PSD_TOL) -> bool:
    return min_eigenvalue(m) >= -tol


def binary_entropy(x: float) -> float:
    """h(x) = -x log2 x - (1-x) log2 (1-x), with 0 log 0 = 0."""
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"binary entropy argument {x!r} outside [0, 1]")
    total = 0.0
    for p in (x, 1.0 - x):
        if p > 0.0:
            total -= p * np.log2(p)
    return float(total)


def von_neumann_entropy(eigenvalues: np.ndarray) -> float:
    """Entropy -sum(lam * log2 lam) of a probability spectrum, in bits.

    Eigenvalues more negative than the PSD tolerance are rejected; values
    inside the tolerance band are clipped to [0, 1] before summing.
    """
    lam = np.asarray(eigenvalues, dtype=float)
    if lam.size and lam.min() < -PSD_TOL:
        raise NegativeEigenvalue(
            f"eigenvalue {lam.min():.3e} below -{PSD_TOL:.0e}"
        )
    lam = np.clip(lam, 0.0, 1.0)
    lam = lam[lam > ZERO_EIG_TOL]
    if lam.size == 0:
        return 0.0
    return float(-np.sum(lam * np.log2(lam)))
