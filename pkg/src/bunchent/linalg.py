"""Dense Hermitian eigen-kernels used by the measurement chain.

The matrices diagonalized here are small (4x4 in the concurrence chain),
so the solver favors transparency and determinism over scale: a cyclic
Jacobi iteration with unitary 2x2 rotations, run until the off-diagonal
Frobenius mass is negligible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvariantError

MAX_EIG_DIM = 1024

_HERMITIAN_TOL = 1e-10
_OFF_DIAG_TOL = 1e-14   # relative to the Frobenius norm of the input
_MAX_SWEEPS = 100


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Real spectrum (descending) and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True)
class DensityDiagnostics:
    """How far a matrix sits from the density-matrix contract."""

    hermiticity_defect: float
    trace_defect: float
    min_eigenvalue: float


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """Zero a[p, q] by a two-sided unitary rotation, accumulating it into v."""
    apq = a[p, q]
    r = abs(apq)
    phase = apq / r
    theta = 0.5 * math.atan2(2.0 * r, a[p, p].real - a[q, q].real)
    c, s = math.cos(theta), math.sin(theta)
    u = np.array([[c, -s], [s * phase.conjugate(), c * phase.conjugate()]])
    cols = [p, q]
    a[:, cols] = a[:, cols] @ u
    a[cols, :] = u.conj().T @ a[cols, :]
    v[:, cols] = v[:, cols] @ u
    # the pivot is zero by construction; write it exactly
    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real


def hermitian_eig(matrix) -> EigenDecomposition:
    """Diagonalize a Hermitian matrix with cyclic Jacobi rotations.

    Sweeps run until the off-diagonal Frobenius mass drops below
    1e-14 times the norm of the input, with a hard cap of 100 sweeps.
    Eigenvalues come back descending under a stable sort, so degenerate
    values keep the order the rotation sequence produced.
    """
    h = np.asarray(matrix, dtype=np.complex128)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    dim = h.shape[0]
    if dim > MAX_EIG_DIM:
        raise ValueError(f"dimension {dim} exceeds the solver cap of {MAX_EIG_DIM}")
    defect = float(np.abs(h - h.conj().T).max()) if dim else 0.0
    if defect > _HERMITIAN_TOL:
        raise InvariantError(f"matrix is not Hermitian: max asymmetry {defect:.3e}")

    a = 0.5 * (h + h.conj().T)
    v = np.eye(dim, dtype=np.complex128)
    scale = float(np.linalg.norm(a))
    if scale == 0.0:
        return EigenDecomposition(np.zeros(dim), v)
    off_tol = _OFF_DIAG_TOL * scale
    # pivots below this cannot keep the total off-mass above off_tol
    pivot_tol = off_tol / (2.0 * dim)
    for _ in range(_MAX_SWEEPS):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off < off_tol:
            break
        for p in range(dim - 1):
            for q in range(p + 1, dim):
                if abs(a[p, q]) > pivot_tol:
                    _rotate(a, v, p, q)
    vals = np.diag(a).real.copy()
    order = np.argsort(-vals, kind="stable")
    return EigenDecomposition(vals[order], v[:, order])


def psd_sqrt(matrix) -> np.ndarray:
    """Hermitian square root of a positive semidefinite matrix.

    Eigenvalues in [-1e-10, 0) are treated as rounding noise and clamped
    to zero; anything more negative is rejected.
    """
    eig = hermitian_eig(matrix)
    w = eig.eigenvalues
    if w.size and w[-1] < -1e-10:
        raise InvariantError(
            f"matrix is not positive semidefinite: min eigenvalue {w[-1]:.3e}"
        )
    w = np.clip(w, 0.0, None)
    vecs = eig.eigenvectors
    root = (vecs * np.sqrt(w)) @ vecs.conj().T
    return 0.5 * (root + root.conj().T)


def diagnose_density(matrix) -> DensityDiagnostics:
    """Measure hermiticity, trace and positivity defects of a candidate density matrix.

    The minimum eigenvalue is taken on the Hermitian part, so the verdict
    stays meaningful for inputs with small asymmetries.
    """
    m = np.asarray(getattr(matrix, "entries", matrix), dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    herm = float(np.abs(m - m.conj().T).max())
    trace = float(abs(m.trace() - 1.0))
    min_eig = float(np.linalg.eigvalsh(0.5 * (m + m.conj().T))[0])
    return DensityDiagnostics(herm, trace, min_eig)
