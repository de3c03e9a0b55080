"""Dense complex-matrix primitives for small Hermitian problems (dim <= 32 in practice)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotHermitian, NotSquare, ShapeMismatch

HERMITIAN_RTOL = 1e-12


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise NotSquare(f"expected a 2-d matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def check_hermitian(m) -> np.ndarray:
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise NotSquare(f"matrix is {a.shape[0]}x{a.shape[1]}")
    norm = np.linalg.norm(a)
    if np.linalg.norm(a - a.conj().T) > HERMITIAN_RTOL * max(norm, 1e-300):
        raise NotHermitian("matrix deviates from its adjoint beyond 1e-12 relative")
    return a


def hermitian_eig(m) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    The input is symmetrized before diagonalization so that round-off below
    the Hermiticity tolerance cannot leak into complex eigenvalues.
    """
    a = check_hermitian(m)
    w, v = np.linalg.eigh(0.5 * (a + a.conj().T))
    return Spectrum(eigenvalues=w, eigenvectors=v)


def expm_ih(h, t: float) -> np.ndarray:
    """Propagator exp(-i h t) via spectral decomposition."""
    if not np.isfinite(t):
        raise ValueError("duration must be finite")
    spec = hermitian_eig(h)
    v = spec.eigenvectors
    return (v * np.exp(-1j * spec.eigenvalues * t)) @ v.conj().T


def frobenius_distance(a, b) -> float:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ShapeMismatch(f"{a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


def projector(columns) -> np.ndarray:
    """Orthogonal projector onto the span of the given columns.

    Columns need not be orthonormal; an orthonormal basis is formed by QR, so
    the result does not depend on the basis chosen inside a degenerate cluster.
    """
    c = np.asarray(columns, dtype=complex)
    if c.ndim == 1:
        c = c[:, None]
    q, _ = np.linalg.qr(c)
    return q @ q.conj().T


def cluster_projector(h, count: int) -> np.ndarray:
    """Projector onto the ``count`` lowest eigenvectors of ``h``."""
    spec = hermitian_eig(h)
    return projector(spec.eigenvectors[:, :count])


def unitarity_error(u) -> float:
    u = np.asarray(u, dtype=complex)
    return float(np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0])))
