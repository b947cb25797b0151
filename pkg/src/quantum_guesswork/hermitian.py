"""Spectral calculus for small dense Hermitian matrices."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import ValidationError

HERM_RTOL = 1e-10
ZERO_RTOL = 1e-9


class EigenSystem(NamedTuple):
    """Eigenvalues sorted descending with the matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.conj().T


def hermitian_tolerance(a: np.ndarray) -> float:
    scale = np.max(np.abs(a), initial=0.0)
    return HERM_RTOL * max(1.0, float(scale))


def as_hermitian(a, name: str = "matrix") -> np.ndarray:
    """Validate ``a`` as a square Hermitian matrix and return its symmetrized copy.

    Also accepts stacks of matrices with shape ``(..., d, d)``.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2] or a.shape[-1] < 1:
        raise ValidationError(f"{name} must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValidationError(f"{name} has non-finite entries")
    adj = np.swapaxes(a, -1, -2).conj()
    deviation = float(np.max(np.abs(a - adj)))
    if deviation > hermitian_tolerance(a):
        raise ValidationError(f"{name} is not Hermitian (max |A - A^dagger| = {deviation:.3g})")
    return (a + adj) / 2


def spectral_decompose(a) -> EigenSystem:
    a = as_hermitian(a)
    vals, vecs = np.linalg.eigh(a)
    # eigh returns ascending order; flip the last axis for a stable descending sort
    return EigenSystem(vals[..., ::-1].copy(), vecs[..., ::-1].copy())


def _apply_spectral(a: np.ndarray, fn) -> np.ndarray:
    vals, vecs = np.linalg.eigh(a)
    return (vecs * fn(vals)[..., None, :]) @ np.swapaxes(vecs, -1, -2).conj()


def matrix_abs(a) -> np.ndarray:
    """|A| = sum_i |lambda_i| |psi_i><psi_i|. Works on stacks."""
    return _apply_spectral(as_hermitian(a), np.abs)


def trace_norm(a) -> float | np.ndarray:
    """Sum of absolute eigenvalues. Returns an array for stacked input."""
    vals = np.linalg.eigvalsh(as_hermitian(a))
    out = np.abs(vals).sum(axis=-1)
    return float(out) if np.ndim(out) == 0 else out


def default_zero_tol(a: np.ndarray) -> float:
    return ZERO_RTOL * max(1.0, float(np.abs(np.linalg.eigvalsh(a)).sum()))


def projector_parts(a, zero_tol: float | None = None) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Spectral projectors onto the positive, negative and null eigenspaces of ``a``.

    An eigenvalue counts as null when ``|lambda| <= zero_tol``. The three projectors are
    built from one eigenbasis, so they are mutually orthogonal and resolve the identity.
    """
    a = as_hermitian(a)
    if a.ndim != 2:
        raise ValidationError("projector_parts expects a single matrix")
    if zero_tol is None:
        zero_tol = default_zero_tol(a)
    if zero_tol <= 0:
        raise ValidationError("zero_tol must be positive")
    vals, vecs = np.linalg.eigh(a)

    def proj(mask):
        v = vecs[:, mask]
        return v @ v.conj().T

    return proj(vals > zero_tol), proj(vals < -zero_tol), proj(np.abs(vals) <= zero_tol)


def min_eigenvalue(a) -> float:
    return float(np.linalg.eigvalsh(as_hermitian(a))[..., 0].min())


def is_psd(a, tol: float = 1e-9) -> bool:
    return min_eigenvalue(a) >= -tol


def loewner_geq(a, b, tol: float = 1e-9) -> bool:
    """True iff ``a - b`` is positive semidefinite up to ``tol``."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValidationError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return is_psd(a - b, tol)
