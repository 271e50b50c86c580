"""Dense complex linear algebra kernel.

Tensor products, Hermitian eigendecomposition and unitary propagators for
register dimensions up to a few thousand.  Everything is a plain complex
ndarray; matrices are row-major and states are flat vectors.  All functions
are pure and never mutate their arguments.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

HERMITIAN_ATOL = 1e-10
UNITARY_ATOL = 1e-9
NORM_ATOL = 1e-10

# Single global knob for loosening (or tightening) every numeric check.
tolerance_scale = 1.0


class NotHermitian(ValueError):
    """Matrix deviates from its conjugate transpose beyond tolerance."""


class DimensionMismatch(ValueError):
    """Operands have incompatible shapes."""


class NotNormalized(ValueError):
    """Vector norm differs from 1 beyond tolerance."""


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.size == 0:
        raise DimensionMismatch(f"expected a non-empty matrix, got shape {m.shape}")
    return m


def as_state(v) -> np.ndarray:
    vec = np.asarray(v, dtype=complex).reshape(-1)
    if vec.size == 0:
        raise DimensionMismatch("empty state vector")
    return vec


def require_hermitian(h, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    m = as_matrix(h)
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"matrix is {m.shape[0]}x{m.shape[1]}, not square")
    dev = float(np.max(np.abs(m - m.conj().T)))
    if dev > atol * tolerance_scale:
        raise NotHermitian(f"max|H - H^dag| = {dev:.3e} exceeds {atol * tolerance_scale:.1e}")
    return m


def require_normalized(v, atol: float = NORM_ATOL) -> np.ndarray:
    vec = as_state(v)
    dev = abs(float(np.linalg.norm(vec)) - 1.0)
    if dev > atol * tolerance_scale:
        raise NotNormalized(f"|norm - 1| = {dev:.3e} exceeds {atol * tolerance_scale:.1e}")
    return vec


def kron(a, b) -> np.ndarray:
    """Kronecker product of two matrices."""
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(*ops) -> np.ndarray:
    """Kronecker product of a sequence of matrices, left to right."""
    if not ops:
        raise DimensionMismatch("kron_all needs at least one operand")
    return reduce(np.kron, (as_matrix(op) for op in ops))


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues ascending; eigenvectors[:, k] belongs to eigenvalues[k]."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def hermitian_eig(h) -> EigenSystem:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    m = require_hermitian(h)
    w, v = np.linalg.eigh(m)
    return EigenSystem(eigenvalues=w, eigenvectors=v)


def propagator(h, t: float) -> np.ndarray:
    """exp(-i h t) for Hermitian h, built from the eigendecomposition.

    The spectral form keeps the result unitary to rounding error and makes
    the propagator exact for any t, which the analytic amplitude checks
    rely on.
    """
    es = hermitian_eig(h)
    phases = np.exp(-1j * es.eigenvalues * t)
    return (es.eigenvectors * phases) @ es.eigenvectors.conj().T


def fidelity(a, b) -> float:
    """Squared overlap |<a|b>|^2 of two normalized states."""
    va = require_normalized(a)
    vb = require_normalized(b)
    if va.shape != vb.shape:
        raise DimensionMismatch(f"state dimensions differ: {va.size} vs {vb.size}")
    return float(abs(np.vdot(va, vb)) ** 2)


def align_global_phase(v) -> np.ndarray:
    """Rotate a state so its largest-magnitude amplitude is real positive."""
    vec = as_state(v)
    k = int(np.argmax(np.abs(vec)))
    mag = abs(vec[k])
    if mag == 0.0:
        return vec.copy()
    return vec * (mag / vec[k])
