"""Fixed-size complex linear algebra for one and two qubits.

Matrices are plain ``numpy`` arrays of shape (2, 2) or (4, 4) with complex
dtype. Two-qubit operators use row-major indices in the basis
``|uu>, |ud>, |du>, |dd>`` -> 0, 1, 2, 3, where the first letter is the first
qubit (``u`` = spin up).
"""
from __future__ import annotations

import numpy as np

from .errors import NotHermitian, NotPSD, SpectrumNotReal

HERMITIAN_TOL = 1e-10
CLAMP_TOL = 1e-10
REJECT_TOL = 1e-8

ID2 = np.eye(2, dtype=complex)
ID4 = np.eye(4, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def _check(m, n: int, name: str = "matrix") -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.shape != (n, n):
        raise ValueError(f"{name} must have shape ({n}, {n}), got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    return m


def matmul(a, b) -> np.ndarray:
    a = _check(a, 4, "a")
    b = _check(b, 4, "b")
    return a @ b


def kron(a, b) -> np.ndarray:
    """Tensor product ``a (x) b``; ``a`` acts on the first qubit."""
    return np.kron(_check(a, 2, "a"), _check(b, 2, "b"))


def dagger(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    return m.conj().T


def trace(m) -> complex:
    return complex(np.trace(np.asarray(m, dtype=complex)))


def hermitian_deviation(h) -> float:
    h = np.asarray(h, dtype=complex)
    return float(np.max(np.abs(h - h.conj().T)))


def _require_hermitian(h, tol: float = HERMITIAN_TOL) -> np.ndarray:
    dev = hermitian_deviation(h)
    if dev > tol:
        raise NotHermitian(f"matrix deviates from its adjoint by {dev:.3e} > {tol:.0e}")
    return 0.5 * (h + h.conj().T)


def eig_hermitian(h, vectors: bool = False):
    """Eigenvalues of a Hermitian 4x4 matrix, sorted descending.

    With ``vectors=True`` returns ``(values, vecs)`` where ``vecs[:, k]``
    belongs to ``values[k]``.
    """
    h = _require_hermitian(_check(h, 4, "h"))
    if not vectors:
        return np.linalg.eigvalsh(h)[::-1].copy()
    w, v = np.linalg.eigh(h)
    return w[::-1].copy(), v[:, ::-1].copy()


def eig_rho_rhotilde(m) -> np.ndarray:
    """Spectrum of the non-Hermitian product ``rho @ rho_tilde``.

    In exact arithmetic the spectrum is real and nonnegative. Roundoff
    below ``REJECT_TOL`` is discarded (imaginary parts dropped, negatives
    clamped to zero); anything larger raises ``SpectrumNotReal``.
    """
    m = _check(m, 4, "m")
    ev = np.linalg.eigvals(m)
    if np.any(np.abs(ev.imag) > REJECT_TOL) or np.any(ev.real < -REJECT_TOL):
        raise SpectrumNotReal(f"spectrum {ev} is not real and nonnegative")
    return np.sort(np.clip(ev.real, 0.0, None))[::-1]


def psd_sqrt(h) -> np.ndarray:
    """Hermitian positive square root via eigendecomposition."""
    h = _require_hermitian(_check(h, 4, "h"))
    w, v = np.linalg.eigh(h)
    if w.min() < -REJECT_TOL:
        raise NotPSD(f"smallest eigenvalue {w.min():.3e} is below {-REJECT_TOL:.0e}")
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def partial_trace(m, keep: int) -> np.ndarray:
    """Reduce a two-qubit operator to qubit ``keep`` (0 = first, 1 = second)."""
    t = _check(m, 4).reshape(2, 2, 2, 2)
    if keep == 0:
        return np.einsum("ijkj->ik", t)
    if keep == 1:
        return np.einsum("jijk->ik", t)
    raise ValueError("keep must be 0 or 1")


def partial_transpose(m) -> np.ndarray:
    """Transpose the second-qubit indices of a two-qubit operator."""
    t = _check(m, 4).reshape(2, 2, 2, 2)
    return t.transpose(0, 3, 2, 1).reshape(4, 4)


SY_SY = kron(SIGMA_Y, SIGMA_Y)
