"""Two-qubit entanglement: spin flip, concurrence, entropy, the closed forms
for the structured families, and the partial-transpose separability test.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import matcore
from .errors import ParamOutOfRange
from .states import (
    DensityMatrix,
    PureState,
    RankFourStats,
    StructuredRank2,
    mix_matrix,
)

PPT_TOL = 1e-10
NORM_TOL = 1e-9

LAMBDA_METHODS = ("factor", "rhotilde", "sqrt")


@dataclass(frozen=True)
class ConcurrenceValue:
    value: float
    lambdas: tuple[float, float, float, float]

    def __float__(self) -> float:
        return self.value


def _mat(rho) -> np.ndarray:
    return rho.mat if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)


def spin_flip(rho) -> np.ndarray:
    m = _mat(rho)
    return matcore.SY_SY @ m.conj() @ matcore.SY_SY


def _lambdas_factor(m: np.ndarray) -> np.ndarray:
    # With rho = W W^H the lambdas are the singular values of W^T (sy x sy) W.
    # Unlike square roots of the rho*rho_tilde spectrum, these stay accurate
    # to roundoff when some lambdas vanish.
    w, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    W = v * np.sqrt(np.clip(w, 0.0, None))
    return np.linalg.svd(W.T @ matcore.SY_SY @ W, compute_uv=False)


def _lambdas_rhotilde(m: np.ndarray) -> np.ndarray:
    return np.sqrt(matcore.eig_rho_rhotilde(m @ spin_flip(m)))


def _lambdas_sqrt(m: np.ndarray) -> np.ndarray:
    s = matcore.psd_sqrt(m)
    r = matcore.psd_sqrt(s @ spin_flip(m) @ s)
    return np.clip(matcore.eig_hermitian(r), 0.0, None)


def wootters_lambdas(rho, method: str = "factor") -> np.ndarray:
    """Descending eigenvalues of ``sqrt(sqrt(rho) rho_tilde sqrt(rho))``.

    ``method`` selects the numerical route:

    - ``"factor"`` (default): singular values of ``W^T (sy x sy) W`` where
      ``rho = W W^H``;
    - ``"rhotilde"``: square roots of the spectrum of ``rho @ rho_tilde``;
    - ``"sqrt"``: eigenvalues of the Hermitian matrix built with ``psd_sqrt``.

    All three agree in exact arithmetic. The last two lose about half the
    significant digits of lambdas near zero.
    """
    m = _mat(rho)
    if method == "factor":
        lam = _lambdas_factor(m)
    elif method == "rhotilde":
        lam = _lambdas_rhotilde(m)
    elif method == "sqrt":
        lam = _lambdas_sqrt(m)
    else:
        raise ValueError(f"unknown method {method!r}; expected one of {LAMBDA_METHODS}")
    return np.sort(lam)[::-1]


def concurrence_from_lambdas(lam) -> float:
    lam = np.sort(np.asarray(lam, dtype=float))[::-1]
    return max(0.0, float(lam[0] - lam[1] - lam[2] - lam[3]))


def concurrence(rho, method: str = "factor") -> ConcurrenceValue:
    lam = wootters_lambdas(rho, method)
    return ConcurrenceValue(concurrence_from_lambdas(lam), tuple(float(x) for x in lam))


def concurrence_pure(s: PureState) -> float:
    return 2.0 * abs(s.a * s.d - s.b * s.c)


def _entropy_bits(p: np.ndarray) -> float:
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p))) + 0.0


def entropy_pure(s: PureState, subsystem: int = 0) -> float:
    """Von Neumann entropy (bits) of the reduced state of one qubit.

    ``subsystem`` is the qubit that is kept: 0 traces out the second qubit,
    1 traces out the first.
    """
    v = s.vector
    reduced = matcore.partial_trace(np.outer(v, v.conj()), keep=subsystem)
    w = np.clip(np.linalg.eigvalsh(reduced), 0.0, 1.0)
    return _entropy_bits(w)


def _off_sum(part: StructuredRank2) -> complex:
    return sum(m.weight * m.c1 * m.c2 * complex(math.cos(m.phase), math.sin(m.phase)) for m in part.members)


def concurrence_rank2_closed(r: StructuredRank2) -> float:
    """Concurrence of a standalone structured rank-2 mixture."""
    r.require_standalone()
    f = _off_sum(r)
    return 2.0 * math.hypot(f.real, f.imag)


def _check_omega(omega: float) -> float:
    if not (0.0 <= omega <= 1.0):
        raise ParamOutOfRange(f"omega={omega!r} outside [0, 1]")
    return float(omega)


def eigs_pure_mix_closed(c1: float, c2: float, omega: float) -> np.ndarray:
    """Lambdas of the mixed Schmidt-form state ``c1|uu> + c2|dd>``, descending."""
    if c1 < 0 or c2 < 0 or abs(c1 * c1 + c2 * c2 - 1.0) > NORM_TOL:
        raise ParamOutOfRange(f"need c1, c2 >= 0 with c1^2 + c2^2 = 1, got ({c1}, {c2})")
    omega = _check_omega(omega)
    k = (1.0 - omega) * c1 * c2
    q = omega / 4.0
    root = math.sqrt(k * k + q - 3.0 * q * q)
    return np.sort(np.array([root + k, root - k, q, q]))[::-1]


def eigs_rank4_mix_closed(stats: RankFourStats, omega: float) -> np.ndarray:
    """Lambdas of the mixed structured rank-4 state, as ``[l1, l2, l3, l4]``.

    ``l1 >= l2`` come from the parallel block and ``l3 >= l4`` from the
    antiparallel block; the four are not sorted against each other.
    """
    omega = _check_omega(omega)
    s = 1.0 - omega
    q = omega / 4.0
    r_par = math.sqrt(s * s * stats.A ** 2 + q * s * stats.P + q * q)
    r_anti = math.sqrt(s * s * stats.B ** 2 + q * s * stats.Q + q * q)
    lam = np.array([r_par + s * stats.F, r_par - s * stats.F, r_anti + s * stats.G, r_anti - s * stats.G])
    return np.clip(lam, 0.0, None)


def concurrence_rank4_closed(stats: RankFourStats, omega: float) -> float:
    # Sorting all four lambdas picks the dominant block, so the swap rule for
    # the antiparallel-dominant case needs no separate code path.
    return concurrence_from_lambdas(eigs_rank4_mix_closed(stats, omega))


def min_partial_transpose_eigenvalue(rho) -> float:
    pt = matcore.partial_transpose(_mat(rho))
    return float(np.linalg.eigvalsh(0.5 * (pt + pt.conj().T))[0])


def is_separable_ppt(rho) -> bool:
    """Peres-Horodecki test; exact for two qubits."""
    return min_partial_transpose_eigenvalue(rho) >= -PPT_TOL


def mixed_concurrence(m: np.ndarray, omega: float) -> float:
    """Concurrence of ``(1 - omega) m + omega I/4`` without validation."""
    return concurrence_from_lambdas(_lambdas_factor(mix_matrix(m, omega)))
