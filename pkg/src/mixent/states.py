"""Two-qubit states: pure vectors, ensembles, density matrices and the
structured families supported on the parallel (``|uu>, |dd>``) and
antiparallel (``|ud>, |du>``) subspaces.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import matcore
from .errors import (
    InvalidDensityMatrix,
    NotNormalized,
    OmegaOutOfRange,
    WeightsInvalid,
)

NORM_TOL = 1e-9
RENORM_TOL = 1e-6
DENSITY_TOL = 1e-10


def _renormalize(norm2: float, what: str) -> float:
    """Return the scale factor that fixes a squared norm, or reject it."""
    if not math.isfinite(norm2) or abs(norm2 - 1.0) > RENORM_TOL:
        raise NotNormalized(f"{what}: squared norm {norm2!r} differs from 1 by more than {RENORM_TOL:.0e}")
    return 1.0 / math.sqrt(norm2)


@dataclass(frozen=True)
class PureState:
    """Amplitudes of ``a|uu> + b|ud> + c|du> + d|dd>``.

    Inputs whose squared norm is within 1e-6 of one are silently rescaled.
    """

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        amps = [complex(x) for x in (self.a, self.b, self.c, self.d)]
        norm2 = sum(abs(x) ** 2 for x in amps)
        scale = _renormalize(norm2, "pure state") if abs(norm2 - 1.0) > 1e-15 else 1.0
        for name, x in zip("abcd", amps):
            object.__setattr__(self, name, x * scale)

    @classmethod
    def from_vector(cls, v) -> "PureState":
        v = np.asarray(v, dtype=complex).ravel()
        if v.shape != (4,):
            raise ValueError("pure state needs exactly 4 amplitudes")
        return cls(*v)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d], dtype=complex)


@dataclass(frozen=True)
class SchmidtData:
    """Schmidt form ``c1|al1>|be1> + c2 e^{i chi}|al2>|be2>``.

    Local vectors follow ``|al1> = (|u> + alpha|d>)/norm`` and
    ``|al2> = (conj(alpha)|u> - |d>)/norm`` (likewise for ``beta``). When the
    first Schmidt vector has no ``|u>`` component, ``alpha`` is ``inf`` and
    ``|al1> = |d>``, ``|al2> = |u>``. The decomposition reproduces the state up
    to a global phase; ``chi`` is 0 when ``c2 == 0``.
    """

    c1: float
    c2: float
    chi: float
    alpha: complex
    beta: complex


@dataclass(frozen=True)
class Ensemble:
    """Weighted pure states, ``members = ((p_i, psi_i), ...)``."""

    members: tuple

    def __post_init__(self):
        members = tuple((float(p), s) for p, s in self.members)
        if not members:
            raise WeightsInvalid("ensemble has no members")
        for p, s in members:
            if not (0.0 < p <= 1.0):
                raise WeightsInvalid(f"weight {p!r} outside (0, 1]")
            if not isinstance(s, PureState):
                raise TypeError("ensemble members must be PureState instances")
        total = sum(p for p, _ in members)
        if abs(total - 1.0) > NORM_TOL:
            raise WeightsInvalid(f"weights sum to {total!r}, not 1")
        object.__setattr__(self, "members", members)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated 4x4 density matrix (Hermitian, unit trace, PSD)."""

    mat: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.array(self.mat, dtype=complex)
        if m.shape != (4, 4) or not np.all(np.isfinite(m)):
            raise InvalidDensityMatrix("density matrix must be a finite 4x4 array")
        dev = matcore.hermitian_deviation(m)
        if dev > DENSITY_TOL:
            raise InvalidDensityMatrix(f"not Hermitian: deviation {dev:.3e}")
        tr = np.trace(m)
        if abs(tr - 1.0) > DENSITY_TOL:
            raise InvalidDensityMatrix(f"trace {tr.real:.12g} is not 1")
        m = 0.5 * (m + m.conj().T)
        lo = np.linalg.eigvalsh(m)[0]
        if lo < -DENSITY_TOL:
            raise InvalidDensityMatrix(f"not positive semidefinite: eigenvalue {lo:.3e}")
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)

    def __eq__(self, other):
        if not isinstance(other, DensityMatrix):
            return NotImplemented
        return bool(np.array_equal(self.mat, other.mat))

    __hash__ = None


class Subspace(str, Enum):
    PARALLEL = "parallel"
    ANTIPARALLEL = "antiparallel"

    @property
    def indices(self) -> tuple[int, int]:
        return (0, 3) if self is Subspace.PARALLEL else (1, 2)


@dataclass(frozen=True)
class Rank2Member:
    """One member ``c1|x> + c2 e^{i phase}|y>`` of a structured family.

    ``(x, y)`` is ``(|uu>, |dd>)`` or ``(|ud>, |du>)`` depending on the family.
    """

    weight: float
    c1: float
    c2: float
    phase: float

    def __post_init__(self):
        w, c1, c2, ph = (float(x) for x in (self.weight, self.c1, self.c2, self.phase))
        if not (0.0 < w <= 1.0):
            raise WeightsInvalid(f"weight {w!r} outside (0, 1]")
        if c1 < 0 or c2 < 0:
            raise NotNormalized(f"coefficients must be nonnegative, got ({c1}, {c2})")
        if not math.isfinite(ph):
            raise ValueError("phase must be finite")
        norm2 = c1 * c1 + c2 * c2
        if abs(norm2 - 1.0) > 1e-15:
            s = _renormalize(norm2, "structured member")
            c1, c2 = c1 * s, c2 * s
        object.__setattr__(self, "weight", w)
        object.__setattr__(self, "c1", c1)
        object.__setattr__(self, "c2", c2)
        object.__setattr__(self, "phase", ph)


@dataclass(frozen=True)
class StructuredRank2:
    """Mixture of members supported on one two-dimensional subspace."""

    subspace: Subspace
    members: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "subspace", Subspace(self.subspace))
        members = tuple(m if isinstance(m, Rank2Member) else Rank2Member(*m) for m in self.members)
        object.__setattr__(self, "members", members)

    @property
    def total_weight(self) -> float:
        return sum(m.weight for m in self.members)

    def require_standalone(self) -> None:
        if not self.members or abs(self.total_weight - 1.0) > NORM_TOL:
            raise WeightsInvalid(f"weights sum to {self.total_weight!r}, not 1")


@dataclass(frozen=True)
class StructuredRank4:
    """Parallel part (weights p_i) plus antiparallel part (weights q_i).

    Either part may be empty, which covers the rank-2 and rank-3 cases.
    """

    parallel: StructuredRank2
    antiparallel: StructuredRank2

    def __post_init__(self):
        if self.parallel.subspace is not Subspace.PARALLEL:
            raise ValueError("parallel part must use the parallel subspace")
        if self.antiparallel.subspace is not Subspace.ANTIPARALLEL:
            raise ValueError("antiparallel part must use the antiparallel subspace")
        total = self.parallel.total_weight + self.antiparallel.total_weight
        if abs(total - 1.0) > NORM_TOL:
            raise WeightsInvalid(f"sum of p_i and q_i is {total!r}, not 1")


@dataclass(frozen=True)
class RankFourStats:
    A: float
    B: float
    F: float
    G: float
    P: float
    Q: float

    def swapped(self) -> "RankFourStats":
        """Exchange the roles of the two subspaces."""
        return RankFourStats(A=self.B, B=self.A, F=self.G, G=self.F, P=self.Q, Q=self.P)


# -- constructors ---------------------------------------------------------

def density_of_pure(s: PureState) -> DensityMatrix:
    v = s.vector
    return DensityMatrix(np.outer(v, v.conj()))


def density_of_ensemble(e: Ensemble) -> DensityMatrix:
    m = np.zeros((4, 4), dtype=complex)
    for p, s in e.members:
        v = s.vector
        m += p * np.outer(v, v.conj())
    return DensityMatrix(m)


def max_mixed() -> DensityMatrix:
    return DensityMatrix(np.eye(4, dtype=complex) / 4)


def _check_omega(omega: float) -> float:
    omega = float(omega)
    if not (0.0 <= omega <= 1.0):
        raise OmegaOutOfRange(f"omega={omega!r} outside [0, 1]")
    return omega


def mix_matrix(m: np.ndarray, omega: float) -> np.ndarray:
    """Unvalidated ``(1 - omega) m + omega I/4``."""
    return (1.0 - omega) * m + (omega / 4.0) * matcore.ID4


def mix_with_max_mixed(rho0: DensityMatrix, omega: float) -> DensityMatrix:
    omega = _check_omega(omega)
    return DensityMatrix(mix_matrix(rho0.mat, omega))


def _local_pair(u: np.ndarray) -> tuple[complex, np.ndarray, np.ndarray]:
    """Parameter and (first, second) local vectors for a unit 2-vector ``u``."""
    if abs(u[0]) < 1e-14:
        return complex("inf"), np.array([0, 1], dtype=complex), np.array([1, 0], dtype=complex)
    param = u[1] / u[0]
    n = math.sqrt(1.0 + abs(param) ** 2)
    v1 = np.array([1, param], dtype=complex) / n
    v2 = np.array([param.conjugate(), -1], dtype=complex) / n
    return complex(param), v1, v2


def schmidt_coefficients(s: PureState) -> SchmidtData:
    """Schmidt data from the SVD of ``[[a, b], [c, d]]``."""
    m = s.vector.reshape(2, 2)
    u, sv, vh = np.linalg.svd(m)
    c1, c2 = float(sv[0]), float(sv[1])
    # c1*c2 = |det m| exactly; recompute c2 from it for accuracy when small
    det = abs(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
    if c1 > 0:
        c2 = float(det / c1)
    alpha, a1, a2 = _local_pair(u[:, 0])
    beta, b1, b2 = _local_pair(vh[0])
    v = s.vector
    k1 = np.vdot(np.kron(a1, b1), v)
    chi = 0.0
    if c2 > 1e-14:
        k2 = np.vdot(np.kron(a2, b2), v)
        chi = cmath.phase(k2 / k1) % (2 * math.pi)
    return SchmidtData(c1=c1, c2=c2, chi=float(chi), alpha=alpha, beta=beta)


def expand(r) -> Ensemble:
    """Ensemble of pure states realising a structured family."""
    parts = [r] if isinstance(r, StructuredRank2) else [r.parallel, r.antiparallel]
    members = []
    for part in parts:
        i, j = part.subspace.indices
        for m in part.members:
            v = np.zeros(4, dtype=complex)
            v[i] = m.c1
            v[j] = m.c2 * cmath.exp(1j * m.phase)
            members.append((m.weight, PureState.from_vector(v)))
    return Ensemble(tuple(members))


def _block(part: StructuredRank2) -> np.ndarray:
    m = np.zeros((4, 4), dtype=complex)
    i, j = part.subspace.indices
    for mem in part.members:
        off = mem.weight * mem.c1 * mem.c2 * cmath.exp(-1j * mem.phase)
        m[i, i] += mem.weight * mem.c1 ** 2
        m[j, j] += mem.weight * mem.c2 ** 2
        m[i, j] += off
        m[j, i] += off.conjugate()
    return m


def structured_rank2_density(r: StructuredRank2, omega: float) -> DensityMatrix:
    r.require_standalone()
    omega = _check_omega(omega)
    return DensityMatrix(mix_matrix(_block(r), omega))


def structured_rank4_density(r: StructuredRank4, omega: float) -> DensityMatrix:
    omega = _check_omega(omega)
    return DensityMatrix(mix_matrix(_block(r.parallel) + _block(r.antiparallel), omega))


def _part_stats(part: StructuredRank2) -> tuple[float, float, float]:
    s1 = sum(m.weight * m.c1 ** 2 for m in part.members)
    s2 = sum(m.weight * m.c2 ** 2 for m in part.members)
    # sum_ij p_i p_j c1_i^2 c2_j^2 factorises into s1 * s2
    diag = math.sqrt(s1 * s2)
    off = abs(sum(m.weight * m.c1 * m.c2 * cmath.exp(1j * m.phase) for m in part.members))
    return diag, off, part.total_weight


def rank4_stats(r: StructuredRank4) -> RankFourStats:
    A, F, P = _part_stats(r.parallel)
    B, G, Q = _part_stats(r.antiparallel)
    return RankFourStats(A=A, B=B, F=F, G=G, P=P, Q=Q)


# -- random generators ----------------------------------------------------

def _haar_vector(rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    return z / np.linalg.norm(z)


def _simplex(rng: np.random.Generator, k: int) -> np.ndarray:
    cuts = np.sort(rng.random(k - 1))
    return np.diff(np.concatenate(([0.0], cuts, [1.0])))


def random_pure(seed: int) -> PureState:
    """Haar-random pure state; deterministic in ``seed``."""
    return PureState.from_vector(_haar_vector(np.random.default_rng(seed)))


def random_density(seed: int, k: int) -> DensityMatrix:
    """Mixture of ``k`` Haar-random pure states with uniform simplex weights."""
    if not (1 <= k <= 6):
        raise ValueError("k must be in [1, 6]")
    rng = np.random.default_rng(seed)
    w = _simplex(rng, k)
    m = np.zeros((4, 4), dtype=complex)
    for p in w:
        v = _haar_vector(rng)
        m += p * np.outer(v, v.conj())
    return DensityMatrix(m)


def random_unitary2(seed: int) -> np.ndarray:
    """Haar-random 2x2 unitary (QR of a complex Ginibre matrix)."""
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def _random_members(rng: np.random.Generator, total: float, n: int) -> tuple:
    weights = total * _simplex(rng, n)
    members = []
    for w in weights:
        theta = rng.uniform(0.0, math.pi / 2)
        members.append(Rank2Member(max(w, 1e-300), math.cos(theta), math.sin(theta), rng.uniform(0, 2 * math.pi)))
    return tuple(members)


def random_rank2(seed: int, subspace: Subspace = Subspace.PARALLEL, max_members: int = 4) -> StructuredRank2:
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, max_members + 1))
    return StructuredRank2(Subspace(subspace), _random_members(rng, 1.0, n))


def random_rank4(seed: int, max_members: int = 3) -> StructuredRank4:
    """Random structured mixture with both parts nonempty."""
    rng = np.random.default_rng(seed)
    P = float(rng.uniform(0.05, 0.95))
    n_p = int(rng.integers(1, max_members + 1))
    n_q = int(rng.integers(1, max_members + 1))
    par = StructuredRank2(Subspace.PARALLEL, _random_members(rng, P, n_p))
    anti = StructuredRank2(Subspace.ANTIPARALLEL, _random_members(rng, 1.0 - P, n_q))
    return StructuredRank4(par, anti)
