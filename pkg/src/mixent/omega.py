"""Critical mixing weight: the smallest omega for which
``(1 - omega) rho0 + omega I/4`` is separable.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .entanglement import (
    concurrence_pure,
    concurrence_rank2_closed,
    concurrence_rank4_closed,
    eigs_rank4_mix_closed,
    is_separable_ppt,
    mixed_concurrence,
)
from .errors import (
    BranchInconsistent,
    GridInvalid,
    OmegaMismatch,
    ParamOutOfRange,
    ToleranceOutOfRange,
)
from .states import (
    DensityMatrix,
    RankFourStats,
    StructuredRank2,
    StructuredRank4,
    mix_matrix,
    rank4_stats,
    structured_rank2_density,
    structured_rank4_density,
)

log = logging.getLogger(__name__)

ZERO_BAND = 1e-12
AGREEMENT_TOL = 1e-6
MAX_BISECT_ITER = 60
DEFAULT_TOL = 1e-9


class Method(str, Enum):
    PURE_CLOSED = "PureClosed"
    RANK2_CLOSED = "Rank2Closed"
    RANK4_CLOSED = "Rank4Closed"
    BISECTION = "Bisection"


class Branch(str, Enum):
    LAMBDA1 = "Lambda1Dominant"
    LAMBDA3 = "Lambda3Dominant"


@dataclass(frozen=True)
class OmegaResult:
    """Critical weight plus diagnostics.

    ``residual`` is the concurrence at ``omega_c + tol`` (zero when the
    result is sound). ``bisect_gap`` is ``|closed - bisection|`` when a
    closed form was cross-checked, else ``None``.
    """

    omega_c: float
    method: Method
    branch: Branch | None = None
    residual: float = 0.0
    bisect_gap: float | None = None


class SweepRow(NamedTuple):
    omega: float
    concurrence: float
    separable: bool


def omega_from_concurrence(c: float) -> float:
    """``C / (C + 1/2)``: root of ``(1 - w) C - w/2``."""
    return c / (c + 0.5)


def omega_c_pure(concurrence: float) -> OmegaResult:
    c = float(concurrence)
    if not (0.0 <= c <= 1.0):
        raise ParamOutOfRange(f"concurrence {c!r} outside [0, 1]")
    w = omega_from_concurrence(c)
    probe = min(1.0, w + DEFAULT_TOL)
    return OmegaResult(w, Method.PURE_CLOSED, residual=max(0.0, (1 - probe) * c - probe / 2))


def _residual(m: np.ndarray, omega: float, tol: float) -> float:
    return mixed_concurrence(m, min(1.0, omega + tol))


def omega_c_bisect(rho0: DensityMatrix, tol: float = DEFAULT_TOL) -> OmegaResult:
    """Bisect on ``[0, 1]`` for the separability threshold of the mixing path.

    The separable part of the path is an interval ending at omega = 1
    (convexity of the separable set), so a bracket ``lo`` entangled,
    ``hi`` separable always exists once omega = 0 is entangled.
    """
    if not (1e-12 <= tol <= 1e-3):
        raise ToleranceOutOfRange(f"tol={tol!r} outside [1e-12, 1e-3]")
    m = rho0.mat
    if mixed_concurrence(m, 0.0) <= ZERO_BAND:
        return OmegaResult(0.0, Method.BISECTION, residual=_residual(m, 0.0, tol))
    lo, hi = 0.0, 1.0
    for _ in range(MAX_BISECT_ITER):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if mixed_concurrence(m, mid) <= ZERO_BAND:
            hi = mid
        else:
            lo = mid
    w = 0.5 * (lo + hi)
    return OmegaResult(w, Method.BISECTION, residual=_residual(m, w, tol))


def _cross_check(result: OmegaResult, rho0: DensityMatrix, tol: float) -> OmegaResult:
    ref = omega_c_bisect(rho0, tol).omega_c
    gap = abs(result.omega_c - ref)
    if gap > AGREEMENT_TOL:
        raise OmegaMismatch(
            f"{result.method.value} gives {result.omega_c:.12f}, bisection gives {ref:.12f}"
        )
    return OmegaResult(result.omega_c, result.method, result.branch, result.residual, gap)


def omega_c_rank2(r: StructuredRank2, verify: bool = False, tol: float = DEFAULT_TOL) -> OmegaResult:
    c0 = concurrence_rank2_closed(r)
    w = omega_from_concurrence(c0)
    rho0 = structured_rank2_density(r, 0.0)
    result = OmegaResult(w, Method.RANK2_CLOSED, residual=_residual(rho0.mat, w, tol))
    return _cross_check(result, rho0, tol) if verify else result


def critical_weight_rank4(F: float, B: float, Q: float) -> float:
    """Root of ``(1-w) F = sqrt((1-w)^2 B^2 + (w/4)(1-w) Q + (w/4)^2)``.

    Written as ``8D / (8D + Q + sqrt(Q^2 + 4D))`` with ``D = F^2 - B^2``,
    the rationalised form of
    ``(8D + Q - sqrt(Q^2 + 4D)) / (8D + 2Q - 1/2)``. The two agree wherever
    the latter is defined; this one has no removable singularity at
    ``8D + 2Q = 1/2`` and no cancellation near it.
    """
    d = F * F - B * B
    if d <= 0:
        return 0.0
    return 8 * d / (8 * d + Q + math.sqrt(Q * Q + 4 * d))


def critical_weight_rank4_textbook(F: float, B: float, Q: float) -> float:
    """Unrationalised quotient; singular where ``8D + 2Q = 1/2``."""
    d = F * F - B * B
    return (8 * d + Q - math.sqrt(Q * Q + 4 * d)) / (8 * d + 2 * Q - 0.5)


def _branch_candidate(stats: RankFourStats, branch: Branch) -> float:
    s = stats if branch is Branch.LAMBDA1 else stats.swapped()
    w = critical_weight_rank4(s.F, s.B, s.Q)
    if not (0.0 < w <= 1.0):
        raise BranchInconsistent(f"{branch.value}: candidate {w!r} not in (0, 1]")
    lam = eigs_rank4_mix_closed(stats, w)
    top, other = (lam[0], lam[2]) if branch is Branch.LAMBDA1 else (lam[2], lam[0])
    if top < other - 1e-12:
        raise BranchInconsistent(f"{branch.value}: dominance fails at omega={w!r}")
    if abs(top - (lam.sum() - top)) > 1e-9:
        raise BranchInconsistent(f"{branch.value}: concurrence does not vanish at omega={w!r}")
    return w


def omega_c_rank4(r: StructuredRank4, verify: bool = True, tol: float = DEFAULT_TOL) -> OmegaResult:
    """Closed-form critical weight for the structured rank-4 family.

    The branch whose top lambda dominates at the returned weight is recorded.
    With ``verify`` the value is also checked against bisection and
    ``OmegaMismatch`` is raised on disagreement beyond 1e-6.
    """
    stats = rank4_stats(r)
    rho0 = structured_rank4_density(r, 0.0)
    if concurrence_rank4_closed(stats, 0.0) <= ZERO_BAND:
        result = OmegaResult(0.0, Method.RANK4_CLOSED, residual=_residual(rho0.mat, 0.0, tol))
        return _cross_check(result, rho0, tol) if verify else result

    found = []
    for branch in Branch:
        try:
            found.append((branch, _branch_candidate(stats, branch)))
        except BranchInconsistent as exc:
            log.debug("rejected branch: %s", exc)
    if len(found) != 1:
        log.warning("no unique consistent branch (%d found); using bisection", len(found))
        return omega_c_bisect(rho0, tol)
    branch, w = found[0]
    result = OmegaResult(w, Method.RANK4_CLOSED, branch, residual=_residual(rho0.mat, w, tol))
    return _cross_check(result, rho0, tol) if verify else result


def sweep(rho0: DensityMatrix, omega_from: float, omega_to: float, steps: int) -> list[SweepRow]:
    """Concurrence and PPT flag on a uniform grid along the mixing path."""
    if not (0.0 <= omega_from < omega_to <= 1.0):
        raise GridInvalid(f"need 0 <= from < to <= 1, got [{omega_from}, {omega_to}]")
    if int(steps) != steps or steps < 2:
        raise GridInvalid(f"steps must be an integer >= 2, got {steps!r}")
    rows = []
    for w in np.linspace(omega_from, omega_to, int(steps)):
        m = mix_matrix(rho0.mat, float(w))
        rows.append(SweepRow(float(w), mixed_concurrence(m, 0.0), is_separable_ppt(m)))
    return rows


def omega_c_closed_for_pure(state) -> OmegaResult:
    """Closed form for a ``PureState``, via ``2|ad - bc|``."""
    return omega_c_pure(min(1.0, concurrence_pure(state)))
