"""Randomised cross-validation suites run by ``mixent verify``.

Each suite draws its own seeds from ``SeedSequence([seed, suite_index])`` so
reports are reproducible and suites are independent of each other.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from . import matcore
from .entanglement import (
    concurrence,
    concurrence_pure,
    concurrence_rank2_closed,
    eigs_pure_mix_closed,
    eigs_rank4_mix_closed,
    is_separable_ppt,
    spin_flip,
)
from .omega import ZERO_BAND, omega_c_bisect, omega_c_pure, omega_c_rank2, omega_c_rank4
from .states import (
    DensityMatrix,
    StructuredRank2,
    StructuredRank4,
    Subspace,
    density_of_pure,
    mix_with_max_mixed,
    rank4_stats,
    random_density,
    random_pure,
    random_rank2,
    random_rank4,
    random_unitary2,
    structured_rank2_density,
    structured_rank4_density,
)

BOUNDARY_BAND = 1e-9


@dataclass
class Trial:
    ok: bool
    deviation: float
    state: object
    note: str = ""


@dataclass
class SuiteReport:
    name: str
    total: int = 0
    passed: int = 0
    max_deviation: float = 0.0
    failure: Trial | None = field(default=None, repr=False)

    @property
    def ok(self) -> bool:
        return self.passed == self.total


def _seeds(seed: int, index: int, trials: int) -> Iterator[int]:
    rng = np.random.default_rng(np.random.SeedSequence([seed, index]))
    for s in rng.integers(0, 2**63 - 1, size=trials):
        yield int(s)


def _pure_closed_vs_bisect(s: int) -> Trial:
    psi = random_pure(s)
    dev = abs(omega_c_pure(min(1.0, concurrence_pure(psi))).omega_c - omega_c_bisect(density_of_pure(psi)).omega_c)
    return Trial(dev <= 1e-6, dev, psi)


def _rank2_closed_vs_bisect(s: int) -> Trial:
    rng = np.random.default_rng(s)
    r = random_rank2(s, Subspace.PARALLEL if rng.random() < 0.5 else Subspace.ANTIPARALLEL)
    dev = abs(omega_c_rank2(r).omega_c - omega_c_bisect(structured_rank2_density(r, 0.0)).omega_c)
    dev_c = abs(concurrence_rank2_closed(r) - concurrence(structured_rank2_density(r, 0.0)).value)
    return Trial(dev <= 1e-6 and dev_c <= 1e-9, max(dev, dev_c), r)


def _rank4_closed_vs_bisect(s: int) -> Trial:
    r = random_rank4(s)
    dev = abs(omega_c_rank4(r, verify=False).omega_c - omega_c_bisect(structured_rank4_density(r, 0.0)).omega_c)
    return Trial(dev <= 1e-6, dev, r)


def _ppt_agreement(s: int) -> Trial:
    k = int(np.random.default_rng(s).integers(1, 7))
    rho = random_density(s, k)
    c = concurrence(rho).value
    sep = is_separable_ppt(rho)
    if 0.0 < c < BOUNDARY_BAND:
        return Trial(True, 0.0, rho, "boundary band")
    ok = (c == 0.0) == sep
    return Trial(ok, c if sep else 0.0, rho)


def _local_unitary(s: int) -> Trial:
    rho = density_of_pure(random_pure(s))
    u = np.kron(random_unitary2(s + 1), random_unitary2(s + 2))
    rotated = DensityMatrix(u @ rho.mat @ u.conj().T)
    dev = abs(concurrence(rho).value - concurrence(rotated).value)
    return Trial(dev <= 1e-9, dev, rho)


def _schmidt_mix_matrix(c1: float, c2: float, omega: float) -> np.ndarray:
    m = np.diag([(1 - omega) * c1 * c1 + omega / 4, omega / 4, omega / 4, (1 - omega) * c2 * c2 + omega / 4])
    m[0, 3] = m[3, 0] = (1 - omega) * c1 * c2
    return m.astype(complex)


def _pure_mix_eigs(s: int) -> Trial:
    rng = np.random.default_rng(s)
    theta, omega = rng.uniform(0, math.pi / 2), rng.uniform(0, 1)
    c1, c2 = math.cos(theta), math.sin(theta)
    m = _schmidt_mix_matrix(c1, c2, omega)
    lam = eigs_pure_mix_closed(c1, c2, omega)
    dev_eig = float(np.max(np.abs(lam ** 2 - matcore.eig_rho_rhotilde(m @ spin_flip(m)))))
    linear = max(0.0, (1 - omega) * 2 * c1 * c2 - omega / 2)
    dev_c = abs(concurrence(DensityMatrix(m)).value - linear)
    return Trial(dev_eig <= 1e-10 and dev_c <= 1e-10, max(dev_eig, dev_c), DensityMatrix(m))


def _rank4_eigs(s: int) -> Trial:
    r = random_rank4(s)
    omega = float(np.random.default_rng(s).uniform(0, 1))
    closed = np.sort(eigs_rank4_mix_closed(rank4_stats(r), omega))[::-1]
    generic = np.array(concurrence(structured_rank4_density(r, omega)).lambdas)
    dev = float(np.max(np.abs(closed - generic)))
    return Trial(dev <= 1e-8, dev, r)


def _upward_closed(s: int) -> Trial:
    rng = np.random.default_rng(s)
    rho = random_density(s, int(rng.integers(1, 7)))
    w1 = float(rng.uniform(0, 1))
    w2 = float(rng.uniform(w1, 1))
    c1 = concurrence(mix_with_max_mixed(rho, w1)).value
    c2 = concurrence(mix_with_max_mixed(rho, w2)).value
    ok = not (c1 <= ZERO_BAND and c2 > ZERO_BAND)
    return Trial(ok, c2 if c1 <= ZERO_BAND else 0.0, rho)


def _q0_reduction(s: int) -> Trial:
    r2 = random_rank2(s, Subspace.PARALLEL)
    r4 = StructuredRank4(r2, StructuredRank2(Subspace.ANTIPARALLEL))
    dev = abs(omega_c_rank4(r4, verify=False).omega_c - omega_c_rank2(r2).omega_c)
    return Trial(dev <= 1e-10, dev, r4)


SUITES: list[tuple[str, Callable[[int], Trial]]] = [
    ("closed_vs_bisection_pure", _pure_closed_vs_bisect),
    ("closed_vs_bisection_rank2", _rank2_closed_vs_bisect),
    ("closed_vs_bisection_rank4", _rank4_closed_vs_bisect),
    ("ppt_concurrence_agreement", _ppt_agreement),
    ("local_unitary_invariance", _local_unitary),
    ("pure_mix_eigenvalues", _pure_mix_eigs),
    ("rank4_eigenvalues", _rank4_eigs),
    ("upward_closedness", _upward_closed),
    ("q0_reduction", _q0_reduction),
]


def run_suites(trials: int, seed: int) -> list[SuiteReport]:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    reports = []
    for index, (name, fn) in enumerate(SUITES):
        rep = SuiteReport(name)
        for s in _seeds(seed, index, trials):
            t = fn(s)
            rep.total += 1
            rep.max_deviation = max(rep.max_deviation, t.deviation)
            if t.ok:
                rep.passed += 1
            elif rep.failure is None:
                rep.failure = t
        reports.append(rep)
    return reports


def format_report(reports: list[SuiteReport], trials: int, seed: int) -> str:
    lines = [f"verify: trials={trials} seed={seed}", f"{'suite':<28} {'passed':>11}  max deviation"]
    for r in reports:
        lines.append(f"{r.name:<28} {f'{r.passed}/{r.total}':>11}  {r.max_deviation:.3e}")
    failed = [r for r in reports if not r.ok]
    lines.append("all suites passed" if not failed else f"{len(failed)} suite(s) failed")
    return "\n".join(lines) + "\n"

