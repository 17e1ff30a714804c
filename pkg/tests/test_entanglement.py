import math

import numpy as np
import pytest
import sympy as sp

from mixent import entanglement as ent
from mixent import matcore, states
from mixent.errors import ParamOutOfRange, WeightsInvalid
from mixent.states import DensityMatrix, PureState, Rank2Member, StructuredRank2, StructuredRank4, Subspace

from conftest import R2, schmidt_mix


def bell_member(weight=1.0, phase=0.0):
    return Rank2Member(weight, R2, R2, phase)


def binary_entropy(p):
    return -sum(x * math.log2(x) for x in (p, 1 - p) if x > 0)


class TestSpinFlip:
    def test_max_mixed_fixed(self):
        np.testing.assert_allclose(ent.spin_flip(states.max_mixed()), np.eye(4) / 4, atol=0)

    def test_bell_fixed(self, bell):
        rho = states.density_of_pure(bell)
        np.testing.assert_allclose(ent.spin_flip(rho), rho.mat, atol=1e-16)

    @pytest.mark.parametrize("theta, omega", [(0.3, 0.0), (0.7, 0.25), (1.2, 0.9)])
    def test_schmidt_form_swaps_diagonal(self, theta, omega):
        c1, c2 = math.cos(theta), math.sin(theta)
        expected = schmidt_mix(c2, c1, omega)  # c1^2 and c2^2 exchanged, off-diagonal unchanged
        np.testing.assert_allclose(ent.spin_flip(schmidt_mix(c1, c2, omega)), expected, atol=1e-16)

    def test_preserves_density_properties(self):
        for seed in range(50):
            t = ent.spin_flip(states.random_density(seed, 1 + seed % 6))
            DensityMatrix(t)


class TestConcurrence:
    def test_bell(self, bell):
        assert ent.concurrence(states.density_of_pure(bell)).value == pytest.approx(1.0, abs=1e-14)

    def test_max_mixed(self):
        assert ent.concurrence(states.max_mixed()).value == 0.0

    def test_schmidt_path_point(self):
        # (1 - w) 2 c1 c2 - w/2 at c1 = c2 = 1/sqrt2, w = 0.2
        linear = (1 - 0.2) * 1.0 - 0.1
        assert linear == pytest.approx(0.7, abs=1e-15)
        rho = DensityMatrix(schmidt_mix(R2, R2, 0.2))
        lam = np.sqrt(np.sort(np.linalg.eigvals(rho.mat @ ent.spin_flip(rho)).real)[::-1].clip(0))
        assert lam[0] - lam[1:].sum() == pytest.approx(0.7, abs=1e-7)
        assert ent.concurrence(rho).value == pytest.approx(0.7, abs=1e-14)

    def test_value_matches_lambdas(self):
        for seed in range(100):
            cv = ent.concurrence(states.random_density(seed, 2))
            lam = cv.lambdas
            assert list(lam) == sorted(lam, reverse=True)
            assert abs(cv.value - max(0.0, lam[0] - lam[1] - lam[2] - lam[3])) <= 1e-12
            assert 0 <= cv.value <= 1

    @pytest.mark.parametrize("method", ["rhotilde", "sqrt"])
    def test_lambda_routes_agree_in_square(self, method):
        for seed in range(300):
            rho = states.random_density(seed, 1 + seed % 6)
            fast = ent.wootters_lambdas(rho)
            other = ent.wootters_lambdas(rho, method)
            np.testing.assert_allclose(fast**2, other**2, atol=1e-10)
            np.testing.assert_allclose(fast, other, atol=1e-7)

    def test_unknown_route(self):
        with pytest.raises(ValueError):
            ent.wootters_lambdas(states.max_mixed(), "nope")

    def test_pure_shortcut_matches(self):
        for seed in range(1000):
            s = states.random_pure(seed)
            assert abs(ent.concurrence_pure(s) - ent.concurrence(states.density_of_pure(s)).value) <= 1e-9

    @pytest.mark.parametrize(
        "amps, expected",
        [((R2, 0, 0, R2), 1.0), ((0, 1, 0, 0), 0.0), ((0.5, 0.5, 0.5, 0.5), 0.0)],
    )
    def test_pure_examples(self, amps, expected):
        assert ent.concurrence_pure(PureState(*amps)) == pytest.approx(expected, abs=1e-15)

    def test_local_unitary_invariance(self):
        for seed in range(500):
            rho = states.density_of_pure(states.random_pure(seed))
            u = np.kron(states.random_unitary2(10_000 + seed), states.random_unitary2(20_000 + seed))
            rotated = DensityMatrix(u @ rho.mat @ u.conj().T)
            assert abs(ent.concurrence(rho).value - ent.concurrence(rotated).value) <= 1e-9


class TestEntropy:
    def test_examples(self, bell):
        assert ent.entropy_pure(bell) == pytest.approx(1.0, abs=1e-15)
        assert ent.entropy_pure(PureState(1, 0, 0, 0)) == 0.0

    def test_concurrence_half(self):
        c = 0.5
        p = (1 + math.sqrt(1 - c * c)) / 2
        oracle = binary_entropy(p)
        assert oracle == pytest.approx(0.35458, abs=5e-6)
        s = PureState(math.sqrt(p), 0, 0, math.sqrt(1 - p))
        assert ent.concurrence_pure(s) == pytest.approx(c, abs=1e-15)
        # explicit partial trace over the second qubit
        v = s.vector
        reduced = np.array([[sum(v[2 * i + k] * np.conj(v[2 * j + k]) for k in range(2)) for j in range(2)] for i in range(2)])
        assert binary_entropy(np.linalg.eigvalsh(reduced)[1].real) == pytest.approx(oracle, abs=1e-12)
        assert ent.entropy_pure(s) == pytest.approx(oracle, abs=1e-12)

    def test_subsystems_agree_and_match_schmidt(self):
        for seed in range(300):
            s = states.random_pure(seed)
            a, b = ent.entropy_pure(s, 0), ent.entropy_pure(s, 1)
            assert abs(a - b) <= 1e-10
            sd = states.schmidt_coefficients(s)
            assert a == pytest.approx(binary_entropy(sd.c1**2), abs=1e-10)

    def test_monotone_in_concurrence(self):
        pairs = sorted((ent.concurrence_pure(s), ent.entropy_pure(s)) for s in map(states.random_pure, range(500)))
        entropies = [e for _, e in pairs]
        assert all(x < y for x, y in zip(entropies, entropies[1:]))


class TestRank2Closed:
    def test_single_bell(self):
        assert ent.concurrence_rank2_closed(StructuredRank2(Subspace.PARALLEL, (bell_member(),))) == pytest.approx(1.0)

    def test_opposite_phases_cancel(self):
        r = StructuredRank2(Subspace.PARALLEL, (bell_member(0.5, 0), bell_member(0.5, math.pi)))
        assert ent.concurrence_rank2_closed(r) == pytest.approx(0.0, abs=1e-15)
        assert ent.concurrence(states.structured_rank2_density(r, 0)).value == pytest.approx(0.0, abs=1e-15)

    def test_equal_phases(self):
        r = StructuredRank2(Subspace.ANTIPARALLEL, (bell_member(0.5, 0), bell_member(0.5, 0)))
        assert ent.concurrence_rank2_closed(r) == pytest.approx(1.0, abs=1e-15)

    def test_requires_standalone(self):
        with pytest.raises(WeightsInvalid):
            ent.concurrence_rank2_closed(StructuredRank2(Subspace.PARALLEL, (bell_member(0.3),)))

    @pytest.mark.parametrize("subspace", list(Subspace))
    def test_matches_generic_route(self, subspace):
        for seed in range(300):
            r = states.random_rank2(seed, subspace)
            generic = ent.concurrence(states.structured_rank2_density(r, 0)).value
            assert abs(ent.concurrence_rank2_closed(r) - generic) <= 1e-9


class TestPureMixEigenvalues:
    def test_bell_endpoints(self):
        np.testing.assert_allclose(ent.eigs_pure_mix_closed(R2, R2, 0), [1, 0, 0, 0], atol=1e-15)
        np.testing.assert_allclose(ent.eigs_pure_mix_closed(0.6, 0.8, 1), [0.25] * 4, atol=1e-15)

    def test_boundary_point_exact(self):
        c, w = sp.sqrt(2) / 2, sp.Rational(2, 3)
        k = (1 - w) * c * c
        root = sp.sqrt(k**2 + w / 4 - 3 * (w / 4) ** 2)
        exact = [sp.nsimplify(x) for x in (root + k, root - k, w / 4, w / 4)]
        assert exact == [sp.Rational(1, 2), sp.Rational(1, 6), sp.Rational(1, 6), sp.Rational(1, 6)]
        lam = ent.eigs_pure_mix_closed(R2, R2, 2 / 3)
        np.testing.assert_allclose(lam, [0.5, 1 / 6, 1 / 6, 1 / 6], atol=1e-15)
        assert ent.concurrence_from_lambdas(lam) == pytest.approx(0.0, abs=1e-15)

    def test_grid_against_generic(self):
        for c1 in np.linspace(0, 1, 20):
            c2 = math.sqrt(max(0.0, 1 - c1 * c1))
            for w in np.linspace(0, 1, 20):
                closed = ent.eigs_pure_mix_closed(c1, c2, w)
                m = schmidt_mix(c1, c2, w)
                np.testing.assert_allclose(closed**2, matcore.eig_rho_rhotilde(m @ ent.spin_flip(m)), atol=1e-10)
                np.testing.assert_allclose(closed, ent.wootters_lambdas(m), atol=1e-10)

    @pytest.mark.parametrize("args", [(0.9, 0.9, 0.1), (-0.6, 0.8, 0.1), (0.6, 0.8, 1.1)])
    def test_rejects_bad_params(self, args):
        with pytest.raises(ParamOutOfRange):
            ent.eigs_pure_mix_closed(*args)


def worked_rank4():
    return StructuredRank4(
        StructuredRank2(Subspace.PARALLEL, (bell_member(0.75),)),
        StructuredRank2(Subspace.ANTIPARALLEL, (bell_member(0.25),)),
    )


class TestRank4Closed:
    def test_q0_bell(self):
        r = StructuredRank4(StructuredRank2(Subspace.PARALLEL, (bell_member(),)), StructuredRank2(Subspace.ANTIPARALLEL))
        assert ent.concurrence_rank4_closed(states.rank4_stats(r), 0) == pytest.approx(1.0, abs=1e-15)

    @pytest.mark.parametrize("omega", [0.0, 0.2, 0.5, 1.0])
    def test_equal_halves_vanish(self, omega):
        r = StructuredRank4(
            StructuredRank2(Subspace.PARALLEL, (bell_member(0.5),)),
            StructuredRank2(Subspace.ANTIPARALLEL, (bell_member(0.5),)),
        )
        assert ent.concurrence_rank4_closed(states.rank4_stats(r), omega) == pytest.approx(0.0, abs=1e-15)
        assert ent.concurrence(states.structured_rank4_density(r, omega)).value == pytest.approx(0.0, abs=1e-15)

    def test_worked_point(self):
        stats = states.rank4_stats(worked_rank4())
        # 2F - 2B with F = 3/8, B = 1/8
        assert ent.concurrence_rank4_closed(stats, 0) == pytest.approx(0.5, abs=1e-15)
        assert ent.concurrence(states.structured_rank4_density(worked_rank4(), 0)).value == pytest.approx(0.5, abs=1e-14)

    def test_eigenvalues_worked_point(self):
        stats = states.rank4_stats(worked_rank4())
        lam = ent.eigs_rank4_mix_closed(stats, 0)
        np.testing.assert_allclose(lam, [0.75, 0, 0.25, 0], atol=1e-15)
        m = states.structured_rank4_density(worked_rank4(), 0).mat
        generic = np.sqrt(np.clip(np.sort(np.linalg.eigvals(m @ ent.spin_flip(m)).real)[::-1], 0, None))
        np.testing.assert_allclose(np.sort(lam)[::-1], generic, atol=1e-7)

    def test_q0_reduces_to_pure_eigenvalues(self):
        for theta in np.linspace(0, math.pi / 4, 7):
            c1, c2 = math.cos(theta), math.sin(theta)
            r = StructuredRank4(
                StructuredRank2(Subspace.PARALLEL, (Rank2Member(1.0, c1, c2, 0.4),)), StructuredRank2(Subspace.ANTIPARALLEL)
            )
            for w in np.linspace(0, 1, 9):
                closed = np.sort(ent.eigs_rank4_mix_closed(states.rank4_stats(r), w))[::-1]
                np.testing.assert_allclose(closed, ent.eigs_pure_mix_closed(c1, c2, w), atol=1e-12)

    def test_max_mixed_endpoint(self):
        lam = ent.eigs_rank4_mix_closed(states.rank4_stats(worked_rank4()), 1)
        np.testing.assert_allclose(lam, [0.25] * 4, atol=1e-15)

    def test_random_against_generic(self):
        rng = np.random.default_rng(2)
        for seed in range(200):
            r = states.random_rank4(seed)
            w = float(rng.uniform())
            stats = states.rank4_stats(r)
            rho = states.structured_rank4_density(r, w)
            closed = np.sort(ent.eigs_rank4_mix_closed(stats, w))[::-1]
            np.testing.assert_allclose(closed, ent.wootters_lambdas(rho), atol=1e-8)
            np.testing.assert_allclose(closed, ent.wootters_lambdas(rho, "sqrt"), atol=1e-7)
            assert abs(ent.concurrence_rank4_closed(stats, w) - ent.concurrence(rho).value) <= 1e-9

    def test_dominant_branch_formula(self):
        # the lambda1-dominant closed expression is a corollary of sorting
        for seed in range(200):
            stats = states.rank4_stats(states.random_rank4(seed))
            for w in (0.0, 0.1, 0.3):
                lam = ent.eigs_rank4_mix_closed(stats, w)
                s = stats if lam[0] >= lam[2] else stats.swapped()
                q = w / 4
                expr = 2 * (1 - w) * s.F - 2 * math.sqrt((1 - w) ** 2 * s.B**2 + q * (1 - w) * s.Q + q * q)
                assert ent.concurrence_rank4_closed(stats, w) == pytest.approx(max(0.0, expr), abs=1e-12)


class TestPPT:
    def test_examples(self, bell):
        assert ent.is_separable_ppt(states.max_mixed())
        assert not ent.is_separable_ppt(states.density_of_pure(bell))
        assert ent.min_partial_transpose_eigenvalue(states.density_of_pure(bell)) == pytest.approx(-0.5)

    def test_schmidt_boundary(self):
        m = schmidt_mix(R2, R2, 2 / 3)
        assert ent.min_partial_transpose_eigenvalue(m) == pytest.approx(0.0, abs=1e-15)
        assert ent.is_separable_ppt(m)
        assert not ent.is_separable_ppt(schmidt_mix(R2, R2, 2 / 3 - 1e-6))

    def test_agrees_with_concurrence(self):
        checked = 0
        for seed in range(1000):
            rho = states.random_density(seed, 1 + seed % 6)
            c = ent.concurrence(rho).value
            if 0 < c < 1e-9:
                continue
            checked += 1
            assert (c == 0) == ent.is_separable_ppt(rho), seed
        assert checked > 990
