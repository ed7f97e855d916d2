import math

import numpy as np
import pytest

from cyclewalk import qrw
from cyclewalk.errors import DomainError
from cyclewalk.qrw import CoinSpec

S2 = 1 / math.sqrt(2)


def only(amps, entries):
    """All amplitudes outside ``entries`` are zero and the listed ones match."""
    mask = np.ones(amps.shape, bool)
    for (c, x), v in entries.items():
        assert amps[c, x] == pytest.approx(v, abs=1e-15)
        mask[c, x] = False
    assert np.all(amps[mask] == 0)


class TestInitialState:
    def test_symmetric_plus(self):
        s = qrw.make_initial_state(10, CoinSpec.symmetric(), 6)
        only(s.amplitudes, {(0, 6): S2, (1, 6): 1j * S2})
        assert s.step_count == 0
        assert s.norm_squared() == pytest.approx(1, abs=1e-15)

    def test_bloch_poles(self):
        s = qrw.make_initial_state(5, CoinSpec.bloch(math.pi / 4, 0.0, 2.7), 0)
        only(s.amplitudes, {(0, 0): 1})
        s = qrw.make_initial_state(4, CoinSpec.bloch(math.pi / 4, math.pi, 0.0), 2)
        assert abs(s.amplitude(1, 2) - 1) < 1e-15
        assert abs(s.amplitude(0, 2)) < 1e-15

    @pytest.mark.parametrize("x0", [-1, 10, 2.5])
    def test_bad_site(self, x0):
        with pytest.raises(DomainError):
            qrw.make_initial_state(10, CoinSpec(), x0)

    @pytest.mark.parametrize("theta", [0.0, math.pi / 2, -0.1, 2.0])
    def test_bad_theta(self, theta):
        with pytest.raises(DomainError):
            CoinSpec(theta=theta)

    def test_bad_bloch_angle(self):
        with pytest.raises(DomainError):
            CoinSpec.bloch(0.5, float("nan"))

    def test_small_cycle_rejected(self):
        with pytest.raises(DomainError):
            qrw.make_initial_state(2, CoinSpec(), 0)


class TestCoinMatrix:
    def test_hadamard(self):
        assert np.allclose(qrw.coin_matrix(math.pi / 4), S2 * np.array([[1, 1], [1, -1]]), atol=1e-16)

    def test_pi_over_6(self):
        r3 = math.sqrt(3) / 2
        assert np.allclose(qrw.coin_matrix(math.pi / 6), [[r3, 0.5], [0.5, -r3]], atol=1e-16)

    @pytest.mark.parametrize("theta", np.linspace(0.01, math.pi / 2 - 0.01, 9))
    def test_involution(self, theta):
        c = qrw.coin_matrix(theta)
        assert np.allclose(c @ c, np.eye(2), atol=1e-15)
        assert np.array_equal(c, c.T)

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            qrw.coin_matrix(math.pi / 2)


class TestStep:
    def test_single_step_from_coin0(self):
        s = qrw.make_initial_state(10, CoinSpec.bloch(math.pi / 4, 0.0), 6)
        out = qrw.step(s, math.pi / 4)
        only(out.amplitudes, {(0, 7): S2, (1, 5): S2})
        assert out.step_count == 1

    def test_single_step_from_coin1_wraps(self):
        s = qrw.make_initial_state(4, CoinSpec.bloch(math.pi / 4, math.pi), 0)
        out = qrw.step(s, math.pi / 4)
        assert out.amplitude(0, 1) == pytest.approx(S2, abs=1e-15)
        assert out.amplitude(1, 3) == pytest.approx(-S2, abs=1e-15)
        assert np.count_nonzero(np.abs(out.amplitudes) > 1e-15) == 2

    def test_first_revival_at_16(self):
        s = qrw.make_initial_state(10, CoinSpec.symmetric(), 6)
        probe = []
        for _ in range(18):
            s = qrw.step(s, qrw.HADAMARD)
            probe.append(qrw.position_distribution(s).probs[6])
        # even-step grid: P(6, 14) < P(6, 16) > P(6, 18)
        assert probe[15] > probe[13] and probe[15] > probe[17]

    def test_step_does_not_mutate_input(self):
        s = qrw.make_initial_state(6, CoinSpec(), 0)
        before = s.amplitudes.copy()
        qrw.step(s, 0.3)
        assert np.array_equal(s.amplitudes, before)


class TestEvolve:
    def test_zero_steps(self):
        s = qrw.make_initial_state(7, CoinSpec.symmetric(math.pi / 5, "-"), 3)
        out = qrw.evolve(s, math.pi / 5, 0)
        assert np.array_equal(out.amplitudes, s.amplitudes) and out.step_count == 0

    @pytest.mark.parametrize("a,b", [(0, 5), (3, 4), (17, 29)])
    def test_composition(self, a, b):
        s = qrw.make_initial_state(9, CoinSpec.bloch(0.7, 1.0, 0.3), 4)
        one = qrw.evolve(s, 0.7, a + b)
        two = qrw.evolve(qrw.evolve(s, 0.7, a), 0.7, b)
        assert np.max(np.abs(one.amplitudes - two.amplitudes)) < 1e-10
        assert one.step_count == two.step_count == a + b

    def test_matches_repeated_step(self):
        s = qrw.make_initial_state(8, CoinSpec(), 1)
        t = s
        for _ in range(13):
            t = qrw.step(t, qrw.HADAMARD)
        assert np.array_equal(qrw.evolve(s, qrw.HADAMARD, 13).amplitudes, t.amplitudes)

    def test_negative_steps(self):
        with pytest.raises(DomainError):
            qrw.evolve(qrw.make_initial_state(5, CoinSpec(), 0), 0.5, -1)

    def test_iter_distributions_agrees_with_evolve(self):
        s = qrw.make_initial_state(11, CoinSpec.symmetric(math.pi / 3), 5)
        dists = list(qrw.iter_distributions(s, math.pi / 3, 25))
        ref = qrw.position_distribution(qrw.evolve(s, math.pi / 3, 25)).probs
        assert np.allclose(dists[-1], ref, atol=1e-15)


class TestPositionDistribution:
    def test_initial_delta(self):
        p = qrw.position_distribution(qrw.make_initial_state(10, CoinSpec(), 3)).probs
        assert np.allclose(p, np.eye(10)[3], atol=1e-15)

    def test_after_one_hadamard_step(self):
        s = qrw.step(qrw.make_initial_state(10, CoinSpec.bloch(math.pi / 4, 0.0), 0), math.pi / 4)
        p = qrw.position_distribution(s).probs
        expected = np.zeros(10)
        expected[[1, 9]] = 0.5
        assert np.allclose(p, expected, atol=1e-15)


class TestInvariants:
    def test_unitarity_long_run(self):
        for theta in (math.pi / 12, math.pi / 4):
            s = qrw.evolve(qrw.make_initial_state(10, CoinSpec(theta=theta), 6), theta, 100_000)
            assert abs(s.norm_squared() - 1) < 1e-9

    @pytest.mark.parametrize("n_sites", [4, 10, 16])
    def test_parity_confinement(self, n_sites):
        x0 = 1
        sites = np.arange(n_sites)
        for n, p in enumerate(qrw.iter_distributions(qrw.make_initial_state(n_sites, CoinSpec(), x0), 0.6, 60), 1):
            wrong = (sites - x0 - n) % 2 == 1
            assert np.all(p[wrong] == 0)

    def test_reversibility(self):
        theta = 0.9
        s0 = qrw.make_initial_state(13, CoinSpec.bloch(theta, 2.0, 1.0), 5)
        s = qrw.evolve(s0, theta, 1000)
        for _ in range(1000):
            s = qrw.inverse_step(s, theta)
        assert np.max(np.abs(s.amplitudes - s0.amplitudes)) < 1e-8
        assert s.step_count == 0

    @pytest.mark.parametrize("k", [1, 3, 9])
    def test_translation_covariance_is_exact(self, k):
        coin = CoinSpec.symmetric(math.pi / 5)
        a = qrw.iter_distributions(qrw.make_initial_state(12, coin, 2), coin.theta, 80)
        b = qrw.iter_distributions(qrw.make_initial_state(12, coin, (2 + k) % 12), coin.theta, 80)
        for pa, pb in zip(a, b):
            assert np.array_equal(np.roll(pa, k), pb)

    def test_bipartite_query(self):
        assert qrw.is_bipartite(10) and not qrw.is_bipartite(11)
