import math

import numpy as np
import pytest

from cyclewalk import oracle, qrw
from cyclewalk.errors import DomainError
from cyclewalk.qrw import CoinSpec

THETAS = [math.pi / 12, math.pi / 6, math.pi / 4, math.pi / 3, 5 * math.pi / 12]


def test_path_sum_n0_is_initial_state():
    coin = CoinSpec.symmetric()
    ref = oracle.path_sum_amplitudes(10, coin, 6, 0)
    assert np.array_equal(ref, qrw.make_initial_state(10, coin, 6).amplitudes)


def test_path_sum_single_hadamard_step():
    coin = CoinSpec.bloch(math.pi / 4, 0.0)  # |0>_c
    ref = oracle.path_sum_amplitudes(10, coin, 6, 1)
    expected = np.zeros((2, 10), complex)
    expected[0, 7] = expected[1, 5] = 1 / math.sqrt(2)
    assert np.allclose(ref, expected, atol=1e-15)


def test_path_sum_matches_engine_n12():
    coin = CoinSpec.symmetric()
    ref = oracle.path_sum_amplitudes(10, coin, 6, 12)
    got = qrw.evolve(qrw.make_initial_state(10, coin, 6), coin.theta, 12).amplitudes
    assert np.max(np.abs(ref - got)) < 1e-10


@pytest.mark.parametrize("n_sites", [4, 5, 10])
@pytest.mark.parametrize("theta", THETAS)
def test_path_sum_matches_engine_grid(n_sites, theta):
    coin = CoinSpec.bloch(theta, 1.1, 0.4)
    state = qrw.make_initial_state(n_sites, coin, 1)
    for n in range(0, 11):
        ref = oracle.path_sum_amplitudes(n_sites, coin, 1, n)
        assert np.max(np.abs(ref - state.amplitudes)) < 1e-10
        state = qrw.step(state, theta)


def test_path_sum_refuses_long_runs():
    with pytest.raises(DomainError):
        oracle.path_sum_amplitudes(5, CoinSpec(), 0, 15)


def test_path_sum_conserves_probability():
    amps = oracle.path_sum_amplitudes(7, CoinSpec.symmetric(math.pi / 3), 2, 13)
    assert abs(np.sum(np.abs(amps) ** 2) - 1) < 1e-12


def test_wrapped_binomial_examples():
    assert np.array_equal(oracle.wrapped_binomial(6, 3, 0), [0, 0, 0, 1, 0, 0])
    # enumerated by hand: displacements -4,-2,0,2,4 with weights 1,4,6,4,1
    assert np.allclose(oracle.wrapped_binomial(5, 0, 4), np.array([6, 1, 4, 4, 1]) / 16, atol=0)
    assert np.array_equal(oracle.wrapped_binomial(4, 0, 2), [0.5, 0, 0.5, 0])


def test_wrapped_binomial_against_sign_sequence_enumeration():
    import itertools

    for n_sites, n in [(5, 7), (4, 9), (10, 11)]:
        counts = np.zeros(n_sites)
        for moves in itertools.product((1, -1), repeat=n):
            counts[(2 + sum(moves)) % n_sites] += 1
        assert np.allclose(oracle.wrapped_binomial(n_sites, 2, n), counts / 2**n, atol=1e-15)


@pytest.mark.parametrize("n", [0, 1, 17, 60])
def test_wrapped_binomial_conserves_probability(n):
    assert abs(oracle.wrapped_binomial(11, 4, n).sum() - 1) < 1e-12
