import numpy as np
import pytest

from cyclewalk import crw, oracle
from cyclewalk.errors import DomainError


def test_step_from_delta():
    out = crw.crw_step(crw.delta(10, 0))
    expected = np.zeros(10)
    expected[[1, 9]] = 0.5
    assert np.array_equal(out.probs, expected)
    assert out.step_count == 1


def test_uniform_is_stationary():
    u = crw.uniform(7)
    assert np.allclose(crw.crw_evolve(u, 11).probs, u.probs, atol=1e-16)


def test_four_steps_on_five_cycle():
    out = crw.crw_evolve(crw.delta(5, 0), 4)
    assert np.allclose(out.probs, np.array([6, 1, 4, 4, 1]) / 16, atol=1e-16)


def test_zero_steps_identity():
    p = crw.delta(6, 2)
    assert np.array_equal(crw.crw_evolve(p, 0).probs, p.probs)


def test_even_cycle_limit_is_parity_confined():
    n = 10
    out = crw.crw_evolve(crw.delta(n, 0), 4000).probs
    assert np.allclose(out[0::2], 2 / n, atol=1e-12)
    assert np.all(out[1::2] == 0)


def test_odd_cycle_limit_is_uniform():
    n = 9
    # spectral gap 1 - cos(pi/9) ~ 0.06, so ~300 steps per decade
    out = crw.crw_evolve(crw.delta(n, 4), 20 * n * n).probs
    assert np.max(np.abs(out - 1 / n)) < 1e-6


def test_probability_conservation_million_steps():
    out = crw.crw_evolve(crw.delta(13, 3), 1_000_000)
    assert abs(out.probs.sum() - 1) < 1e-12


def test_parity_alternates_on_even_cycle():
    p = crw.delta(8, 0)
    for n in range(1, 40):
        p = crw.crw_step(p)
        assert np.all(p.probs[(np.arange(8) + n) % 2 == 1] == 0)
        assert np.all(p.probs[(np.arange(8) + n) % 2 == 0] > 0) or n < 4


@pytest.mark.parametrize("k", [1, 4])
def test_commutes_with_shift_and_reflection(k):
    rng = np.random.default_rng(7)
    v = rng.random(11)
    p = crw.ProbabilityVector(v / v.sum())
    out = crw.crw_evolve(p, 23).probs
    shifted = crw.crw_evolve(crw.ProbabilityVector(np.roll(p.probs, k)), 23).probs
    assert np.allclose(np.roll(out, k), shifted, atol=1e-15)
    reflected = crw.crw_evolve(crw.ProbabilityVector(p.probs[::-1].copy()), 23).probs
    assert np.allclose(out[::-1], reflected, atol=1e-15)


@pytest.mark.parametrize("n_sites", [4, 5, 10])
def test_matches_wrapped_binomial(n_sites):
    p = crw.delta(n_sites, 1)
    for n in range(31):
        assert np.max(np.abs(p.probs - oracle.wrapped_binomial(n_sites, 1, n))) < 1e-12
        p = crw.crw_step(p)


def test_invalid_vector():
    with pytest.raises(DomainError):
        crw.ProbabilityVector([0.5, 0.5, 0.5])
    with pytest.raises(DomainError):
        crw.delta(5, 5)
