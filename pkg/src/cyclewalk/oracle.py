"""
Brute-force references for small instances.

Deliberately naive and independent of the array engines: the quantum
oracle sums over every coin-index sequence, the classical one counts
binomial paths with exact integers.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .qrw import CoinSpec, check_cycle_size

MAX_PATH_STEPS = 14
MAX_BINOMIAL_STEPS = 60


def path_sum_amplitudes(n_sites: int, coin: CoinSpec, x0: int, n: int) -> np.ndarray:
    """
    Amplitude table ``(2, N)`` after ``n`` steps by explicit path summation.

    A path is the sequence of coin indices ``c_0, c_1, ..., c_n``: ``c_0``
    picks a component of the initial coin state and step ``k`` contributes
    the coin matrix element ``C[c_k, c_{k-1}]`` followed by a move of +1
    (``c_k = 0``) or -1 (``c_k = 1``). Coin first, then shift, every step.

    Raises
    ------
    DomainError
        If ``n`` exceeds 14 (2^n paths).
    """
    n_sites = check_cycle_size(n_sites)
    if n < 0 or n > MAX_PATH_STEPS:
        raise DomainError(f"path-sum oracle limited to 0 <= n <= {MAX_PATH_STEPS}, got {n}")
    if not (0 <= x0 < n_sites):
        raise DomainError(f"initial site must be in [0, {n_sites}), got {x0}")

    cos_t, sin_t = math.cos(coin.theta), math.sin(coin.theta)
    elem = {(0, 0): cos_t, (0, 1): sin_t, (1, 0): sin_t, (1, 1): -cos_t}
    init = [complex(v) for v in coin.coin_state()]

    table = [[0j] * n_sites for _ in range(2)]
    for c0 in (0, 1):
        if init[c0] == 0:
            continue
        for path in itertools.product((0, 1), repeat=n):
            amp = init[c0]
            prev = c0
            disp = 0
            for c in path:
                amp *= elem[(c, prev)]
                disp += 1 if c == 0 else -1
                prev = c
            table[prev][(x0 + disp) % n_sites] += amp
    return np.array(table, dtype=np.complex128)


def wrapped_binomial(n_sites: int, x0: int, n: int) -> np.ndarray:
    """Classical distribution after ``n`` steps from ``x0``.

    ``P(x) = 2^-n * sum C(n, k)`` over left-move counts ``k`` with
    ``(x0 + n - 2k) mod N == x``, accumulated in exact rationals.
    """
    n_sites = check_cycle_size(n_sites)
    if n < 0 or n > MAX_BINOMIAL_STEPS:
        raise DomainError(f"wrapped binomial limited to 0 <= n <= {MAX_BINOMIAL_STEPS}, got {n}")
    counts = [0] * n_sites
    for k in range(n + 1):
        counts[(x0 + n - 2 * k) % n_sites] += math.comb(n, k)
    return np.array([float(Fraction(c, 2**n)) for c in counts])
