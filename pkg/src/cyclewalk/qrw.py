"""
Coined discrete-time quantum walk on an N-cycle.

The walker lives in coin (2) ⊗ position (N). Amplitudes are stored
coin-major as a ``(2, N)`` complex array, so ``amplitudes[0, x]`` is the
coin-0 ("clockwise", shift +1) amplitude at site ``x`` and
``amplitudes[1, x]`` the coin-1 ("anti-clockwise", shift -1) one.

One step applies the coin ``C(θ) = [[cos θ, sin θ], [sin θ, -cos θ]]`` at
every site and then the conditional shift. Steps are O(N) array sweeps; the
2N × 2N unitary is never built.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np
from numpy.typing import NDArray

from .errors import DomainError

__all__ = [
    "HADAMARD",
    "CoinSpec",
    "WalkerState",
    "PositionDistribution",
    "check_cycle_size",
    "is_bipartite",
    "coin_matrix",
    "make_initial_state",
    "step",
    "inverse_step",
    "evolve",
    "position_distribution",
    "iter_distributions",
]

HADAMARD = math.pi / 4

INITIAL_KINDS = ("symmetric+", "symmetric-", "bloch")


def check_cycle_size(n_sites: int) -> int:
    """Validate a cycle size and return it as a plain ``int``."""
    if isinstance(n_sites, bool) or int(n_sites) != n_sites:
        raise DomainError(f"cycle size must be an integer, got {n_sites!r}")
    n_sites = int(n_sites)
    if n_sites < 3:
        raise DomainError(f"cycle size must be >= 3, got {n_sites}")
    return n_sites


def is_bipartite(n_sites: int) -> bool:
    """Even cycles are bipartite: the walker's site parity flips every step."""
    return check_cycle_size(n_sites) % 2 == 0


def _check_theta(theta: float) -> float:
    theta = float(theta)
    if not (0.0 < theta < math.pi / 2):
        raise DomainError(f"coin parameter theta must lie in (0, pi/2), got {theta}")
    return theta


@dataclass(frozen=True)
class CoinSpec:
    """Coin parameter plus initial coin state.

    ``initial`` is one of

    - ``"symmetric+"`` / ``"symmetric-"``: (|0> ± i|1>)/√2
    - ``"bloch"``: cos(Θ/2)|0> + e^{iΦ} sin(Θ/2)|1>, with Θ = ``bloch_theta``
      and Φ = ``bloch_phi``
    """

    theta: float = HADAMARD
    initial: str = "symmetric+"
    bloch_theta: float = 0.0
    bloch_phi: float = 0.0

    def __post_init__(self):
        _check_theta(self.theta)
        if self.initial not in INITIAL_KINDS:
            raise DomainError(
                f"initial coin kind must be one of {INITIAL_KINDS}, got {self.initial!r}"
            )
        if not (math.isfinite(self.bloch_theta) and math.isfinite(self.bloch_phi)):
            raise DomainError("Bloch angles must be finite")

    @classmethod
    def symmetric(cls, theta: float = HADAMARD, sign: str = "+") -> "CoinSpec":
        if sign not in ("+", "-"):
            raise DomainError(f"sign must be '+' or '-', got {sign!r}")
        return cls(theta=theta, initial=f"symmetric{sign}")

    @classmethod
    def bloch(cls, theta: float, bloch_theta: float, bloch_phi: float = 0.0) -> "CoinSpec":
        return cls(theta=theta, initial="bloch", bloch_theta=bloch_theta, bloch_phi=bloch_phi)

    def coin_state(self) -> NDArray[np.complex128]:
        """Unit-norm initial coin vector ``(c0, c1)``."""
        if self.initial == "symmetric+":
            return np.array([1.0, 1.0j]) / math.sqrt(2.0)
        if self.initial == "symmetric-":
            return np.array([1.0, -1.0j]) / math.sqrt(2.0)
        half = self.bloch_theta / 2.0
        return np.array([math.cos(half), np.exp(1j * self.bloch_phi) * math.sin(half)])

    def describe(self) -> dict:
        d = {"theta": self.theta, "initial": self.initial}
        if self.initial == "bloch":
            d.update(bloch_theta=self.bloch_theta, bloch_phi=self.bloch_phi)
        return d


@dataclass
class WalkerState:
    """Joint coin-position state after ``step_count`` steps."""

    amplitudes: NDArray[np.complex128]
    step_count: int = 0

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.ndim != 2 or self.amplitudes.shape[0] != 2:
            raise DomainError(f"amplitudes must have shape (2, N), got {self.amplitudes.shape}")
        check_cycle_size(self.amplitudes.shape[1])

    @property
    def n_sites(self) -> int:
        return self.amplitudes.shape[1]

    def amplitude(self, coin: int, site: int) -> complex:
        return complex(self.amplitudes[coin, site])

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def copy(self) -> "WalkerState":
        return WalkerState(self.amplitudes.copy(), self.step_count)


@dataclass
class PositionDistribution:
    """Site marginal ``P(x, n) = |a_x(n)|^2 + |b_x(n)|^2``."""

    probs: NDArray[np.float64]
    step_count: int = 0

    def __len__(self):
        return len(self.probs)


def coin_matrix(theta: float) -> NDArray[np.float64]:
    """
    Return the real 2×2 coin ``[[cos θ, sin θ], [sin θ, -cos θ]]``.

    The matrix is symmetric, orthogonal and an involution. ``θ = π/4`` is the
    Hadamard coin.

    Raises
    ------
    DomainError
        If ``θ`` is not strictly inside (0, π/2).
    """
    theta = _check_theta(theta)
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, s], [s, -c]])


def make_initial_state(n_sites: int, coin: CoinSpec, x0: int) -> WalkerState:
    """Localized walker at ``x0`` carrying the coin state described by ``coin``."""
    n_sites = check_cycle_size(n_sites)
    if isinstance(x0, bool) or int(x0) != x0 or not (0 <= x0 < n_sites):
        raise DomainError(f"initial site must be in [0, {n_sites}), got {x0!r}")
    amps = np.zeros((2, n_sites), dtype=np.complex128)
    amps[:, int(x0)] = coin.coin_state()
    return WalkerState(amps, 0)


def _apply_step(amps: NDArray, c: float, s: float) -> NDArray:
    up = c * amps[0] + s * amps[1]
    down = s * amps[0] - c * amps[1]
    out = np.empty_like(amps)
    # coin 0 moves x -> x+1, coin 1 moves x -> x-1 (mod N)
    out[0, 1:] = up[:-1]
    out[0, 0] = up[-1]
    out[1, :-1] = down[1:]
    out[1, -1] = down[0]
    return out


def step(state: WalkerState, theta: float) -> WalkerState:
    """Apply one walk step ``S · (C(θ) ⊗ I)`` and return the new state."""
    c, s = coin_matrix(theta)[0]
    return WalkerState(_apply_step(state.amplitudes, c, s), state.step_count + 1)


def inverse_step(state: WalkerState, theta: float) -> WalkerState:
    """Undo :func:`step`: inverse shift, then the (self-inverse) coin."""
    c, s = coin_matrix(theta)[0]
    a = state.amplitudes
    unshifted = np.empty_like(a)
    unshifted[0] = np.roll(a[0], -1)
    unshifted[1] = np.roll(a[1], 1)
    out = np.empty_like(a)
    out[0] = c * unshifted[0] + s * unshifted[1]
    out[1] = s * unshifted[0] - c * unshifted[1]
    return WalkerState(out, state.step_count - 1)


def evolve(state: WalkerState, theta: float, n_steps: int) -> WalkerState:
    """Apply :func:`step` ``n_steps`` times."""
    if n_steps < 0:
        raise DomainError(f"n_steps must be >= 0, got {n_steps}")
    c, s = coin_matrix(theta)[0]
    amps = state.amplitudes.copy()
    for _ in range(n_steps):
        amps = _apply_step(amps, c, s)
    return WalkerState(amps, state.step_count + n_steps)


def _site_probs(a: NDArray) -> NDArray[np.float64]:
    return a[0].real ** 2 + a[0].imag ** 2 + a[1].real ** 2 + a[1].imag ** 2


def position_distribution(state: WalkerState) -> PositionDistribution:
    return PositionDistribution(_site_probs(state.amplitudes), state.step_count)


def iter_distributions(
    state: WalkerState, theta: float, n_steps: int
) -> Iterator[NDArray[np.float64]]:
    """Yield the site distribution after each of the next ``n_steps`` steps.

    Yields fresh arrays; the walker state passed in is not modified.
    """
    c, s = coin_matrix(theta)[0]
    amps = state.amplitudes.copy()
    for _ in range(n_steps):
        amps = _apply_step(amps, c, s)
        yield _site_probs(amps)
