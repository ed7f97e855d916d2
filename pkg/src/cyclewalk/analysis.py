"""
Entropy diagnostics for quantum and classical walks on a cycle.

Everything here works on exact distributions (no sampling). Entropies are
in bits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np
from numpy.typing import NDArray
from scipy.signal import peak_prominences

from . import crw, qrw
from .errors import DomainError
from .qrw import CoinSpec, check_cycle_size, is_bipartite

__all__ = [
    "WALK_KINDS",
    "ZERO_CUTOFF",
    "EntropySeries",
    "MeetingPointList",
    "WalkTrace",
    "shannon_entropy",
    "default_n_max",
    "trace_walk",
    "entropy_series",
    "detect_meeting_points",
    "meeting_averaged_entropy",
    "meeting_entropy_plateau",
    "saturated_entropy",
    "fluctuation",
    "time_averaged_distribution",
]

WALK_KINDS = ("quantum", "classical")

# probabilities below this are rounding dust and count as exact zeros
ZERO_CUTOFF = 1e-15

Distribution = Union[NDArray[np.float64], crw.ProbabilityVector, qrw.PositionDistribution]


def shannon_entropy(p: Distribution) -> float:
    """Shannon entropy in bits, with ``0 log 0 = 0``."""
    probs = getattr(p, "probs", p)
    probs = np.asarray(probs, dtype=np.float64)
    nz = probs[probs > ZERO_CUTOFF]
    return _clip(-np.dot(nz, np.log2(nz)), len(probs))


def _clip(h: float, n: int) -> float:
    # keep ulp-level rounding inside [0, log2 n]
    return float(min(max(h, 0.0), np.log2(n)))


@dataclass
class EntropySeries:
    """Per-step entropies; ``values[i]`` belongs to step ``n_start + i``."""

    values: NDArray[np.float64]
    n_sites: int
    kind: str
    coin: Optional[CoinSpec] = None
    x0: int = 0
    n_start: int = 1

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)

    def __len__(self):
        return len(self.values)

    @property
    def steps(self) -> NDArray[np.int64]:
        return np.arange(self.n_start, self.n_start + len(self.values))

    def at(self, n: int) -> float:
        return float(self.values[n - self.n_start])

    def metadata(self) -> dict:
        meta = {"kind": self.kind, "n_sites": self.n_sites, "x0": self.x0, "n_start": self.n_start}
        if self.coin is not None:
            meta["coin"] = self.coin.describe()
        return meta


@dataclass
class MeetingPointList:
    steps: NDArray[np.int64]
    probe_site: int

    def __len__(self):
        return len(self.steps)


@dataclass
class WalkTrace:
    """Everything one pass over a trajectory produces."""

    entropy: EntropySeries
    probe: NDArray[np.float64]
    time_average: Optional[NDArray[np.float64]] = field(default=None, repr=False)


def _check_kind(kind: str) -> str:
    if kind not in WALK_KINDS:
        raise DomainError(f"walk kind must be one of {WALK_KINDS}, got {kind!r}")
    return kind


def default_n_max(kind: str, n_sites: int) -> int:
    """Run length long enough for saturation: ~20 N for quantum, ~20 N^2 for classical."""
    _check_kind(kind)
    n_sites = check_cycle_size(n_sites)
    if kind == "quantum":
        return max(200, 20 * n_sites)
    return max(200, 20 * n_sites * n_sites)


def _distributions(kind, n_sites, n_max, coin, x0):
    if kind == "quantum":
        coin = coin if coin is not None else CoinSpec()
        state = qrw.make_initial_state(n_sites, coin, x0)
        return qrw.iter_distributions(state, coin.theta, n_max)
    return crw.iter_probabilities(crw.delta(n_sites, x0), n_max)


def trace_walk(
    kind: str,
    n_sites: int,
    n_max: int,
    coin: Optional[CoinSpec] = None,
    x0: Optional[int] = None,
    time_average: bool = False,
) -> WalkTrace:
    """Run a walk for steps 1..n_max, collecting entropies and ``P(x0, n)``.

    ``coin`` is ignored for classical walks. ``x0`` defaults to ``N // 2``.
    """
    _check_kind(kind)
    n_sites = check_cycle_size(n_sites)
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")
    if x0 is None:
        x0 = n_sites // 2
    if kind == "quantum" and coin is None:
        coin = CoinSpec()

    h_max = np.log2(n_sites)
    entropies = np.empty(n_max)
    probe = np.empty(n_max)
    acc = np.zeros(n_sites) if time_average else None
    for i, p in enumerate(_distributions(kind, n_sites, n_max, coin, x0)):
        nz = p[p > ZERO_CUTOFF]
        entropies[i] = min(max(-np.dot(nz, np.log2(nz)), 0.0), h_max)
        probe[i] = p[x0]
        if acc is not None:
            acc += p

    series = EntropySeries(
        entropies, n_sites, kind, coin if kind == "quantum" else None, x0, n_start=1
    )
    return WalkTrace(series, probe, None if acc is None else acc / n_max)


def entropy_series(
    kind: str,
    n_sites: int,
    n_max: int,
    coin: Optional[CoinSpec] = None,
    x0: Optional[int] = None,
) -> EntropySeries:
    return trace_walk(kind, n_sites, n_max, coin, x0).entropy


def detect_meeting_points(
    probe,
    n_sites: int,
    x0: int,
    n_start: int = 1,
    rel_prominence: float = 0.5,
) -> MeetingPointList:
    """
    Find meeting points: steps where the return probability ``P(x0, n)`` peaks.

    On an even cycle only even ``n`` can return to ``x0``, so the search runs
    on that sub-grid; odd cycles use every step. A grid point qualifies when
    it is

    - a strict local maximum of the grid series,
    - above the median of the grid series up to and including itself, and
    - topographically prominent by at least ``rel_prominence`` times the
      range (max - min) of the grid series.

    The last rule separates the large revivals from the small ripples that
    sit between them.

    Parameters
    ----------
    probe : array_like
        ``P(x0, n)`` for ``n = n_start, n_start + 1, ...``.
    n_sites, x0 : int
        Cycle size and the probed (starting) site.
    n_start : int
        Step index of ``probe[0]``.
    rel_prominence : float
        Required prominence as a fraction of the series range.

    Raises
    ------
    DomainError
        If fewer than 3 grid points remain after parity filtering.
    """
    n_sites = check_cycle_size(n_sites)
    probe = np.asarray(probe, dtype=np.float64)
    steps = np.arange(n_start, n_start + len(probe))
    if is_bipartite(n_sites):
        keep = steps % 2 == 0
        probe, steps = probe[keep], steps[keep]
    if len(probe) < 3:
        raise DomainError("meeting-point detection needs at least 3 grid points")

    inner = np.arange(1, len(probe) - 1)
    is_max = (probe[inner] > probe[inner - 1]) & (probe[inner] > probe[inner + 1])
    cand = inner[is_max]
    if len(cand) == 0:
        return MeetingPointList(np.array([], dtype=np.int64), x0)

    above_median = np.array([probe[i] > np.median(probe[: i + 1]) for i in cand])
    prom = peak_prominences(probe, cand)[0]
    span = probe.max() - probe.min()
    prominent = prom >= rel_prominence * span
    chosen = cand[above_median & prominent]
    return MeetingPointList(steps[chosen].astype(np.int64), x0)


def meeting_averaged_entropy(
    series: EntropySeries, meetings: MeetingPointList
) -> NDArray[np.float64]:
    """
    Average the entropy over each stretch between consecutive meeting points.

    Row ``k`` is ``(n_meet_k, H_meet_k)`` where ``H_meet_k`` is the mean
    entropy over steps ``n_meet_{k-1} + 1 .. n_meet_k``; the first stretch
    starts at step 1.
    """
    m = np.asarray(meetings.steps)
    if len(m) == 0:
        raise DomainError("no meeting points to average over")
    if m[-1] > series.steps[-1]:
        raise DomainError(f"series ends at step {series.steps[-1]}, before meeting point {m[-1]}")
    if series.n_start > 1:
        raise DomainError("series must start at step 1 or earlier")
    out = np.empty((len(m), 2))
    prev = 0
    for k, n_meet in enumerate(m):
        if n_meet <= prev:
            raise DomainError(f"empty interval ending at meeting point {n_meet}")
        lo, hi = prev + 1 - series.n_start, n_meet + 1 - series.n_start
        out[k] = n_meet, series.values[lo:hi].mean()
        prev = n_meet
    return out


def meeting_entropy_plateau(h_meet, tol: float = 0.05) -> tuple[float, bool]:
    """Late-time level of a meeting-averaged entropy sequence.

    Returns the mean of the later half of ``h_meet`` and whether the running
    mean over that half has settled (its last three values within ``tol``).
    """
    h = np.asarray(h_meet, dtype=np.float64)
    if h.ndim == 2:
        h = h[:, 1]
    if len(h) < 2:
        raise DomainError("need at least two meeting points")
    late = h[len(h) // 2 :]
    running = np.cumsum(late) / np.arange(1, len(late) + 1)
    tail = running[-3:]
    settled = len(running) >= 3 and float(tail.max() - tail.min()) <= tol
    return float(late.mean()), settled


def _window(series: EntropySeries, window_fraction: float, min_points: int) -> NDArray:
    if not (0.0 < window_fraction <= 1.0):
        raise DomainError(f"window_fraction must be in (0, 1], got {window_fraction}")
    k = len(series.values)
    start = int(np.floor(k * (1.0 - window_fraction)))
    win = series.values[start:]
    if len(win) < min_points:
        raise DomainError(f"saturation window has {len(win)} points, need at least {min_points}")
    return win


def saturated_entropy(
    series: EntropySeries, window_fraction: float = 0.5, min_points: int = 50
) -> float:
    """Mean entropy over the final ``window_fraction`` of the series."""
    return float(_window(series, window_fraction, min_points).mean())


def fluctuation(series: EntropySeries, window_fraction: float = 0.5, min_points: int = 50) -> float:
    """Peak-to-peak entropy spread over the final ``window_fraction`` of the series."""
    return float(np.ptp(_window(series, window_fraction, min_points)))


def time_averaged_distribution(
    kind: str,
    n_sites: int,
    n_max: int,
    coin: Optional[CoinSpec] = None,
    x0: Optional[int] = None,
) -> crw.ProbabilityVector:
    """``(1/n_max) * sum_{n=1}^{n_max} P(., n)``."""
    avg = trace_walk(kind, n_sites, n_max, coin, x0, time_average=True).time_average
    avg /= avg.sum()  # strip accumulated rounding so the vector validates
    return crw.ProbabilityVector(avg, n_max)
