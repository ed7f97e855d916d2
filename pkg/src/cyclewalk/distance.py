"""l1 distance between entropy time series, and its sweep over cycle sizes."""

from __future__ import annotations

from dataclasses import dataclass
from functools import partial
from typing import Optional, Sequence, Union

import numpy as np
from numpy.typing import NDArray

from ._parallel import parallel_map
from .analysis import EntropySeries, entropy_series
from .errors import DomainError
from .qrw import CoinSpec, check_cycle_size

__all__ = ["SeriesPair", "l1_distance", "distance_sweep", "default_distance_grid"]

SeriesLike = Union[EntropySeries, Sequence[float], NDArray[np.float64]]


def default_distance_grid() -> NDArray[np.int64]:
    return np.arange(4, 61)


def _values(s: SeriesLike) -> NDArray[np.float64]:
    return np.asarray(getattr(s, "values", s), dtype=np.float64)


@dataclass
class SeriesPair:
    """Two series aligned on the same steps."""

    a: NDArray[np.float64]
    b: NDArray[np.float64]

    def __post_init__(self):
        self.a = _values(self.a)
        self.b = _values(self.b)
        if self.a.shape != self.b.shape or self.a.ndim != 1:
            raise DomainError(f"series lengths differ: {self.a.shape} vs {self.b.shape}")
        if len(self.a) < 1:
            raise DomainError("series must be non-empty")

    @classmethod
    def aligned(cls, a: EntropySeries, b: EntropySeries, length: Optional[int] = None) -> "SeriesPair":
        """Trim two entropy series to their common steps (optionally the first ``length``)."""
        start = max(a.n_start, b.n_start)
        stop = min(a.n_start + len(a), b.n_start + len(b))
        if length is not None:
            stop = min(stop, start + length)
        if stop <= start:
            raise DomainError("series share no steps")
        return cls(
            a.values[start - a.n_start : stop - a.n_start],
            b.values[start - b.n_start : stop - b.n_start],
        )

    @property
    def length(self) -> int:
        return len(self.a)


def l1_distance(a: Union[SeriesPair, SeriesLike], b: Optional[SeriesLike] = None) -> float:
    """Mean absolute difference ``(1/L) * sum |a_i - b_i|``.

    Accepts a :class:`SeriesPair` or two equal-length series.
    """
    pair = a if b is None else SeriesPair(a, b)
    if not isinstance(pair, SeriesPair):
        raise DomainError("pass a SeriesPair or two series")
    return float(np.mean(np.abs(pair.a - pair.b)))


def _distance_point(n_sites, coin, n_steps, x0):
    q = entropy_series("quantum", n_sites, n_steps, coin, x0)
    c = entropy_series("classical", n_sites, n_steps, None, x0)
    return l1_distance(SeriesPair.aligned(q, c))


def distance_sweep(
    n_grid: Optional[Sequence[int]] = None,
    coin: Optional[CoinSpec] = None,
    n_steps: int = 200,
    x0: int = 0,
    jobs: Optional[int] = None,
) -> NDArray[np.float64]:
    """
    Quantum-vs-classical entropy distance for each cycle size.

    Both walks start at site ``x0`` (default 0), the quantum one with a
    symmetric coin unless ``coin`` says otherwise, and both series cover
    steps 1..n_steps. Returns rows ``(N, D)``.
    """
    if n_steps < 1:
        raise DomainError(f"n_steps must be >= 1, got {n_steps}")
    grid = [check_cycle_size(n) for n in (default_distance_grid() if n_grid is None else n_grid)]
    if any(x0 >= n for n in grid):
        raise DomainError(f"start site {x0} is outside some cycle in the grid")
    coin = coin if coin is not None else CoinSpec()
    worker = partial(_distance_point, coin=coin, n_steps=n_steps, x0=x0)
    dists = parallel_map(worker, grid, jobs)
    return np.column_stack([np.array(grid, dtype=np.float64), dists])
