"""Unbiased classical random walk on an N-cycle, evolved as an exact probability vector.

The transition matrix has 1/2 on the two cyclic off-diagonals. It is applied
as a two-neighbour stencil, ``out[i] = (p[i-1] + p[i+1]) / 2``, and never
stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np
from numpy.typing import NDArray

from .errors import DomainError
from .qrw import check_cycle_size

__all__ = [
    "ProbabilityVector",
    "delta",
    "uniform",
    "crw_step",
    "crw_evolve",
    "iter_probabilities",
]


@dataclass
class ProbabilityVector:
    probs: NDArray[np.float64]
    step_count: int = 0

    def __post_init__(self):
        self.probs = np.asarray(self.probs, dtype=np.float64)
        if self.probs.ndim != 1:
            raise DomainError("probability vector must be one-dimensional")
        check_cycle_size(len(self.probs))
        if np.any(self.probs < 0) or abs(self.probs.sum() - 1.0) > 1e-12:
            raise DomainError("probability vector must be nonnegative and sum to 1")

    @property
    def n_sites(self) -> int:
        return len(self.probs)

    def __len__(self):
        return len(self.probs)


def delta(n_sites: int, x0: int) -> ProbabilityVector:
    n_sites = check_cycle_size(n_sites)
    if not (0 <= x0 < n_sites):
        raise DomainError(f"initial site must be in [0, {n_sites}), got {x0}")
    p = np.zeros(n_sites)
    p[x0] = 1.0
    return ProbabilityVector(p)


def uniform(n_sites: int) -> ProbabilityVector:
    n_sites = check_cycle_size(n_sites)
    return ProbabilityVector(np.full(n_sites, 1.0 / n_sites))


def _stencil(p: NDArray, out: NDArray) -> NDArray:
    out[1:-1] = p[:-2]
    out[1:-1] += p[2:]
    out[0] = p[-1] + p[1]
    out[-1] = p[-2] + p[0]
    out *= 0.5
    return out


def crw_step(p: ProbabilityVector) -> ProbabilityVector:
    out = _stencil(p.probs, np.empty_like(p.probs))
    return ProbabilityVector(out, p.step_count + 1)


def crw_evolve(p: ProbabilityVector, n_steps: int) -> ProbabilityVector:
    if n_steps < 0:
        raise DomainError(f"n_steps must be >= 0, got {n_steps}")
    cur = p.probs.copy()
    buf = np.empty_like(cur)
    for _ in range(n_steps):
        cur, buf = _stencil(cur, buf), cur
    return ProbabilityVector(cur, p.step_count + n_steps)


def iter_probabilities(p: ProbabilityVector, n_steps: int) -> Iterator[NDArray[np.float64]]:
    """Yield the vector after each of the next ``n_steps`` steps.

    The yielded array is a reused buffer; copy it if it must outlive the
    next iteration.
    """
    cur = p.probs.copy()
    buf = np.empty_like(cur)
    for _ in range(n_steps):
        cur, buf = _stencil(cur, buf), cur
        yield cur
