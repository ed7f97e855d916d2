"""
Saturated entropy versus system size.

The quantum data are fitted to ``H(N) = alpha * log2(1 + beta * N**nu)``
for integer ``nu`` in {1, 2, 3}; the classical walk on an even cycle has the
closed form ``log2(N / 2)`` and is never fitted. For large ``N`` the fitted
law behaves like ``alpha * nu * log2 N``, so classical/quantum tends to
``1 / (alpha * nu)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Optional, Sequence, Union

import numpy as np
from numpy.typing import NDArray

from ._parallel import parallel_map
from .analysis import WALK_KINDS, default_n_max, saturated_entropy, trace_walk
from .errors import DomainError, FitError
from .qrw import CoinSpec, check_cycle_size

__all__ = [
    "ScalingDataset",
    "ScalingFit",
    "default_quantum_grid",
    "scaling_model",
    "sweep_saturated_entropy",
    "fit_scaling",
    "classical_scaling",
    "classical_long_run_entropy",
    "asymptotic_ratio",
]

LN2 = math.log(2.0)
NU_VALUES = (1, 2, 3)


def default_quantum_grid() -> NDArray[np.int64]:
    return np.arange(10, 201, 10)


@dataclass
class ScalingDataset:
    n_sites: NDArray[np.int64]
    entropy: NDArray[np.float64]
    kind: str
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.n_sites = np.asarray(self.n_sites, dtype=np.int64)
        self.entropy = np.asarray(self.entropy, dtype=np.float64)
        if self.n_sites.shape != self.entropy.shape or self.n_sites.ndim != 1:
            raise DomainError("n_sites and entropy must be 1-d arrays of equal length")
        if np.any(np.diff(self.n_sites) <= 0):
            raise DomainError("system sizes must be strictly increasing")
        if np.any(self.entropy < 0) or np.any(self.entropy > np.log2(self.n_sites) + 1e-12):
            raise DomainError("entropies must lie in [0, log2 N]")

    def __len__(self):
        return len(self.n_sites)


@dataclass
class ScalingFit:
    nu: int
    alpha: float
    beta: float
    residual: float
    n_iter: int = 0
    residual_trace: tuple = field(default=(), repr=False)

    def predict(self, n_sites) -> NDArray[np.float64]:
        return scaling_model(np.asarray(n_sites, dtype=np.float64), self.alpha, self.beta, self.nu)

    def as_dict(self) -> dict:
        return {"nu": self.nu, "alpha": self.alpha, "beta": self.beta, "residual": self.residual}


def scaling_model(n_sites, alpha: float, beta: float, nu: int):
    return alpha * np.log2(1.0 + beta * np.asarray(n_sites, dtype=np.float64) ** nu)


def _saturated_point(n_sites, kind, coin, n_max_rule, window_fraction, x0_rule):
    n_max = n_max_rule(n_sites)
    x0 = None if x0_rule is None else x0_rule(n_sites)
    series = trace_walk(kind, n_sites, n_max, coin, x0).entropy
    return saturated_entropy(series, window_fraction)


def sweep_saturated_entropy(
    kind: str,
    n_grid: Sequence[int],
    coin: Optional[CoinSpec] = None,
    n_max: Union[None, int, Callable[[int], int]] = None,
    window_fraction: float = 0.5,
    x0: Optional[Callable[[int], int]] = None,
    jobs: Optional[int] = None,
) -> ScalingDataset:
    """
    Saturated entropy for each system size in ``n_grid``.

    ``n_max`` is a fixed step count, a function of ``N``, or ``None`` for
    :func:`~cyclewalk.analysis.default_n_max`. ``x0`` likewise maps ``N`` to
    a start site (default ``N // 2``). Points are computed in parallel.
    """
    if kind not in WALK_KINDS:
        raise DomainError(f"walk kind must be one of {WALK_KINDS}, got {kind!r}")
    grid = [check_cycle_size(n) for n in n_grid]
    if not grid:
        raise DomainError("system-size grid is empty")
    if kind == "quantum" and coin is None:
        coin = CoinSpec()
    if n_max is None:
        rule = partial(default_n_max, kind)
    elif callable(n_max):
        rule = n_max
    else:
        rule = partial(_const, int(n_max))

    worker = partial(
        _saturated_point,
        kind=kind,
        coin=coin,
        n_max_rule=rule,
        window_fraction=window_fraction,
        x0_rule=x0,
    )
    values = parallel_map(worker, grid, jobs)
    meta = {"window_fraction": window_fraction, "n_max": [rule(n) for n in grid]}
    if coin is not None and kind == "quantum":
        meta["coin"] = coin.describe()
    return ScalingDataset(np.array(grid), np.array(values), kind, meta)


def _const(value, _n):
    return value


def _residuals(n_pow, h, alpha, beta):
    return h - alpha * np.log2(1.0 + beta * n_pow)


def _jacobian(n_pow, alpha, beta):
    """d model / d(alpha, beta)."""
    denom = 1.0 + beta * n_pow
    return np.column_stack([np.log2(denom), alpha * n_pow / (denom * LN2)])


def _levenberg_marquardt(n_pow, h, p0, max_iter, xtol):
    p = np.array(p0, dtype=np.float64)
    r = _residuals(n_pow, h, *p)
    cost = float(r @ r)
    trace = [cost]
    lam = 1e-3
    for it in range(1, max_iter + 1):
        jac = _jacobian(n_pow, *p)
        a = jac.T @ jac
        g = jac.T @ r
        scale = np.diag(np.maximum(np.diag(a), 1e-300))
        while True:
            try:
                delta = np.linalg.solve(a + lam * scale, g)
            except np.linalg.LinAlgError:
                delta = None
            if delta is not None and np.all(np.isfinite(delta)):
                trial = p + delta
                if np.all(trial > 0):
                    r_new = _residuals(n_pow, h, *trial)
                    cost_new = float(r_new @ r_new)
                    if np.isfinite(cost_new) and cost_new <= cost:
                        break
            lam *= 10.0
            if lam > 1e20:
                # no descent step left at working precision
                return p, cost, trace, it, True
        p, r, cost = trial, r_new, cost_new
        trace.append(cost)
        lam = max(lam / 10.0, 1e-12)
        if np.all(np.abs(delta) <= xtol * (np.abs(p) + xtol)):
            return p, cost, trace, it, True
    return p, cost, trace, max_iter, False


def fit_scaling(
    data: ScalingDataset,
    nu: int,
    max_iter: int = 500,
    xtol: float = 1e-10,
    starts: Optional[Sequence[tuple[float, float]]] = None,
) -> ScalingFit:
    """
    Least-squares fit of ``alpha * log2(1 + beta * N**nu)`` with alpha, beta > 0.

    Damped Gauss-Newton (Levenberg-Marquardt) with the analytic Jacobian,
    restarted from a 5 x 5 log-spaced grid of initial ``(alpha, beta)``.
    Steps are accepted only if they do not raise the residual.

    Raises
    ------
    DomainError
        Fewer than 3 points, or ``nu`` not in {1, 2, 3}.
    FitError
        No start converged within ``max_iter`` iterations, or the optimum
        ran off to the ``beta -> 0`` / ``beta -> inf`` boundary. ``best``
        carries the lowest-residual iterate.
    """
    if nu not in NU_VALUES:
        raise DomainError(f"nu must be one of {NU_VALUES}, got {nu}")
    if len(data) < 3:
        raise DomainError("fitting needs at least 3 data points")
    n_pow = data.n_sites.astype(np.float64) ** nu
    h = data.entropy
    if starts is None:
        # beta * N**nu spans 1e-2..1e2 at the median size
        n_mid = float(np.median(n_pow))
        starts = [
            (a, b / n_mid) for a in np.logspace(-1, 1, 5) for b in np.logspace(-2, 2, 5)
        ]

    best = None
    best_converged = None
    for a0, b0 in starts:
        p, cost, trace, n_iter, ok = _levenberg_marquardt(n_pow, h, (a0, b0), max_iter, xtol)
        cand = ScalingFit(nu, float(p[0]), float(p[1]), cost, n_iter, tuple(trace))
        if best is None or cost < best.residual:
            best = cand
        if ok and (best_converged is None or cost < best_converged.residual):
            best_converged = cand

    if best_converged is None:
        raise FitError(f"no start converged within {max_iter} iterations", best)
    beta_scaled = best_converged.beta * float(np.max(n_pow))
    if beta_scaled < 1e-8 or beta_scaled > 1e12:
        raise FitError(
            f"degenerate fit: beta={best_converged.beta:g} at the boundary of its domain",
            best_converged,
        )
    return best_converged


def classical_scaling(n_sites: int) -> float:
    """Long-run classical entropy ``log2(N / 2)`` on an even cycle."""
    n_sites = check_cycle_size(n_sites)
    if n_sites % 2:
        raise DomainError(
            f"log2(N/2) holds for even N only, got {n_sites}; "
            "see classical_long_run_entropy for odd cycles"
        )
    return math.log2(n_sites / 2)


def classical_long_run_entropy(n_sites: int) -> float:
    """``log2(N/2)`` on even cycles (parity-confined support), ``log2 N`` on odd ones."""
    n_sites = check_cycle_size(n_sites)
    return math.log2(n_sites / 2) if n_sites % 2 == 0 else math.log2(n_sites)


def asymptotic_ratio(fit: ScalingFit) -> float:
    """Large-N limit of classical over quantum entropy, ``1 / (alpha * nu)``."""
    return 1.0 / (fit.alpha * fit.nu)
