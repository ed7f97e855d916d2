"""Discrete-time quantum and classical random walks on cycles, with entropy diagnostics."""

from .analysis import (
    EntropySeries,
    MeetingPointList,
    detect_meeting_points,
    entropy_series,
    meeting_averaged_entropy,
    saturated_entropy,
    shannon_entropy,
    time_averaged_distribution,
    trace_walk,
)
from .crw import ProbabilityVector, crw_evolve, crw_step
from .distance import SeriesPair, distance_sweep, l1_distance
from .errors import ComputationError, DomainError, FitError
from .qrw import (
    HADAMARD,
    CoinSpec,
    PositionDistribution,
    WalkerState,
    coin_matrix,
    evolve,
    make_initial_state,
    position_distribution,
    step,
)
from .scaling import (
    ScalingDataset,
    ScalingFit,
    asymptotic_ratio,
    classical_scaling,
    fit_scaling,
    sweep_saturated_entropy,
)

__version__ = "0.1.0"
