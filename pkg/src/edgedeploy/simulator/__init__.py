"""Monte Carlo validation of the closed-form AUNDT."""

from .core import (
    CacheModel,
    CachePlacement,
    DelaySample,
    SimConfig,
    SimResult,
    TrialOutcome,
    draw_requests,
    place_cache,
    run_trials,
    simulate_ndt_matrix,
    simulate_trial,
    split_request,
    user_delay,
)
from .kernels import available as available_kernels
from .rng import TrialStream

__all__ = [
    "CacheModel",
    "CachePlacement",
    "DelaySample",
    "SimConfig",
    "SimResult",
    "TrialOutcome",
    "TrialStream",
    "available_kernels",
    "draw_requests",
    "place_cache",
    "run_trials",
    "simulate_ndt_matrix",
    "simulate_trial",
    "split_request",
    "user_delay",
]
