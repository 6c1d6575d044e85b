"""Delay-optimal edge host deployment for cache-enabled cooperative networks."""

from .errors import (
    DegenerateAdjustment,
    EdgeDeployError,
    InfeasibleAdjustment,
    InfeasibleDensity,
    InvalidDensity,
    InvalidParameters,
    InvalidPosition,
    InvalidPower,
    LibraryTooSmall,
)
from .model import (
    DeploymentPlan,
    LinkRates,
    NdtBreakdown,
    SystemParams,
    aundt,
    aundt_lower_bound,
    coop_link_count,
    cooperation_loss,
    cooperation_loss_exact,
    link_rates,
    user_ndt,
)
from .optimizer import (
    AdjustmentSolution,
    DensitySolution,
    adjust_backhaul_rate,
    adjust_cache_capacity,
    optimal_density,
    plan_adjustment,
    relaxed_optimum,
    verify_adjustment,
)

__version__ = "0.1.0"
