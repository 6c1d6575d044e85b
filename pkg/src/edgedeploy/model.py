"""Closed-form delay model of a cache-enabled, partially connected network.

Every quantity here is a normalized delivery time (NDT): delay divided by
``Z / log P``, the time to push one file over a baseline point-to-point
link. Rates are expressed through their exponents (``C = rate * log P``),
so the logarithm base never matters; natural log is used throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

from .errors import InfeasibleDensity, InvalidParameters, InvalidPosition, InvalidPower

__all__ = [
    "SystemParams",
    "DeploymentPlan",
    "LinkRates",
    "NdtBreakdown",
    "coop_link_count",
    "cooperation_loss",
    "cooperation_loss_exact",
    "link_rates",
    "user_ndt",
    "aundt",
    "aundt_lower_bound",
    "cache_bracket",
]


def _check_reach(coop_reach: int) -> None:
    if isinstance(coop_reach, bool) or not isinstance(coop_reach, int):
        raise InvalidParameters(f"coop_reach must be an integer, got {coop_reach!r}")
    if coop_reach < 1 or coop_reach % 2 == 0:
        raise InvalidParameters(f"coop_reach must be odd and >= 1, got {coop_reach}")


@dataclass(frozen=True)
class SystemParams:
    """Normalized network parameters.

    ``lam`` is the total EH-BS rate exponent (lambda); the EH link to each of
    the M BSs in a cluster gets ``lam / M``.
    """

    mu: float
    gamma: float
    lam: float
    beta: float
    coop_reach: int = 5

    def __post_init__(self):
        for name in ("mu", "gamma", "lam", "beta"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool) or not math.isfinite(value):
                raise InvalidParameters(f"{name} must be a finite number, got {value!r}")
        if not 0.0 <= self.mu <= 1.0:
            raise InvalidParameters(f"mu must lie in [0, 1], got {self.mu}")
        for name in ("gamma", "lam", "beta"):
            if getattr(self, name) <= 0:
                raise InvalidParameters(f"{name} must be positive, got {getattr(self, name)}")
        _check_reach(self.coop_reach)

    def with_(self, **changes) -> "SystemParams":
        return replace(self, **changes)


@dataclass(frozen=True)
class DeploymentPlan:
    cluster_size: int
    feasible: bool

    @classmethod
    def for_params(cls, params: SystemParams, cluster_size: int) -> "DeploymentPlan":
        if cluster_size < 1:
            raise InvalidParameters(f"cluster_size must be >= 1, got {cluster_size}")
        return cls(cluster_size, cluster_size >= params.coop_reach)


@dataclass(frozen=True)
class LinkRates:
    """Link rates in bits per channel use; ``cooperative[j-1]`` is C_WC,j."""

    bs_user: float
    eh_bs: float
    cloud_bs: float
    interference: float
    cooperative: tuple[float, ...]


@dataclass(frozen=True)
class NdtBreakdown:
    backhaul_cached: float
    backhaul_uncached: float
    wireless_coop: float
    wireless_interference: float

    @property
    def total(self) -> float:
        return (
            self.backhaul_cached
            + self.backhaul_uncached
            + self.wireless_coop
            + self.wireless_interference
        )


def _check_cluster(cluster_size: int, coop_reach: int) -> None:
    _check_reach(coop_reach)
    if cluster_size < coop_reach:
        raise InfeasibleDensity(
            f"cluster size {cluster_size} is below the cooperation reach {coop_reach}"
        )


def coop_link_count(j: int, cluster_size: int, coop_reach: int) -> int:
    """Number of cooperative BS-user links at in-cluster position ``j`` (1-based).

    Users within ``(L-1)/2`` of a cluster edge lose the links that would
    cross into the neighbouring cluster.
    """
    _check_reach(coop_reach)
    if cluster_size < coop_reach:
        raise InvalidParameters(
            f"cluster size {cluster_size} is below the cooperation reach {coop_reach}"
        )
    if not 1 <= j <= cluster_size:
        raise InvalidPosition(f"position {j} outside 1..{cluster_size}")
    half = (coop_reach - 1) // 2
    if j <= half:
        return j + half
    if j <= cluster_size - half:
        return coop_reach
    return cluster_size - j + (coop_reach + 1) // 2


@lru_cache(maxsize=None)
def cooperation_loss_exact(coop_reach: int) -> Fraction:
    """G(L) as an exact rational."""
    _check_reach(coop_reach)
    L = coop_reach
    acc = Fraction(0)
    for j in range(1, (L - 1) // 2 + 1):
        acc += Fraction(1, L + 2 * j - 1)
    return 1 - L + 4 * L * acc


def cooperation_loss(coop_reach: int) -> float:
    """Delay penalty G(L) from forbidding cooperation across cluster borders."""
    return float(cooperation_loss_exact(coop_reach))


def link_rates(params: SystemParams, cluster_size: int, power: float) -> LinkRates:
    if not power > 1:
        raise InvalidPower(f"transmit power must exceed 1, got {power}")
    _check_cluster(cluster_size, params.coop_reach)
    log_p = math.log(power)
    L = params.coop_reach
    bs_user = params.beta * log_p
    coop = tuple(
        params.beta * coop_link_count(j, cluster_size, L) / (2 * L) * log_p
        for j in range(1, cluster_size + 1)
    )
    return LinkRates(
        bs_user=bs_user,
        eh_bs=params.lam / cluster_size * log_p,
        cloud_bs=params.gamma * log_p,
        interference=bs_user / 4,
        cooperative=coop,
    )


def user_ndt(params: SystemParams, cluster_size: int, j: int) -> NdtBreakdown:
    """Per-user NDT split into its backhaul and wireless terms."""
    _check_cluster(cluster_size, params.coop_reach)
    psi = coop_link_count(j, cluster_size, params.coop_reach)
    mu, L = params.mu, params.coop_reach
    return NdtBreakdown(
        backhaul_cached=mu * cluster_size * L / params.lam,
        backhaul_uncached=(1 - mu) / params.gamma,
        wireless_coop=2 * mu * L / (params.beta * psi),
        wireless_interference=4 * (1 - mu) / params.beta,
    )


def cache_bracket(params: SystemParams, cluster_size: float, loss: float | None = None) -> float:
    """The factor multiplying mu in the AUNDT; negative when caching helps.

    ``cluster_size`` may be real-valued (relaxed problem).
    """
    if loss is None:
        loss = cooperation_loss(params.coop_reach)
    M = cluster_size
    return (
        M * params.coop_reach / params.lam
        + 2 * loss / (params.beta * M)
        - 1 / params.gamma
        - 2 / params.beta
    )


def _aundt(params: SystemParams, cluster_size, loss: float) -> float:
    if cluster_size < params.coop_reach:
        raise InfeasibleDensity(
            f"cluster size {cluster_size} is below the cooperation reach {params.coop_reach}"
        )
    return params.mu * cache_bracket(params, cluster_size, loss) + 1 / params.gamma + 4 / params.beta


def aundt(params: SystemParams, cluster_size) -> float:
    """Average user NDT of a cluster of ``cluster_size`` BSs.

    Accepts a real ``cluster_size`` so the relaxed objective can be probed.
    """
    return _aundt(params, cluster_size, cooperation_loss(params.coop_reach))


def aundt_lower_bound(params: SystemParams, cluster_size) -> float:
    """AUNDT if cooperation across cluster borders were allowed (G = 0)."""
    return _aundt(params, cluster_size, 0.0)
