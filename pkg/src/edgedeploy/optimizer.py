"""Delay-optimal cluster size and parameter compensation for smaller clusters."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import DegenerateAdjustment, InfeasibleAdjustment, InvalidDensity
from .model import SystemParams, aundt, cache_bracket, cooperation_loss

__all__ = [
    "DensitySolution",
    "AdjustmentSolution",
    "relaxed_optimum",
    "optimal_density",
    "adjust_backhaul_rate",
    "adjust_cache_capacity",
    "verify_adjustment",
    "plan_adjustment",
]


@dataclass(frozen=True)
class DensitySolution:
    """Optimal BSs-per-EH.

    ``rounded`` is the nearest-integer rounding of the relaxed optimum,
    ``exact`` the true integer argmin (the two can differ by one).
    """

    relaxed: float
    rounded: int
    exact: int
    degenerate: bool


@dataclass(frozen=True)
class AdjustmentSolution:
    target_density: int
    optimal_density: int
    adjusted_lambda: Optional[float]
    adjusted_mu: Optional[float]
    lambda_feasible: bool
    mu_feasible: bool
    lambda_residual: Optional[float] = None
    mu_residual: Optional[float] = None
    lambda_reason: str = ""
    mu_reason: str = ""


def relaxed_optimum(params: SystemParams) -> float:
    """Minimizer of the AUNDT over real M >= L (L itself when mu == 0)."""
    L = params.coop_reach
    if params.mu == 0:
        return float(L)
    stationary = math.sqrt(2 * params.lam * cooperation_loss(L) / (params.beta * L))
    return max(float(L), stationary)


def optimal_density(params: SystemParams, scan_limit: int | None = None) -> DensitySolution:
    """Relaxed, nearest-integer-rounded and exact integer optimum of the AUNDT.

    ``scan_limit`` only bounds sanity: the exact value is found by comparing
    the two integers around the relaxed optimum, which suffices because the
    objective is convex in M.
    """
    L = params.coop_reach
    if scan_limit is not None and scan_limit < L:
        raise InvalidDensity(f"scan_limit {scan_limit} is below coop_reach {L}")
    relaxed = relaxed_optimum(params)
    if params.mu == 0:
        return DensitySolution(relaxed, L, L, True)

    rounded = max(L, math.ceil(relaxed - 0.5))
    lo = max(L, math.floor(relaxed))
    hi = max(L, math.ceil(relaxed))
    # ties go to the smaller cluster
    exact = lo if aundt(params, lo) <= aundt(params, hi) else hi
    return DensitySolution(relaxed, rounded, exact, False)


def _check_densities(params: SystemParams, m_star: int, m_prime: int) -> None:
    if m_prime < params.coop_reach:
        raise InvalidDensity(f"m_prime {m_prime} is below coop_reach {params.coop_reach}")
    if m_prime > m_star:
        raise InvalidDensity(f"m_prime {m_prime} exceeds m_star {m_star}")


def adjust_backhaul_rate(params: SystemParams, m_star: int, m_prime: int) -> float:
    """Smallest total EH-BS rate that keeps the AUNDT at its level for ``m_star``."""
    _check_densities(params, m_star, m_prime)
    G = cooperation_loss(params.coop_reach)
    lam, L = params.lam, params.coop_reach
    denom = m_star + (1 / m_star - 1 / m_prime) * 2 * lam * G / (params.beta * L)
    if denom <= 0:
        raise InfeasibleAdjustment(
            f"no EH-BS rate compensates M'={m_prime} (denominator {denom:.6g} <= 0)"
        )
    return lam * m_prime / denom


def adjust_cache_capacity(params: SystemParams, m_star: int, m_prime: int) -> float:
    """Smallest cache ratio that keeps the AUNDT at its level for ``m_star``.

    Raises InfeasibleAdjustment when caching cannot reduce delay at
    ``m_prime`` or when the required ratio exceeds 1; in the latter case the
    computed ratio is attached to the exception as ``value``.
    """
    _check_densities(params, m_star, m_prime)
    if params.mu == 0:
        raise DegenerateAdjustment("mu = 0: AUNDT does not depend on the cluster size")
    G = cooperation_loss(params.coop_reach)
    at_prime = cache_bracket(params, m_prime, G)
    if at_prime >= 0:
        raise InfeasibleAdjustment(
            f"caching does not lower the delay at M'={m_prime} (bracket {at_prime:.6g} >= 0)"
        )
    L, lam, beta = params.coop_reach, params.lam, params.beta
    gap = L / lam * (m_star - m_prime) + (2 / (beta * m_star) - 2 / (beta * m_prime)) * G
    mu_prime = params.mu * (gap / at_prime + 1)
    if mu_prime > 1:
        raise InfeasibleAdjustment(
            f"required cache ratio {mu_prime:.6g} exceeds 1", value=mu_prime
        )
    return mu_prime


def verify_adjustment(
    original: SystemParams, m_star: int, adjusted: SystemParams, m_prime: int
) -> float:
    """AUNDT of the adjusted deployment minus the original optimum (<= 0 is good)."""
    return aundt(adjusted, m_prime) - aundt(original, m_star)


def plan_adjustment(
    params: SystemParams, m_prime: int, m_star: int | None = None
) -> AdjustmentSolution:
    """Both single-parameter compensations for deploying ``m_prime`` instead of M*.

    M* defaults to the exact integer optimum.
    """
    if m_star is None:
        m_star = optimal_density(params).exact
    _check_densities(params, m_star, m_prime)

    lam_value = lam_residual = None
    lam_ok, lam_reason = True, ""
    try:
        lam_value = adjust_backhaul_rate(params, m_star, m_prime)
        lam_residual = verify_adjustment(params, m_star, params.with_(lam=lam_value), m_prime)
    except InfeasibleAdjustment as exc:
        lam_ok, lam_reason = False, str(exc)

    mu_value = mu_residual = None
    mu_ok, mu_reason = True, ""
    try:
        mu_value = adjust_cache_capacity(params, m_star, m_prime)
        mu_residual = verify_adjustment(params, m_star, params.with_(mu=mu_value), m_prime)
    except InfeasibleAdjustment as exc:
        mu_ok, mu_reason, mu_value = False, str(exc), exc.value
    except DegenerateAdjustment as exc:
        mu_ok, mu_reason = False, str(exc)

    return AdjustmentSolution(
        target_density=m_prime,
        optimal_density=m_star,
        adjusted_lambda=lam_value,
        adjusted_mu=mu_value,
        lambda_feasible=lam_ok,
        mu_feasible=mu_ok,
        lambda_residual=lam_residual,
        mu_residual=mu_residual,
        lambda_reason=lam_reason,
        mu_reason=mu_reason,
    )
