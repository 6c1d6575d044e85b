"""Monte Carlo estimate of the AUNDT from the two-phase delivery pipeline.

A trial places the EH cache, lets the M users of one cluster request M
distinct files, and times backhaul (EH-BS for cached parts, Cloud-BS for
the rest) plus wireless delivery (cooperative stage for cached parts,
interference stage for the rest). Per-user delays are normalized by
``Z / log P``.

The functions below are the readable reference pipeline. ``run_trials``
executes the same arithmetic through a compiled or vectorized kernel.
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from ..errors import InvalidParameters, InvalidPower, LibraryTooSmall
from ..model import LinkRates, SystemParams, aundt, link_rates
from .kernels import get_kernel
from .rng import MASK64, TrialStream

log = logging.getLogger(__name__)

THREADS_ENV = "EDGEDEPLOY_THREADS"


class CacheModel(str, Enum):
    FRACTIONAL = "fractional"
    WHOLE_FILE = "whole_file"


@dataclass(frozen=True)
class SimConfig:
    params: SystemParams
    cluster_size: int
    n_files: int = 500
    file_length: float = 1e6
    power: float = 20.0
    trials: int = 1000
    seed: int = 0
    cache_model: CacheModel = CacheModel.WHOLE_FILE

    def __post_init__(self):
        object.__setattr__(self, "cache_model", CacheModel(self.cache_model))
        if self.cluster_size < self.params.coop_reach:
            raise InvalidParameters(
                f"cluster size {self.cluster_size} is below coop_reach {self.params.coop_reach}"
            )
        if self.n_files < self.cluster_size:
            raise LibraryTooSmall(
                f"{self.n_files} files cannot serve {self.cluster_size} distinct requests"
            )
        if self.n_files >= 2**31:
            raise InvalidParameters("n_files must be below 2**31")
        if self.trials < 1:
            raise InvalidParameters(f"trials must be >= 1, got {self.trials}")
        if not self.file_length > 0:
            raise InvalidParameters(f"file_length must be positive, got {self.file_length}")
        if not self.power > 1:
            raise InvalidPower(f"transmit power must exceed 1, got {self.power}")
        if not 0 <= self.seed <= MASK64:
            raise InvalidParameters(f"seed must be an unsigned 64-bit integer, got {self.seed}")

    @property
    def n_cached(self) -> int:
        """Whole files held by the EH; the epsilon absorbs e.g. 0.29 * 100 = 28.999..."""
        return min(self.n_files, math.floor(self.params.mu * self.n_files + 1e-9))

    @property
    def normalizer(self) -> float:
        return self.file_length / math.log(self.power)


@dataclass(frozen=True)
class CachePlacement:
    model: CacheModel
    cached_fraction: np.ndarray


@dataclass(frozen=True)
class DelaySample:
    backhaul_eh: float
    backhaul_cloud: float
    wireless_coop: float
    wireless_interference: float

    @property
    def total(self) -> float:
        return self.backhaul_eh + self.backhaul_cloud + self.wireless_coop + self.wireless_interference


@dataclass(frozen=True)
class TrialOutcome:
    per_user_delay: list[DelaySample]
    per_user_ndt: list[float]
    requests: list[int]


@dataclass(frozen=True)
class SimResult:
    empirical_aundt: float
    std_error: float
    per_user_mean_ndt: np.ndarray
    analytic_aundt: float
    trials: int
    std_error_defined: bool = True
    backend: str = ""
    trial_aundt: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def abs_gap(self) -> float:
        return abs(self.empirical_aundt - self.analytic_aundt)


def _partial_shuffle(n: int, k: int, stream: TrialStream) -> list[int]:
    perm = list(range(n))
    for i in range(k):
        r = i + stream.below(n - i)
        perm[i], perm[r] = perm[r], perm[i]
    return perm[:k]


def place_cache(config: SimConfig, stream: TrialStream) -> CachePlacement:
    """Fill the EH cache: a fraction mu of every file, or a random subset of whole files."""
    if config.cache_model is CacheModel.FRACTIONAL:
        frac = np.full(config.n_files, config.params.mu, dtype=float)
    else:
        frac = np.zeros(config.n_files, dtype=float)
        frac[_partial_shuffle(config.n_files, config.n_cached, stream)] = 1.0
    return CachePlacement(config.cache_model, frac)


def draw_requests(config: SimConfig, stream: TrialStream) -> list[int]:
    """M distinct file ids, uniformly without replacement."""
    if config.n_files < config.cluster_size:
        raise LibraryTooSmall(
            f"{config.n_files} files cannot serve {config.cluster_size} distinct requests"
        )
    return _partial_shuffle(config.n_files, config.cluster_size, stream)


def split_request(file_id: int, placement: CachePlacement, file_length: float) -> tuple[float, float]:
    cached = placement.cached_fraction[file_id] * file_length
    return float(cached), float(file_length - cached)


def user_delay(
    j: int,
    splits: Sequence[tuple[float, float]],
    rates: LinkRates,
    config: SimConfig,
) -> DelaySample:
    """Delay of user ``j`` (1-based), served by the BS with the same index.

    The BS fetches the cached parts of all L users it cooperates for; near
    the cluster edge the user window wraps around inside the cluster so the
    fetch always covers L requests.
    """
    M = config.cluster_size
    half = (config.params.coop_reach - 1) // 2
    k = j - 1
    combined = 0.0
    for offset in range(-half, half + 1):
        combined += splits[(k + offset) % M][0]
    cached, uncached = splits[k]
    return DelaySample(
        backhaul_eh=combined / rates.eh_bs,
        backhaul_cloud=uncached / rates.cloud_bs,
        wireless_coop=cached / rates.cooperative[k],
        wireless_interference=uncached / rates.interference,
    )


def simulate_trial(config: SimConfig, trial: int, rates: LinkRates | None = None) -> TrialOutcome:
    """One trial through the reference pipeline, consuming the trial's own stream."""
    if rates is None:
        rates = link_rates(config.params, config.cluster_size, config.power)
    stream = TrialStream(config.seed, trial)
    placement = place_cache(config, stream)
    requests = draw_requests(config, stream)
    splits = [split_request(f, placement, config.file_length) for f in requests]
    delays = [user_delay(j, splits, rates, config) for j in range(1, config.cluster_size + 1)]
    norm = config.normalizer
    return TrialOutcome(delays, [d.total / norm for d in delays], requests)


def thread_count(threads: int | None = None) -> int:
    if threads is None:
        env = os.environ.get(THREADS_ENV)
        threads = int(env) if env else (os.cpu_count() or 1)
    return max(1, threads)


def simulate_ndt_matrix(
    config: SimConfig, threads: int | None = None, backend: str | None = None
) -> np.ndarray:
    """Per-trial, per-user NDT, shape ``(trials, M)``."""
    kernel = get_kernel(backend)
    rates = link_rates(config.params, config.cluster_size, config.power)
    coop = np.asarray(rates.cooperative, dtype=np.float64)
    out = np.empty((config.trials, config.cluster_size), dtype=np.float64)
    args = (
        config.n_files,
        config.n_cached,
        config.cache_model is CacheModel.WHOLE_FILE,
        float(config.params.mu),
        float(config.file_length),
        config.params.coop_reach,
        rates.eh_bs,
        rates.cloud_bs,
        coop,
        rates.interference,
        config.normalizer,
    )

    n_threads = min(thread_count(threads), config.trials)
    bounds = np.linspace(0, config.trials, n_threads + 1).astype(int)

    def work(i):
        lo, hi = int(bounds[i]), int(bounds[i + 1])
        if hi > lo:
            kernel.simulate_block(config.seed, lo, hi - lo, *args, out[lo:hi])

    if n_threads == 1:
        work(0)
    else:
        with ThreadPoolExecutor(n_threads) as pool:
            list(pool.map(work, range(n_threads)))
    return out


def run_trials(
    config: SimConfig, threads: int | None = None, backend: str | None = None
) -> SimResult:
    """Empirical AUNDT with its standard error over ``config.trials`` trials."""
    ndt = simulate_ndt_matrix(config, threads=threads, backend=backend)
    per_trial = ndt.mean(axis=1)
    analytic = aundt(config.params, config.cluster_size)

    if np.all(per_trial == per_trial[0]):
        empirical, std_error = float(per_trial[0]), 0.0
    else:
        empirical = float(per_trial.mean())
        std_error = float(per_trial.std(ddof=1) / math.sqrt(len(per_trial)))
    defined = config.trials > 1
    if not defined:
        log.warning("a single trial has no sample variance; std_error reported as 0")

    return SimResult(
        empirical_aundt=empirical,
        std_error=std_error,
        per_user_mean_ndt=ndt.mean(axis=0),
        analytic_aundt=analytic,
        trials=config.trials,
        std_error_defined=defined,
        backend=get_kernel(backend).NAME,
        trial_aundt=per_trial,
    )

