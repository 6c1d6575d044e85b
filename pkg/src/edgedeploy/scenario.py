"""Scenario files: a flat JSON object describing parameters, sweep range and outputs.

``mu``, ``gamma``, ``lambda`` and ``beta`` accept either a number or a list
of numbers; list values expand into the Cartesian product of scenarios.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional

from .errors import EdgeDeployError
from .model import SystemParams
from .simulator import CacheModel, SimConfig

SWEPT = ("mu", "gamma", "lambda", "beta")
FIELDS = {
    "mu", "gamma", "lambda", "beta", "coop_reach",
    "cluster_size", "m_min", "m_max",
    "n_files", "file_length", "power", "trials", "seed", "cache_model",
    "output_path", "plot_path",
}
REQUIRED = {"mu", "gamma", "lambda", "beta"}


class ConfigError(EdgeDeployError):
    pass


def _number(name, value):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{name} must be a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(f"{name} must be finite")
    return value


def _integer(name, value):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{name} must be an integer, got {value!r}")
    return value


@dataclass(frozen=True)
class ScenarioConfig:
    mu: tuple[float, ...]
    gamma: tuple[float, ...]
    lam: tuple[float, ...]
    beta: tuple[float, ...]
    coop_reach: int = 5
    m_min: int = 5
    m_max: int = 15
    n_files: int = 500
    file_length: float = 1e6
    power: float = 20.0
    trials: int = 1000
    seed: int = 0
    cache_model: CacheModel = CacheModel.WHOLE_FILE
    output_path: Optional[Path] = None
    plot_path: Optional[Path] = None

    @classmethod
    def from_dict(cls, raw: dict) -> "ScenarioConfig":
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(raw) - FIELDS
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        missing = REQUIRED - set(raw)
        if missing:
            raise ConfigError(f"missing config keys: {', '.join(sorted(missing))}")

        swept = {}
        for name in SWEPT:
            value = raw[name]
            values = value if isinstance(value, list) else [value]
            if not values:
                raise ConfigError(f"{name} must not be an empty list")
            swept[name] = tuple(_number(name, v) for v in values)

        L = _integer("coop_reach", raw.get("coop_reach", 5))
        cluster = raw.get("cluster_size")
        if cluster is not None:
            _integer("cluster_size", cluster)
        m_min = _integer("m_min", raw.get("m_min", cluster if cluster is not None else L))
        m_max = _integer("m_max", raw.get("m_max", cluster if cluster is not None else m_min + 10))
        if m_min < L:
            raise ConfigError(f"m_min ({m_min}) must be >= coop_reach ({L})")
        if m_max < m_min:
            raise ConfigError(f"m_max ({m_max}) must be >= m_min ({m_min})")

        try:
            model = CacheModel(raw.get("cache_model", CacheModel.WHOLE_FILE.value))
        except ValueError:
            raise ConfigError(
                f"cache_model must be one of {[m.value for m in CacheModel]}"
            ) from None

        out = raw.get("output_path")
        plot = raw.get("plot_path")
        for name, value in (("output_path", out), ("plot_path", plot)):
            if value is not None and not isinstance(value, str):
                raise ConfigError(f"{name} must be a string")

        config = cls(
            mu=swept["mu"],
            gamma=swept["gamma"],
            lam=swept["lambda"],
            beta=swept["beta"],
            coop_reach=L,
            m_min=m_min,
            m_max=m_max,
            n_files=_integer("n_files", raw.get("n_files", 500)),
            file_length=_number("file_length", raw.get("file_length", 1e6)),
            power=_number("power", raw.get("power", 20.0)),
            trials=_integer("trials", raw.get("trials", 1000)),
            seed=_integer("seed", raw.get("seed", 0)),
            cache_model=model,
            output_path=Path(out) if out else None,
            plot_path=Path(plot) if plot else None,
        )
        # surface parameter/simulation errors now rather than mid-sweep
        try:
            for params in config.param_sets():
                SimConfig(
                    params, config.m_max, config.n_files, config.file_length,
                    config.power, config.trials, config.seed, config.cache_model,
                )
        except EdgeDeployError as exc:
            raise ConfigError(str(exc)) from None
        return config

    @classmethod
    def load(cls, path) -> "ScenarioConfig":
        with open(path, encoding="utf-8") as fh:
            try:
                raw = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"{path}: invalid JSON ({exc})") from None
        return cls.from_dict(raw)

    def param_sets(self) -> Iterator[SystemParams]:
        for mu, gamma, lam, beta in itertools.product(self.mu, self.gamma, self.lam, self.beta):
            yield SystemParams(mu, gamma, lam, beta, self.coop_reach)

    def densities(self) -> range:
        return range(self.m_min, self.m_max + 1)

    def sim_config(self, params: SystemParams, cluster_size: int) -> SimConfig:
        return SimConfig(
            params, cluster_size, self.n_files, self.file_length,
            self.power, self.trials, self.seed, self.cache_model,
        )
