"""Adversary simulation configuration and JSON (de)serialization."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..errors import InvalidConfigError
from ..families import FamilyRegistry
from .agents import (
    AUTO_LATENCY_MEDIAN_MS,
    HUMAN_SOLVE_MEDIAN_MS,
    AutomatedSolverModel,
    HumanAgentModel,
)
from .schedules import Schedule

STRATEGIES = (
    "automation_only",
    "outsourcing_greedy",
    "hybrid",
    "relay",
    "burst",
)

_HUMAN_KEYS = {"solve_time_median_ms", "solve_time_sigma", "min_solve_time_ms", "eps_hum"}
_AUTO_KEYS = {"eps_auto", "latency_median_ms", "latency_sigma"}


@dataclass(frozen=True)
class AdversaryConfig:
    """Everything a simulation run depends on; (config, seed) fixes the run."""

    s: int
    m_schedule: dict
    strategy: str
    relay_extra_latency_ms: int = 0
    wage_per_human_window: float = 1.0
    auto_cost_per_attempt: float = 0.0
    seed: int = 0
    windows: int = 100
    family: str = "reasoning"
    window_ms: int = 60_000
    issuance_cap: int = 10
    human: dict = field(default_factory=dict)
    auto: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.s < 0:
            raise InvalidConfigError("s must be >= 0")
        if self.strategy not in STRATEGIES:
            raise InvalidConfigError(f"strategy must be one of {STRATEGIES}")
        if self.windows < 1:
            raise InvalidConfigError("windows must be >= 1")
        if self.window_ms <= 0:
            raise InvalidConfigError("window_ms must be positive")
        if self.relay_extra_latency_ms < 0:
            raise InvalidConfigError("relay_extra_latency_ms must be >= 0")
        if unknown := set(self.human) - _HUMAN_KEYS:
            raise InvalidConfigError(f"unknown human model keys: {sorted(unknown)}")
        if unknown := set(self.auto) - _AUTO_KEYS:
            raise InvalidConfigError(f"unknown auto model keys: {sorted(unknown)}")
        Schedule(self.m_schedule)  # validate eagerly

    def schedule(self) -> Schedule:
        return Schedule(self.m_schedule)

    def human_model(self, families: FamilyRegistry) -> HumanAgentModel:
        descriptor = families.descriptor(self.family)
        params = {
            "solve_time_median_ms": HUMAN_SOLVE_MEDIAN_MS.get(self.family, 10_000),
            "eps_hum": descriptor.eps_hum,
            **self.human,
        }
        return HumanAgentModel(**params)

    def auto_model(self, families: FamilyRegistry) -> AutomatedSolverModel:
        descriptor = families.descriptor(self.family)
        params = {
            "eps_auto": descriptor.eps_auto,
            "latency_median_ms": AUTO_LATENCY_MEDIAN_MS.get(self.family, 20_000),
            **self.auto,
        }
        return AutomatedSolverModel(**params)

    def to_dict(self) -> dict:
        return {
            "s": self.s,
            "m_schedule": dict(self.m_schedule),
            "strategy": self.strategy,
            "relay_extra_latency_ms": self.relay_extra_latency_ms,
            "wage_per_human_window": self.wage_per_human_window,
            "auto_cost_per_attempt": self.auto_cost_per_attempt,
            "seed": self.seed,
            "windows": self.windows,
            "family": self.family,
            "window_ms": self.window_ms,
            "issuance_cap": self.issuance_cap,
            "human": dict(self.human),
            "auto": dict(self.auto),
        }

    @classmethod
    def from_dict(cls, data: Any) -> "AdversaryConfig":
        if not isinstance(data, dict):
            raise InvalidConfigError("simulation config must be a JSON object")
        known = {
            "s",
            "m_schedule",
            "strategy",
            "relay_extra_latency_ms",
            "wage_per_human_window",
            "auto_cost_per_attempt",
            "seed",
            "windows",
            "family",
            "window_ms",
            "issuance_cap",
            "human",
            "auto",
        }
        if unknown := set(data) - known:
            raise InvalidConfigError(f"unknown config keys: {sorted(unknown)}")
        try:
            return cls(**data)
        except TypeError as exc:
            raise InvalidConfigError(str(exc)) from None
