"""Agent models: human solvers and automated solvers.

Solve/latency times are lognormal around a configured median (sigma=0.3
by default); humans solve strictly serially, automated solvers have
unbounded parallelism but a per-attempt success probability and a
latency draw that must beat the response deadline.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from ..errors import InvalidConfigError

# Modeled per-family medians (milliseconds). Human medians follow the
# published benchmark means; automated latency medians likewise where the
# benchmark reports them, else a neutral 20 s.
HUMAN_SOLVE_MEDIAN_MS = {
    "perceptual": 6_200,
    "reasoning": 11_800,
    "attention": 14_500,
    "biometric": 8_100,
}
AUTO_LATENCY_MEDIAN_MS = {
    "perceptual": 18_400,
    "reasoning": 22_100,
    "attention": 20_000,
    "biometric": 20_000,
}

DEFAULT_SIGMA = 0.3
# Default lower clip for lognormal solve times, as a fraction of the
# median; the clipped mass is ~2e-4 at sigma=0.3.
MIN_SOLVE_FRACTION = 0.35


@dataclass(frozen=True)
class HumanAgentModel:
    """Serial human solver: lognormal solve time, per-solve failure prob."""

    solve_time_median_ms: int
    solve_time_sigma: float = DEFAULT_SIGMA
    min_solve_time_ms: int | None = None
    eps_hum: float = 0.0

    def __post_init__(self) -> None:
        if self.solve_time_median_ms <= 0:
            raise InvalidConfigError("solve_time_median_ms must be positive")
        if self.solve_time_sigma < 0:
            raise InvalidConfigError("solve_time_sigma must be >= 0")
        if not 0 <= self.eps_hum < 1:
            raise InvalidConfigError("eps_hum must be in [0, 1)")
        if self.min_solve_time_ms is None:
            floor = (
                self.solve_time_median_ms
                if self.solve_time_sigma == 0
                else max(1, round(MIN_SOLVE_FRACTION * self.solve_time_median_ms))
            )
            object.__setattr__(self, "min_solve_time_ms", floor)
        if not 0 < self.min_solve_time_ms <= self.solve_time_median_ms:
            raise InvalidConfigError("min_solve_time_ms must be in (0, median]")

    def sample_solve_ms(self, rng: random.Random) -> int:
        if self.solve_time_sigma == 0:
            return self.solve_time_median_ms
        draw = self.solve_time_median_ms * math.exp(self.solve_time_sigma * rng.gauss(0, 1))
        return max(self.min_solve_time_ms, round(draw))

    def draw_success(self, rng: random.Random) -> bool:
        return self.eps_hum == 0 or rng.random() >= self.eps_hum

    def tau_h(self, window_ms: int) -> int:
        """Certified per-window solves-per-human bound for this model."""
        return window_ms // self.min_solve_time_ms


@dataclass(frozen=True)
class AutomatedSolverModel:
    """Automated solver: per-attempt success prob, lognormal latency."""

    eps_auto: float = 0.0
    latency_median_ms: int = 20_000
    latency_sigma: float = DEFAULT_SIGMA

    def __post_init__(self) -> None:
        if not 0 <= self.eps_auto < 1:
            raise InvalidConfigError("eps_auto must be in [0, 1)")
        if self.latency_median_ms <= 0:
            raise InvalidConfigError("latency_median_ms must be positive")
        if self.latency_sigma < 0:
            raise InvalidConfigError("latency_sigma must be >= 0")

    def sample_latency_ms(self, rng: random.Random) -> int:
        if self.latency_sigma == 0:
            return self.latency_median_ms
        draw = self.latency_median_ms * math.exp(self.latency_sigma * rng.gauss(0, 1))
        return max(1, round(draw))

    def draw_success(self, rng: random.Random) -> bool:
        return self.eps_auto > 0 and rng.random() < self.eps_auto
