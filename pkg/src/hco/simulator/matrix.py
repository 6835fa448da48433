"""Default strategy test matrix for the bound suite.

One configuration per strategy; seeds vary per run. Strategies without
automation have eps_auto = 0, so their series must satisfy the strict
bound s_t <= m_t * tau_h with no automation term.
"""

from __future__ import annotations

from dataclasses import replace

from ..families import FamilyRegistry
from .bounds import BoundReport, verify_bounds
from .config import AdversaryConfig
from .runner import run_simulation

_FIXED_HUMAN = {"solve_time_median_ms": 20_000, "solve_time_sigma": 0.0}


def default_matrix_configs(seed: int, windows: int = 500) -> list[AdversaryConfig]:
    return [
        AdversaryConfig(
            s=10,
            m_schedule={"kind": "constant", "m": 0},
            strategy="automation_only",
            seed=seed,
            windows=windows,
            family="reasoning",
            auto={"eps_auto": 0.15},
        ),
        AdversaryConfig(
            s=12,
            m_schedule={"kind": "constant", "m": 2},
            strategy="outsourcing_greedy",
            seed=seed,
            windows=windows,
            family="reasoning",
            human={**_FIXED_HUMAN, "eps_hum": 0.0},
            auto={"eps_auto": 0.0},
        ),
        AdversaryConfig(
            s=10,
            m_schedule={"kind": "constant", "m": 2},
            strategy="hybrid",
            seed=seed,
            windows=windows,
            family="reasoning",
            human={"solve_time_median_ms": 20_000, "solve_time_sigma": 0.3, "eps_hum": 0.15},
            auto={"eps_auto": 0.18},
        ),
        AdversaryConfig(
            s=12,
            m_schedule={"kind": "constant", "m": 2},
            strategy="relay",
            relay_extra_latency_ms=4_000,
            seed=seed,
            windows=windows,
            family="reasoning",
            human={**_FIXED_HUMAN, "eps_hum": 0.05},
            auto={"eps_auto": 0.0},
        ),
        AdversaryConfig(
            s=15,
            m_schedule={"kind": "burst", "lo": 1, "hi": 4, "period": 50, "burst_len": 10},
            strategy="burst",
            seed=seed,
            windows=windows,
            family="reasoning",
            human={**_FIXED_HUMAN, "eps_hum": 0.0},
            auto={"eps_auto": 0.0},
        ),
    ]


def run_bound_suite(
    seeds: range | list[int],
    windows: int = 500,
    families: FamilyRegistry | None = None,
) -> dict:
    """Run the matrix over all seeds; collect bound reports per run."""
    families = families or FamilyRegistry.default()
    runs = []
    for seed in seeds:
        for cfg in default_matrix_configs(seed, windows):
            report = run_simulation(cfg, families)
            bound: BoundReport = verify_bounds(report.rows, report.metrics["tau_h"])
            eps_auto = cfg.auto.get("eps_auto", families.descriptor(cfg.family).eps_auto)
            strict_violations = []
            if eps_auto == 0:
                strict_violations = [
                    {"window": r.window, "s_t": r.s_t, "limit": r.m_t * report.metrics["tau_h"]}
                    for r in report.rows
                    if r.s_t > r.m_t * report.metrics["tau_h"]
                ]
            tau_h = report.metrics["tau_h"]
            runs.append(
                {
                    "strategy": cfg.strategy,
                    "seed": seed,
                    "eps_auto": eps_auto,
                    "tau_h": tau_h,
                    "bound_ok": bound.ok,
                    "burst_ok": bound.burst_ok,
                    "burst_total": bound.totals["s"],
                    "burst_limit": tau_h * bound.totals["m"] + bound.totals["a"],
                    "violations": bound.per_window_violations,
                    "strict_violations": strict_violations,
                    "time_avg_s": report.metrics["time_avg_s"],
                }
            )
    return {
        "runs": runs,
        "total_violations": sum(len(r["violations"]) for r in runs),
        "total_strict_violations": sum(len(r["strict_violations"]) for r in runs),
    }
