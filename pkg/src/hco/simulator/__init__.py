"""Discrete-time adversary simulator and cost-bound verification.

The simulator drives a real in-process oracle: every solved challenge an
adversary "earns" goes through issuance, binding verification, and deadline
checks. Window activity series are therefore measurements, not projections.
"""

from .agents import (
    AUTO_LATENCY_MEDIAN_MS,
    DEFAULT_SIGMA,
    HUMAN_SOLVE_MEDIAN_MS,
    AutomatedSolverModel,
    HumanAgentModel,
)
from .bounds import BoundReport, verify_bounds
from .config import STRATEGIES, AdversaryConfig
from .matrix import default_matrix_configs, run_bound_suite
from .runner import CSV_HEADER, SimulationReport, WindowRow, report_from_dict, run_simulation
from .schedules import SCHEDULE_KINDS, Schedule
from .sweeps import (
    TABLE_FAMILIES,
    ResourceModel,
    challenge_oracle_model,
    compare_resource_models,
    cost_sweep,
    fit_line,
    minimal_humans,
    proof_of_stake_model,
    proof_of_work_model,
    family_outcome_table,
    sweep_base_config,
)

__all__ = [
    "AUTO_LATENCY_MEDIAN_MS",
    "CSV_HEADER",
    "DEFAULT_SIGMA",
    "HUMAN_SOLVE_MEDIAN_MS",
    "SCHEDULE_KINDS",
    "STRATEGIES",
    "TABLE_FAMILIES",
    "AdversaryConfig",
    "AutomatedSolverModel",
    "BoundReport",
    "HumanAgentModel",
    "ResourceModel",
    "Schedule",
    "SimulationReport",
    "WindowRow",
    "challenge_oracle_model",
    "compare_resource_models",
    "cost_sweep",
    "default_matrix_configs",
    "fit_line",
    "minimal_humans",
    "proof_of_stake_model",
    "proof_of_work_model",
    "report_from_dict",
    "family_outcome_table",
    "run_bound_suite",
    "run_simulation",
    "sweep_base_config",
]
