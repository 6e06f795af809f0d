"""Optimal specialization allocation: closed-form model, friction variant, sweeps and scenarios."""

from ._specalloc import (
    MAX_ALLOCATION,
    DegenerateInputError,
    DomainError,
    Error,
    ScenarioSyntaxError,
    SolverError,
    ValidationError,
    amdahl_speedup,
    collapse_threshold,
    critical_ratio,
    effective_ratio,
    execution_time,
    execution_time_derivative,
    execution_time_mem,
    execution_time_second_derivative,
    format_number,
    gustafson_speedup,
    optimal_allocation,
    optimal_allocation_mem,
    run_cli,
    run_scenario_csv,
    run_scenario_json,
    run_scenario_tables,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_ALLOCATION",
    "DegenerateInputError",
    "DomainError",
    "Error",
    "ScenarioSyntaxError",
    "SolverError",
    "ValidationError",
    "amdahl_speedup",
    "collapse_threshold",
    "critical_ratio",
    "effective_ratio",
    "execution_time",
    "execution_time_derivative",
    "execution_time_mem",
    "execution_time_second_derivative",
    "format_number",
    "gustafson_speedup",
    "optimal_allocation",
    "optimal_allocation_mem",
    "run_cli",
    "run_scenario_csv",
    "run_scenario_json",
    "run_scenario_tables",
]
