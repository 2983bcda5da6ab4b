"""Python access to the orbitlab verification harness."""

from ._core import (
    CheckResult,
    ConfigError,
    ConvergenceReport,
    Error,
    ExperimentConfig,
    SuiteResult,
    SweepResult,
    UnknownSuiteError,
    coverage,
    coverage_complete,
    experiments,
    format_results,
    load_config,
    parse_config,
    run_suite,
    run_suites,
    suites,
    sweep,
)

__all__ = [
    "CheckResult",
    "ConfigError",
    "ConvergenceReport",
    "Error",
    "ExperimentConfig",
    "SuiteResult",
    "SweepResult",
    "UnknownSuiteError",
    "coverage",
    "coverage_complete",
    "experiments",
    "format_results",
    "load_config",
    "parse_config",
    "run_suite",
    "run_suites",
    "suites",
    "sweep",
]
