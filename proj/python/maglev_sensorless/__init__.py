"""Sensorless levitated-ball observer/controller simulation (C++ core)."""

from ._core import (
    ConfigError,
    Error,
    IoError,
    NonFiniteSignal,
    NumericAbort,
    PlantParams,
    Scenario,
    adjugate,
    det5,
    equilibrium,
    log_columns,
    metrics_columns,
    mix,
    omega,
    output_current,
    plant_rhs,
    regression_residual,
    run,
    simulate_scalar_ltv,
    sweep,
)

__all__ = [
    "ConfigError",
    "Error",
    "IoError",
    "NonFiniteSignal",
    "NumericAbort",
    "PlantParams",
    "Scenario",
    "adjugate",
    "det5",
    "equilibrium",
    "log_columns",
    "metrics_columns",
    "mix",
    "omega",
    "output_current",
    "plant_rhs",
    "regression_residual",
    "run",
    "simulate_scalar_ltv",
    "sweep",
]
