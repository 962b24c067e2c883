"""Dengue transmission dynamics with optimal vaccination scheduling."""

from denguevax.model import (
    AdjointState,
    CostWeights,
    EpiState,
    ModelParams,
    adjoint_rhs,
    cost_integrand,
    hamiltonian,
    optimal_control,
    state_rhs,
    stationary_control,
)
from denguevax.integrate import (
    NonFiniteState,
    TimeGrid,
    Trajectory,
    constant_control,
    evaluate_cost,
    integrate_adjoint_backward,
    integrate_forward,
)
from denguevax.sweep import (
    IterationRecord,
    NotConverged,
    Solution,
    SweepOptions,
    characterized_control,
    solve_indirect,
)
from denguevax.direct import (
    DirectOptions,
    piecewise_constant_control,
    reduced_gradient,
    solve_direct,
)
from denguevax.config import (
    DefaultWeightWarning,
    InitialConditions,
    ParseError,
    ScenarioConfig,
    ValidationError,
    load_config,
    regime_label,
)
from denguevax.runner import (
    ComparisonReport,
    IoError,
    RunCell,
    emit_outputs,
    load_trajectory_csv,
    run_scenarios,
)

__version__ = "0.1.0"

__all__ = [
    "AdjointState",
    "ComparisonReport",
    "CostWeights",
    "DefaultWeightWarning",
    "DirectOptions",
    "EpiState",
    "InitialConditions",
    "IoError",
    "IterationRecord",
    "ModelParams",
    "NonFiniteState",
    "NotConverged",
    "ParseError",
    "RunCell",
    "ScenarioConfig",
    "Solution",
    "SweepOptions",
    "TimeGrid",
    "Trajectory",
    "ValidationError",
    "adjoint_rhs",
    "characterized_control",
    "constant_control",
    "cost_integrand",
    "emit_outputs",
    "evaluate_cost",
    "hamiltonian",
    "integrate_adjoint_backward",
    "integrate_forward",
    "load_config",
    "load_trajectory_csv",
    "optimal_control",
    "piecewise_constant_control",
    "reduced_gradient",
    "regime_label",
    "run_scenarios",
    "solve_direct",
    "solve_indirect",
    "state_rhs",
    "stationary_control",
]
