"""Scenario execution and file emission.

Runs the requested method x regime matrix, collects a cost table, and writes
plot-ready CSVs: a cost summary, per-run trajectories in proportions and in
head counts, and the optimal-control schedules for overlaying the two
methods. Everything is deterministic: identical configs produce byte-identical
files.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from denguevax.config import FIXED_REGIMES, ScenarioConfig, regime_label
from denguevax.direct import solve_direct
from denguevax.integrate import (
    NonFiniteState,
    TimeGrid,
    Trajectory,
    constant_control,
    evaluate_cost,
    integrate_forward,
)
from denguevax.sweep import solve_indirect

TRAJECTORY_HEADER = (
    "t,s_h,i_h,r_h,a_m,s_m,i_m,u,"
    "lambda1,lambda2,lambda3,lambda4,lambda5,lambda6"
)


class IoError(Exception):
    """A file could not be written; the message carries the path."""


@dataclass(frozen=True)
class RunCell:
    """One (method, regime) entry of the comparison matrix.

    Fixed regimes carry no adjoints; failed cells carry an error string and
    no trajectories.
    """

    method: str
    regime: str
    cost: float | None = None
    states: Trajectory | None = None
    adjoints: Trajectory | None = None
    control: Trajectory | None = None
    converged: bool | None = None
    iterations: int | None = None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass(frozen=True)
class ComparisonReport:
    config: ScenarioConfig
    cells: tuple[RunCell, ...]

    def cell(self, method: str, regime: str) -> RunCell:
        for c in self.cells:
            if c.method == method and c.regime == regime:
                return c
        raise KeyError(f"no cell ({method}, {regime})")


def _fixed_level(regime) -> float:
    if isinstance(regime, str):
        return FIXED_REGIMES[regime]
    return float(regime)


def run_scenarios(cfg: ScenarioConfig) -> ComparisonReport:
    """Produce the method x regime cost matrix.

    Fixed regimes (u identically constant) bypass optimization: one forward
    solve and a cost evaluation, shared across method rows. Solver failures
    mark their own cell and leave the remaining cells intact.
    """
    grid = cfg.grid()
    x0 = cfg.initial_state()
    cells: list[RunCell] = []

    fixed_cache: dict[str, RunCell] = {}
    for regime in cfg.controls:
        label = regime_label(regime)
        if label == "optimal":
            continue
        try:
            u = constant_control(grid, _fixed_level(regime))
            xs = integrate_forward(cfg.params, u, x0, grid)
            cost = evaluate_cost(cfg.weights, xs, u)
            fixed_cache[label] = RunCell(
                method="", regime=label, cost=cost, states=xs, control=u
            )
        except NonFiniteState as exc:
            fixed_cache[label] = RunCell(method="", regime=label, error=str(exc))

    for method in cfg.methods():
        for regime in cfg.controls:
            label = regime_label(regime)
            if label != "optimal":
                base = fixed_cache[label]
                cells.append(
                    RunCell(
                        method=method,
                        regime=label,
                        cost=base.cost,
                        states=base.states,
                        control=base.control,
                        error=base.error,
                    )
                )
                continue
            solver = solve_indirect if method == "indirect" else solve_direct
            opts = (
                cfg.sweep_options if method == "indirect" else cfg.direct_options
            )
            try:
                sol = solver(cfg.params, cfg.weights, x0, grid, opts)
                cells.append(
                    RunCell(
                        method=method,
                        regime=label,
                        cost=sol.cost,
                        states=sol.states,
                        adjoints=sol.adjoints,
                        control=sol.control,
                        converged=sol.converged,
                        iterations=sol.iterations,
                    )
                )
            except NonFiniteState as exc:
                cells.append(RunCell(method=method, regime=label, error=str(exc)))

    return ComparisonReport(config=cfg, cells=tuple(cells))


def _write(path: Path, text: str) -> None:
    try:
        path.write_text(text)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def _trajectory_csv(
    grid: TimeGrid,
    states: np.ndarray,
    control: np.ndarray,
    adjoints: np.ndarray | None,
    scale: float = 1.0,
) -> str:
    times = grid.times
    lines = [TRAJECTORY_HEADER]
    for i in range(grid.n_steps + 1):
        fields = [repr(float(times[i]))]
        fields += [repr(float(v * scale)) for v in states[i]]
        fields.append(repr(float(control[i])))
        if adjoints is None:
            fields += [""] * 6
        else:
            fields += [repr(float(v)) for v in adjoints[i]]
        lines.append(",".join(fields))
    return "\n".join(lines) + "\n"


def emit_outputs(report: ComparisonReport, out_dir=None) -> list[Path]:
    """Write summary.csv, per-cell trajectory/counts CSVs, and per-method
    optimal-control schedules. Returns the written paths."""
    cfg = report.config
    out = Path(out_dir if out_dir is not None else cfg.output_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoError(f"cannot create output directory {out}: {exc}") from exc

    written: list[Path] = []
    grid = cfg.grid()

    regimes = [regime_label(r) for r in cfg.controls]
    lines = ["method," + ",".join(regimes)]
    for method in cfg.methods():
        row = [method]
        for regime in regimes:
            c = report.cell(method, regime)
            row.append(f"{c.cost:.6f}" if c.ok else "error")
        lines.append(",".join(row))
    summary = out / "summary.csv"
    _write(summary, "\n".join(lines) + "\n")
    written.append(summary)

    for c in report.cells:
        if not c.ok:
            continue
        adj = c.adjoints.values if c.adjoints is not None else None
        base = f"trajectory_{c.method}_{c.regime}"
        prop_path = out / f"{base}.csv"
        _write(
            prop_path,
            _trajectory_csv(grid, c.states.values, c.control.values, adj),
        )
        written.append(prop_path)
        counts_path = out / f"{base}_counts.csv"
        _write(
            counts_path,
            _trajectory_csv(
                grid, c.states.values, c.control.values, adj, scale=cfg.params.n_h
            ),
        )
        written.append(counts_path)

    for c in report.cells:
        if c.regime == "optimal" and c.ok:
            path = out / f"control_{c.method}.csv"
            rows = ["t,u"]
            for t, u in zip(grid.times, c.control.values):
                rows.append(f"{float(t)!r},{float(u)!r}")
            _write(path, "\n".join(rows) + "\n")
            written.append(path)

    return written


def load_trajectory_csv(path):
    """Read a trajectory CSV back into (grid, states, control, adjoints).

    adjoints is None when the lambda columns are empty (fixed regimes).
    """
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    lines = text.strip().split("\n")
    if lines[0] != TRAJECTORY_HEADER:
        raise ValueError(f"unexpected header in {path}: {lines[0]}")
    rows = [line.split(",") for line in lines[1:]]
    times = np.array([float(r[0]) for r in rows])
    states = np.array([[float(v) for v in r[1:7]] for r in rows])
    control = np.array([float(r[7]) for r in rows])
    if rows[0][8] == "":
        adjoints = None
    else:
        adjoints = np.array([[float(v) for v in r[8:14]] for r in rows])
    grid = TimeGrid(float(times[0]), float(times[-1]), len(rows) - 1)
    return grid, states, control, adjoints
