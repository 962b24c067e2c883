"""Fixed-grid integration of the state and adjoint systems, plus cost quadrature.

Both systems share one uniform grid so that forward state storage, backward
interpolation, and control updates line up exactly at the nodes. The stepper
is classical 4th-order Runge-Kutta; quantities needed at half-steps (control
on the forward pass, state and control on the backward pass) are linearly
interpolated between adjacent nodes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from denguevax.model import (
    AdjointState,
    CostWeights,
    EpiState,
    ModelParams,
    adjoint_rhs,
    state_rhs,
)


class NonFiniteState(RuntimeError):
    """An integration step produced a NaN or infinity."""


@dataclass(frozen=True)
class TimeGrid:
    """Uniform time grid with ``n_steps + 1`` nodes on ``[t0, tf]`` (days)."""

    t0: float
    tf: float
    n_steps: int

    def __post_init__(self) -> None:
        if not self.tf > self.t0:
            raise ValueError(f"tf must exceed t0, got [{self.t0}, {self.tf}]")
        if self.n_steps < 1:
            raise ValueError(f"n_steps must be >= 1, got {self.n_steps}")

    @property
    def h(self) -> float:
        return (self.tf - self.t0) / self.n_steps

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.h * np.arange(self.n_steps + 1)


@dataclass(frozen=True)
class Trajectory:
    """Node values on a grid: shape (n_steps+1, 6) for state/adjoint paths,
    (n_steps+1,) for controls."""

    grid: TimeGrid
    values: np.ndarray

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=float)
        if vals.shape[0] != self.grid.n_steps + 1:
            raise ValueError(
                f"expected {self.grid.n_steps + 1} node records, got {vals.shape[0]}"
            )
        object.__setattr__(self, "values", vals)

    @property
    def final(self) -> np.ndarray:
        return self.values[-1]


ControlTrajectory = Trajectory


def constant_control(grid: TimeGrid, level: float) -> Trajectory:
    return Trajectory(grid, np.full(grid.n_steps + 1, float(level)))


def _require_same_grid(a: TimeGrid, b: TimeGrid) -> None:
    if a != b:
        raise ValueError(f"grids differ: {a} vs {b}")


def integrate_forward(
    p: ModelParams, u: Trajectory, x0: EpiState, grid: TimeGrid
) -> Trajectory:
    """Solve the state system forward from ``x0`` with control path ``u``.

    Runs classical RK4 on each step; the stage evaluations at the step
    midpoint use the average of the control values at the two bracketing
    nodes. The returned trajectory starts exactly at ``x0``.

    Raises:
        NonFiniteState: if any component becomes non-finite (blow-up or bad
            parameters).
        ValueError: if ``u`` lives on a different grid or ``x0`` leaves the
            s_h + i_h + r_h = 1 manifold.
    """
    _require_same_grid(u.grid, grid)
    if abs(x0.s_h + x0.i_h + x0.r_h - 1.0) > 1e-8:
        raise ValueError("x0 must satisfy s_h + i_h + r_h = 1")

    h = grid.h
    uv = u.values
    out = np.empty((grid.n_steps + 1, 6))
    x = EpiState(*(float(v) for v in x0))
    out[0] = x
    for i in range(grid.n_steps):
        u0 = uv[i]
        u1 = uv[i + 1]
        um = 0.5 * (u0 + u1)
        try:
            k1 = state_rhs(p, x, u0)
            k2 = state_rhs(p, EpiState(*(a + 0.5 * h * b for a, b in zip(x, k1))), um)
            k3 = state_rhs(p, EpiState(*(a + 0.5 * h * b for a, b in zip(x, k2))), um)
            k4 = state_rhs(p, EpiState(*(a + h * b for a, b in zip(x, k3))), u1)
            x = EpiState(
                *(
                    a + (h / 6.0) * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
                    for a, b1, b2, b3, b4 in zip(x, k1, k2, k3, k4)
                )
            )
        except OverflowError as exc:
            raise NonFiniteState(
                f"state overflowed at t = {grid.t0 + (i + 1) * h:.6g}"
            ) from exc
        out[i + 1] = x
        if not all(np.isfinite(v) for v in x):
            raise NonFiniteState(
                f"state became non-finite at t = {grid.t0 + (i + 1) * h:.6g}"
            )
    return Trajectory(grid, out)


def integrate_adjoint_backward(
    p: ModelParams,
    w: CostWeights,
    xs: Trajectory,
    u: Trajectory,
    grid: TimeGrid,
) -> Trajectory:
    """Solve the adjoint system backward from the zero terminal condition.

    RK4 with a negative step, marching from the final node to the first;
    state and control values at step midpoints are linear interpolants of the
    stored node values. The final node of the result is exactly zero.
    """
    _require_same_grid(xs.grid, grid)
    _require_same_grid(u.grid, grid)

    h = grid.h
    xv = xs.values
    uv = u.values
    out = np.empty((grid.n_steps + 1, 6))
    lam = AdjointState(0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    out[-1] = lam
    for i in range(grid.n_steps - 1, -1, -1):
        x1 = EpiState(*xv[i + 1])
        xm = EpiState(*(0.5 * (xv[i] + xv[i + 1])))
        x0 = EpiState(*xv[i])
        u1 = uv[i + 1]
        um = 0.5 * (uv[i] + uv[i + 1])
        u0 = uv[i]
        try:
            k1 = adjoint_rhs(p, w, x1, lam, u1)
            k2 = adjoint_rhs(
                p, w, xm, AdjointState(*(a - 0.5 * h * b for a, b in zip(lam, k1))), um
            )
            k3 = adjoint_rhs(
                p, w, xm, AdjointState(*(a - 0.5 * h * b for a, b in zip(lam, k2))), um
            )
            k4 = adjoint_rhs(
                p, w, x0, AdjointState(*(a - h * b for a, b in zip(lam, k3))), u0
            )
            lam = AdjointState(
                *(
                    a - (h / 6.0) * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
                    for a, b1, b2, b3, b4 in zip(lam, k1, k2, k3, k4)
                )
            )
        except OverflowError as exc:
            raise NonFiniteState(
                f"adjoint overflowed at t = {grid.t0 + i * h:.6g}"
            ) from exc
        out[i] = lam
        if not all(np.isfinite(v) for v in lam):
            raise NonFiniteState(
                f"adjoint became non-finite at t = {grid.t0 + i * h:.6g}"
            )
    return Trajectory(grid, out)


def evaluate_cost(w: CostWeights, xs: Trajectory, u: Trajectory) -> float:
    """Composite trapezoidal quadrature of the running cost over the grid."""
    _require_same_grid(xs.grid, u.grid)
    i_h = xs.values[:, 1]
    integrand = w.gamma_i * i_h**2 + w.gamma_v * u.values**2
    return float(np.trapezoid(integrand, dx=xs.grid.h))
