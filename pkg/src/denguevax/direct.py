"""Direct optimal-control solver: piecewise-constant transcription with an
adjoint-based reduced gradient and projected descent on the control box.

The control is parameterized by one value per interval; intervals tile the
integration grid evenly. Gradients come from one forward and one backward
solve, so each descent iteration costs two integrations plus line-search
forward solves.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from denguevax.integrate import (
    TimeGrid,
    Trajectory,
    evaluate_cost,
    integrate_adjoint_backward,
    integrate_forward,
)
from denguevax.model import (
    AdjointState,
    CostWeights,
    EpiState,
    ModelParams,
    stationary_control,
)
from denguevax.sweep import IterationRecord, NotConverged, Solution

ARMIJO_C1 = 1e-4
INITIAL_STEP = 1.0
MIN_STEP = 1e-14


@dataclass(frozen=True)
class DirectOptions:
    """Knobs for the transcribed problem.

    n_intervals: number of piecewise-constant control intervals; must divide
        the integration grid's step count.
    grad_tol: stopping threshold on the max-norm of the projected gradient.
    max_iters: iteration cap.
    ls_shrink: backtracking factor of the Armijo line search, in (0, 1).
    """

    n_intervals: int = 365
    grad_tol: float = 1e-6
    max_iters: int = 500
    ls_shrink: float = 0.5

    def __post_init__(self) -> None:
        if self.n_intervals < 1:
            raise ValueError(f"n_intervals must be >= 1, got {self.n_intervals}")
        if not self.grad_tol > 0.0:
            raise ValueError(f"grad_tol must be positive, got {self.grad_tol}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")
        if not 0.0 < self.ls_shrink < 1.0:
            raise ValueError(f"ls_shrink must lie in (0, 1), got {self.ls_shrink}")


def _steps_per_interval(grid: TimeGrid, n_intervals: int) -> int:
    if grid.n_steps % n_intervals:
        raise ValueError(
            f"n_intervals = {n_intervals} does not divide n_steps = {grid.n_steps}"
        )
    return grid.n_steps // n_intervals


def _node_owner(grid: TimeGrid, n_intervals: int) -> np.ndarray:
    # Node i belongs to the interval it starts: boundary nodes go to the
    # right interval, the final node to the last one. The gradient below must
    # partition nodes the same way the sampling does, or it stops matching
    # finite differences of the sampled cost.
    r = _steps_per_interval(grid, n_intervals)
    return np.minimum(np.arange(grid.n_steps + 1) // r, n_intervals - 1)


def piecewise_constant_control(grid: TimeGrid, values: np.ndarray) -> Trajectory:
    """Sample one control value per interval onto the grid nodes."""
    values = np.asarray(values, dtype=float)
    return Trajectory(grid, values[_node_owner(grid, len(values))])


def reduced_gradient(
    p: ModelParams,
    w: CostWeights,
    x0: EpiState,
    grid: TimeGrid,
    u: np.ndarray,
) -> np.ndarray:
    """Cost gradient with respect to the per-interval control values.

    One forward and one backward solve give the control-Hamiltonian slope
    2*gamma_v*(u - stationary value) at every node; each interval's entry is
    the trapezoidal integral of that slope over the nodes it owns.
    """
    u = np.asarray(u, dtype=float)
    u_traj = piecewise_constant_control(grid, u)
    xs = integrate_forward(p, u_traj, x0, grid)
    ls = integrate_adjoint_backward(p, w, xs, u_traj, grid)

    xv = xs.values
    lv = ls.values
    uv = u_traj.values
    slope = np.array(
        [
            2.0
            * w.gamma_v
            * (
                uv[i]
                - stationary_control(p, w, EpiState(*xv[i]), AdjointState(*lv[i]))
            )
            for i in range(xv.shape[0])
        ]
    )
    weights = np.full(grid.n_steps + 1, grid.h)
    weights[0] = weights[-1] = grid.h / 2.0
    grad = np.zeros(len(u))
    np.add.at(grad, _node_owner(grid, len(u)), weights * slope)
    return grad


def _projected(grad: np.ndarray, u: np.ndarray) -> np.ndarray:
    pg = grad.copy()
    pg[(u <= 0.0) & (grad > 0.0)] = 0.0
    pg[(u >= 1.0) & (grad < 0.0)] = 0.0
    return pg


def solve_direct(
    p: ModelParams,
    w: CostWeights,
    x0: EpiState,
    grid: TimeGrid,
    opts: DirectOptions = DirectOptions(),
) -> Solution:
    """Projected gradient descent on the box of per-interval control values.

    Starts from the all-zero schedule; each iteration takes the steepest
    descent direction, backtracks until the Armijo condition holds, and clips
    the iterate back into [0, 1]^n. Stops when the projected gradient's
    max-norm falls below ``opts.grad_tol``; hitting the iteration cap or a
    fully stalled line search emits a NotConverged warning instead.
    """
    _steps_per_interval(grid, opts.n_intervals)

    def cost_of(uvec: np.ndarray) -> float:
        traj = piecewise_constant_control(grid, uvec)
        xs = integrate_forward(p, traj, x0, grid)
        return evaluate_cost(w, xs, traj)

    u = np.zeros(opts.n_intervals)
    cost = cost_of(u)
    history: list[IterationRecord] = []
    converged = False
    stalled = False

    iterations = 0
    for iterations in range(1, opts.max_iters + 1):
        grad = reduced_gradient(p, w, x0, grid, u)
        if np.max(np.abs(_projected(grad, u))) < opts.grad_tol:
            history.append(IterationRecord(cost=cost, control_change=0.0))
            converged = True
            break

        alpha = INITIAL_STEP
        accepted = False
        while alpha >= MIN_STEP:
            u_try = np.clip(u - alpha * grad, 0.0, 1.0)
            decrease = float(grad @ (u - u_try))
            if decrease > 0.0:
                cost_try = cost_of(u_try)
                if cost_try <= cost - ARMIJO_C1 * decrease:
                    accepted = True
                    break
            alpha *= opts.ls_shrink

        if not accepted:
            history.append(IterationRecord(cost=cost, control_change=0.0))
            stalled = True
            break

        history.append(
            IterationRecord(cost=cost, control_change=float(np.max(np.abs(u_try - u))))
        )
        u = u_try
        cost = cost_try

    if not converged:
        reason = "line search stalled" if stalled else f"{opts.max_iters} iterations"
        warnings.warn(f"direct solve did not converge ({reason})", NotConverged)

    u_traj = piecewise_constant_control(grid, u)
    xs = integrate_forward(p, u_traj, x0, grid)
    ls = integrate_adjoint_backward(p, w, xs, u_traj, grid)
    return Solution(
        states=xs,
        adjoints=ls,
        control=u_traj,
        cost=evaluate_cost(w, xs, u_traj),
        iterations=iterations,
        converged=converged,
        history=history,
    )
