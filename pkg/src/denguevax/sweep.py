"""Indirect optimal-control solver: forward-backward sweep with relaxation.

Each iteration solves the state system forward, the adjoint system backward,
forms the node-wise characterized control from the minimum condition, and
relaxes the iterate toward it. Plain full updates are prone to oscillation in
forward-backward sweeps, so the relaxation weight is halved (down to a floor)
whenever the cost rises for several consecutive iterations.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from denguevax.integrate import (
    TimeGrid,
    Trajectory,
    constant_control,
    evaluate_cost,
    integrate_adjoint_backward,
    integrate_forward,
)
from denguevax.model import (
    AdjointState,
    CostWeights,
    EpiState,
    ModelParams,
    optimal_control,
)

THETA_FLOOR = 0.1
COST_RISE_PATIENCE = 3


class NotConverged(RuntimeWarning):
    """Iteration cap reached before the control change dropped below tol."""


@dataclass(frozen=True)
class SweepOptions:
    """Knobs for the forward-backward iteration.

    relaxation: weight of the newly characterized control in each update,
        in (0, 1].
    tol: convergence threshold on the max-node control change.
    max_iters: iteration cap.
    """

    relaxation: float = 0.9
    tol: float = 1e-4
    max_iters: int = 500

    def __post_init__(self) -> None:
        if not 0.0 < self.relaxation <= 1.0:
            raise ValueError(f"relaxation must lie in (0, 1], got {self.relaxation}")
        if not self.tol > 0.0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")


class IterationRecord(NamedTuple):
    cost: float
    control_change: float


@dataclass(frozen=True)
class Solution:
    """Converged (or best-effort) solver output.

    cost always equals evaluate_cost of the solution's own trajectories, and
    the control lies in [0, 1] at every node.
    """

    states: Trajectory
    adjoints: Trajectory
    control: Trajectory
    cost: float
    iterations: int
    converged: bool
    history: list[IterationRecord] = field(default_factory=list)


def characterized_control(
    p: ModelParams, w: CostWeights, xs: Trajectory, ls: Trajectory
) -> np.ndarray:
    """Node-wise minimizer of the Hamiltonian along paired trajectories."""
    xv = xs.values
    lv = ls.values
    return np.array(
        [
            optimal_control(p, w, EpiState(*xv[i]), AdjointState(*lv[i]))
            for i in range(xv.shape[0])
        ]
    )


def solve_indirect(
    p: ModelParams,
    w: CostWeights,
    x0: EpiState,
    grid: TimeGrid,
    opts: SweepOptions = SweepOptions(),
) -> Solution:
    """Forward-backward sweep from the no-control initial guess.

    Stops when the max-node control change falls below ``opts.tol`` or the
    iteration cap is reached (the latter emits a NotConverged warning and
    returns the last iterate with ``converged=False``). Returned trajectories
    are recomputed with the final control, so the Solution invariants hold
    regardless of where the loop exits.
    """
    theta = opts.relaxation
    u = np.zeros(grid.n_steps + 1)
    history: list[IterationRecord] = []
    converged = False
    prev_cost = np.inf
    rises = 0

    iterations = 0
    for iterations in range(1, opts.max_iters + 1):
        u_traj = Trajectory(grid, u)
        xs = integrate_forward(p, u_traj, x0, grid)
        ls = integrate_adjoint_backward(p, w, xs, u_traj, grid)
        u_char = characterized_control(p, w, xs, ls)

        u_new = theta * u_char + (1.0 - theta) * u
        change = float(np.max(np.abs(u_new - u)))
        cost = evaluate_cost(w, xs, u_traj)
        history.append(IterationRecord(cost=cost, control_change=change))

        if cost > prev_cost:
            rises += 1
            if rises >= COST_RISE_PATIENCE:
                theta = max(theta / 2.0, THETA_FLOOR)
                rises = 0
        else:
            rises = 0
        prev_cost = cost

        u = u_new
        if change < opts.tol:
            converged = True
            break

    if not converged:
        warnings.warn(
            f"sweep did not converge in {opts.max_iters} iterations "
            f"(last control change {history[-1].control_change:.3e})",
            NotConverged,
        )

    u_traj = Trajectory(grid, u)
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
