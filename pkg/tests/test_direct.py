import numpy as np
import pytest

from denguevax.direct import (
    DirectOptions,
    piecewise_constant_control,
    reduced_gradient,
    solve_direct,
)
from denguevax.integrate import (
    TimeGrid,
    constant_control,
    evaluate_cost,
    integrate_forward,
)
from denguevax.model import CostWeights
from denguevax.sweep import NotConverged

from support import BASELINE_PARAMS, UNIT_WEIGHTS, baseline_initial_state

YEAR_GRID = TimeGrid(0.0, 365.0, 3650)
GRAD_TOL = 1e-6


@pytest.fixture(scope="module")
def baseline_solution():
    return solve_direct(
        BASELINE_PARAMS,
        UNIT_WEIGHTS,
        baseline_initial_state(),
        YEAR_GRID,
        DirectOptions(n_intervals=365, grad_tol=GRAD_TOL, max_iters=500),
    )


class TestOptions:
    def test_n_intervals_at_least_one(self):
        with pytest.raises(ValueError):
            DirectOptions(n_intervals=0)

    def test_grad_tol_positive(self):
        with pytest.raises(ValueError):
            DirectOptions(grad_tol=0.0)

    def test_ls_shrink_in_open_interval(self):
        with pytest.raises(ValueError):
            DirectOptions(ls_shrink=1.0)

    def test_intervals_must_tile_grid(self):
        g = TimeGrid(0.0, 10.0, 100)
        with pytest.raises(ValueError):
            reduced_gradient(
                BASELINE_PARAMS, UNIT_WEIGHTS, baseline_initial_state(), g,
                np.zeros(7),
            )


class TestSampling:
    def test_blocks_are_constant(self):
        g = TimeGrid(0.0, 10.0, 100)
        vals = np.arange(5, dtype=float)
        traj = piecewise_constant_control(g, vals)
        # 20 steps per interval: nodes 0..19 carry value 0, node 20 starts
        # the next interval, the final node belongs to the last one.
        assert np.all(traj.values[:20] == 0.0)
        assert traj.values[20] == 1.0
        assert traj.values[-1] == 4.0
        for j in range(5):
            block = traj.values[j * 20 : (j + 1) * 20]
            assert np.all(block == float(j))

    def test_single_interval_is_constant_control(self):
        g = TimeGrid(0.0, 10.0, 100)
        traj = piecewise_constant_control(g, np.array([0.3]))
        assert np.all(traj.values == 0.3)


class TestReducedGradient:
    def test_zero_everywhere_without_state_cost(self):
        w = CostWeights(gamma_i=0.0, gamma_v=1.0)
        g = reduced_gradient(
            BASELINE_PARAMS, w, baseline_initial_state(), YEAR_GRID, np.zeros(10)
        )
        assert np.all(g == 0.0)

    def test_matches_finite_differences(self):
        # The gradient must differentiate exactly the cost actually computed
        # from the sampled schedule, checked by central differences.
        rng = np.random.default_rng(12)
        x0 = baseline_initial_state()
        step = 1e-5
        for _ in range(2):
            u = rng.uniform(0.0, 1.0, size=10)
            grad = reduced_gradient(BASELINE_PARAMS, UNIT_WEIGHTS, x0, YEAR_GRID, u)
            fd = np.empty(10)
            for j in range(10):
                up, um = u.copy(), u.copy()
                up[j] += step
                um[j] -= step
                fd[j] = (_interval_cost(up) - _interval_cost(um)) / (2.0 * step)
            rel = np.max(np.abs(grad - fd)) / np.max(np.abs(fd))
            assert rel < 1e-3


def _interval_cost(uvec):
    traj = piecewise_constant_control(YEAR_GRID, uvec)
    xs = integrate_forward(BASELINE_PARAMS, traj, baseline_initial_state(), YEAR_GRID)
    return evaluate_cost(UNIT_WEIGHTS, xs, traj)


class TestDegenerateCase:
    def test_no_state_weight_returns_zero_schedule(self):
        w = CostWeights(gamma_i=0.0, gamma_v=1.0)
        g = TimeGrid(0.0, 30.0, 300)
        sol = solve_direct(
            BASELINE_PARAMS, w, baseline_initial_state(), g,
            DirectOptions(n_intervals=30),
        )
        assert sol.converged
        assert sol.cost == 0.0
        assert np.all(sol.control.values == 0.0)


class TestBaselineScenario:
    def test_converges_below_no_control_cost(self, baseline_solution):
        xs0 = integrate_forward(
            BASELINE_PARAMS,
            constant_control(YEAR_GRID, 0.0),
            baseline_initial_state(),
            YEAR_GRID,
        )
        j0 = evaluate_cost(UNIT_WEIGHTS, xs0, constant_control(YEAR_GRID, 0.0))
        assert baseline_solution.converged
        assert 0.0 < baseline_solution.cost < j0

    def test_monotone_descent(self, baseline_solution):
        costs = [rec.cost for rec in baseline_solution.history]
        assert all(b <= a for a, b in zip(costs, costs[1:]))

    def test_feasible_schedule(self, baseline_solution):
        u = baseline_solution.control.values
        assert np.all(u >= 0.0)
        assert np.all(u <= 1.0)

    def test_projected_gradient_below_tolerance(self, baseline_solution):
        # Recover the interval values from the sampled schedule (first node
        # of each interval block), then re-evaluate the stopping quantity.
        r = YEAR_GRID.n_steps // 365
        u = baseline_solution.control.values[: YEAR_GRID.n_steps : r]
        grad = reduced_gradient(
            BASELINE_PARAMS, UNIT_WEIGHTS, baseline_initial_state(), YEAR_GRID, u
        )
        pg = grad.copy()
        pg[(u <= 0.0) & (grad > 0.0)] = 0.0
        pg[(u >= 1.0) & (grad < 0.0)] = 0.0
        assert np.max(np.abs(pg)) < GRAD_TOL

    def test_cost_matches_own_trajectories(self, baseline_solution):
        assert baseline_solution.cost == evaluate_cost(
            UNIT_WEIGHTS, baseline_solution.states, baseline_solution.control
        )

    def test_transversality(self, baseline_solution):
        assert np.all(baseline_solution.adjoints.values[-1] == 0.0)


class TestIterationCap:
    def test_soft_failure_warns(self):
        with pytest.warns(NotConverged):
            sol = solve_direct(
                BASELINE_PARAMS,
                UNIT_WEIGHTS,
                baseline_initial_state(),
                YEAR_GRID,
                DirectOptions(n_intervals=365, grad_tol=1e-12, max_iters=2),
            )
        assert not sol.converged
        assert sol.iterations == 2
