"""Empirical convergence study for the fixed-step integrator.

Integrates the baseline scenario under a constant control on successively
refined grids and reports the observed order from final-state errors against
a fine reference grid. Fourth order is expected.
"""

import argparse
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from denguevax.integrate import TimeGrid, constant_control, integrate_forward
from denguevax.model import EpiState, ModelParams

PARAMS = ModelParams(
    n_h=480000.0, bite_rate=0.5, beta_mh=0.3, beta_hm=0.3,
    mu_h=3.858769052672197e-05, eta_h=0.3333333333333333,
    mu_m=0.1, phi=6.0, mu_a=0.25, eta_a=0.08, sigma=0.15, k=3.0,
)
X0 = EpiState(
    s_h=1.0 - 216.0 / PARAMS.n_h, i_h=216.0 / PARAMS.n_h, r_h=0.0,
    a_m=3.0, s_m=3.0, i_m=0.0,
)


def final_state(t_f, n_steps, level):
    grid = TimeGrid(0.0, t_f, n_steps)
    u = constant_control(grid, level)
    return np.asarray(integrate_forward(PARAMS, u, X0, grid).final)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--control", type=float, default=0.0,
                        help="constant vaccination rate in [0, 1] (default 0)")
    parser.add_argument("--t-f", type=float, default=365.0,
                        help="horizon in days (default 365)")
    args = parser.parse_args(argv)

    step_counts = [1000, 2000, 4000, 8000, 16000]
    reference = final_state(args.t_f, 8 * step_counts[-1], args.control)
    scale = np.max(np.abs(reference))

    print(f"constant control u = {args.control:g}, t_f = {args.t_f:g}")
    print(f"{'n_steps':>8} {'h':>10} {'error':>12} {'order':>7}")
    prev = None
    for n in step_counts:
        err = np.max(np.abs(final_state(args.t_f, n, args.control) - reference)) / scale
        order = f"{np.log2(prev / err):7.2f}" if prev else f"{'-':>7}"
        print(f"{n:>8} {args.t_f / n:>10.5f} {err:>12.3e} {order}")
        prev = err
    return 0


if __name__ == "__main__":
    sys.exit(main())
