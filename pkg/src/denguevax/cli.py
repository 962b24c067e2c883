"""Command-line interface.

Subcommands:
    solve <config>      run the configured method x regime matrix, write CSVs
    validate <config>   parse and validate a config, then exit
    gradcheck <config>  compare the adjoint-based gradient against central
                        finite differences and print the max relative error

Exit codes: 0 full success, 1 config validation failure, 2 solver or output
failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from denguevax.config import ParseError, ValidationError, load_config
from denguevax.direct import piecewise_constant_control, reduced_gradient
from denguevax.integrate import evaluate_cost, integrate_forward
from denguevax.runner import IoError, emit_outputs, run_scenarios

GRADCHECK_INTERVALS = 10
GRADCHECK_TRIALS = 5
GRADCHECK_STEP = 1e-5
GRADCHECK_LIMIT = 1e-3
GRADCHECK_SEED = 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="denguevax",
        description="Vaccination scheduling for a host-vector transmission model",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="run scenarios and write CSV outputs")
    p_solve.add_argument("config", help="path to a scenario TOML file")
    p_solve.add_argument(
        "--out", default=None, help="override the config's output directory"
    )

    p_validate = sub.add_parser("validate", help="check a config and exit")
    p_validate.add_argument("config", help="path to a scenario TOML file")

    p_grad = sub.add_parser(
        "gradcheck", help="finite-difference check of the adjoint gradient"
    )
    p_grad.add_argument("config", help="path to a scenario TOML file")

    return parser


def _load(path: str):
    try:
        return load_config(path)
    except (ParseError, ValidationError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return None


def _cmd_validate(args) -> int:
    cfg = _load(args.config)
    if cfg is None:
        return 1
    grid = cfg.grid()
    print(
        f"config OK: n_h = {cfg.params.n_h:g}, t_f = {cfg.t_f:g} days, "
        f"h = {cfg.h:g} ({grid.n_steps} steps), method = {cfg.method}, "
        f"controls = {list(cfg.controls)}"
    )
    return 0


def _cmd_solve(args) -> int:
    cfg = _load(args.config)
    if cfg is None:
        return 1
    report = run_scenarios(cfg)
    try:
        written = emit_outputs(report, out_dir=args.out)
    except IoError as exc:
        print(f"output error: {exc}", file=sys.stderr)
        return 2

    failed = False
    for cell in report.cells:
        if cell.ok:
            extra = ""
            if cell.converged is not None:
                state = "converged" if cell.converged else "NOT converged"
                extra = f"  ({state} in {cell.iterations} iterations)"
            print(f"{cell.method:<9} {cell.regime:<10} J = {cell.cost:.6f}{extra}")
        else:
            failed = True
            print(f"{cell.method:<9} {cell.regime:<10} ERROR: {cell.error}")
    print(f"wrote {len(written)} files to {written[0].parent}")
    return 2 if failed else 0


def _cmd_gradcheck(args) -> int:
    cfg = _load(args.config)
    if cfg is None:
        return 1
    grid = cfg.grid()
    if grid.n_steps % GRADCHECK_INTERVALS:
        print(
            f"config error: gradcheck needs n_steps divisible by "
            f"{GRADCHECK_INTERVALS}, got {grid.n_steps}",
            file=sys.stderr,
        )
        return 1
    x0 = cfg.initial_state()

    def cost_of(uvec):
        traj = piecewise_constant_control(grid, uvec)
        xs = integrate_forward(cfg.params, traj, x0, grid)
        return evaluate_cost(cfg.weights, xs, traj)

    rng = np.random.default_rng(GRADCHECK_SEED)
    worst = 0.0
    for trial in range(GRADCHECK_TRIALS):
        u = rng.uniform(0.0, 1.0, size=GRADCHECK_INTERVALS)
        grad = reduced_gradient(cfg.params, cfg.weights, x0, grid, u)
        fd = np.empty(GRADCHECK_INTERVALS)
        for j in range(GRADCHECK_INTERVALS):
            up, um = u.copy(), u.copy()
            up[j] += GRADCHECK_STEP
            um[j] -= GRADCHECK_STEP
            fd[j] = (cost_of(up) - cost_of(um)) / (2.0 * GRADCHECK_STEP)
        rel = float(np.max(np.abs(grad - fd)) / max(np.max(np.abs(fd)), 1e-300))
        worst = max(worst, rel)
        print(f"control {trial + 1}/{GRADCHECK_TRIALS}: relative error {rel:.3e}")
    print(f"max relative error {worst:.3e} (limit {GRADCHECK_LIMIT:g})")
    return 0 if worst < GRADCHECK_LIMIT else 2


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "solve": _cmd_solve,
        "validate": _cmd_validate,
        "gradcheck": _cmd_gradcheck,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
