"""Run the baseline vaccination experiment and print a cost comparison.

Solves the optimal schedule with both methods, evaluates the fixed no-control
and full-control regimes, writes CSV outputs, and reports peak infection
levels per run.
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from denguevax.config import load_config
from denguevax.runner import emit_outputs, run_scenarios


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--config",
        type=Path,
        default=Path(__file__).resolve().parent.parent / "configs" / "baseline.toml",
        help="scenario file (default: configs/baseline.toml)",
    )
    parser.add_argument("--out", type=Path, default=None, help="output directory override")
    args = parser.parse_args(argv)

    cfg = load_config(args.config)
    n_h = cfg.params.n_h
    start = time.perf_counter()
    report = run_scenarios(cfg)
    elapsed = time.perf_counter() - start

    print(f"scenario: t_f = {cfg.t_f:g} days, h = {cfg.h:g}, N_h = {n_h:g}")
    print(f"{'method':<9} {'regime':<10} {'J':>12} {'peak I_h':>10} {'peak day':>9}  iterations")
    for cell in report.cells:
        if not cell.ok:
            print(f"{cell.method:<9} {cell.regime:<10} {'error':>12}  ({cell.error})")
            continue
        i_h = cell.states.values[:, 1]
        peak = i_h.argmax()
        print(
            f"{cell.method:<9} {cell.regime:<10} {cell.cost:>12.6f} "
            f"{i_h[peak] * n_h:>10.1f} {cell.states.grid.times[peak]:>9.1f}"
            + (f"  {cell.iterations}" if cell.regime == "optimal" else "")
        )

    paths = emit_outputs(report, out_dir=args.out)
    print(f"solved in {elapsed:.1f}s; wrote {len(paths)} files to "
          f"{args.out or cfg.output_dir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
