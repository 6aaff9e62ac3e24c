"""Sweep the gap proportion and record uniqueness statistics.

Runs one seeded Monte Carlo experiment per delta on a fixed y length,
writes the summary rows as CSV, and optionally draws the mean
nonunique-fraction curve as SVG.

Example:
  python scripts/delta_sweep.py --n 300 --trials 2000 --seed 1 \
      --deltas 0.02 0.05 0.1 0.2 0.3 0.4 --out-dir results
"""

from __future__ import annotations

import argparse
import csv
from pathlib import Path

from alignuniq import ExperimentConfig, SUMMARY_CSV_HEADER, summary_csv_row, sweep
from alignuniq.svgplot import line_plot


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=300, help="length of y")
    parser.add_argument(
        "--deltas",
        type=float,
        nargs="+",
        default=[0.02, 0.05, 0.1, 0.2, 0.3, 0.4],
        help="gap proportions to sweep",
    )
    parser.add_argument("--epsilon", type=float, default=0.2)
    parser.add_argument("--trials", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--threads", type=int, default=4)
    parser.add_argument("--out-dir", default="results")
    parser.add_argument("--svg", action="store_true", help="also write the curve plot")
    args = parser.parse_args()

    configs = [
        ExperimentConfig(
            n=args.n,
            delta=delta,
            epsilon=args.epsilon,
            trials=args.trials,
            seed=args.seed,
        )
        for delta in args.deltas
    ]
    summaries = sweep(configs, workers=args.threads)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"delta_sweep_n{args.n}_seed{args.seed}.csv"
    with open(csv_path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(SUMMARY_CSV_HEADER)
        writer.writerows(summary_csv_row(s) for s in summaries)
    print(f"wrote {csv_path}")

    for summary in summaries:
        print(
            f"delta={summary.config.delta:<5} m={summary.m:<4} "
            f"mean_u_fraction={summary.mean_u_fraction:.4f} "
            f"mean_delta={summary.mean_delta:+.4f} "
            f"p_hat={summary.p_hat:.3f}"
        )

    if args.svg:
        points = sorted(
            (s.config.delta, s.mean_u_fraction) for s in summaries
        )
        svg_path = out_dir / f"delta_sweep_n{args.n}_seed{args.seed}.svg"
        svg_path.write_text(
            line_plot(
                points,
                title=f"mean nonunique fraction vs delta (n={args.n})",
                x_label="delta",
                y_label="mean nonunique fraction",
            ),
            encoding="utf-8",
        )
        print(f"wrote {svg_path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
