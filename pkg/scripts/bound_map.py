"""Map where the closed-form probability bound carries information.

Evaluates the bound over a (delta, epsilon) grid at fixed n, writes the
full grid as CSV, and prints the informative cells (positive
denominator and value below one).  At workbench scales everything is
vacuous; informative cells appear only for very small delta, small
epsilon, and very large n, so the defaults scan a logarithmic delta
axis down to 1e-10.

Example:
  python scripts/bound_map.py --n 1000000000 --out-dir results
"""

from __future__ import annotations

import argparse
import csv
from pathlib import Path

from alignuniq import theorem_bound


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=10**9, help="length of y")
    parser.add_argument(
        "--deltas",
        type=float,
        nargs="+",
        default=[10.0**-k for k in range(1, 11)],
        help="gap proportions to scan",
    )
    parser.add_argument(
        "--epsilons",
        type=float,
        nargs="+",
        default=[0.01, 0.02, 0.05, 0.08, 0.1, 0.2, 0.5],
        help="threshold parameters to scan",
    )
    parser.add_argument("--out-dir", default="results")
    args = parser.parse_args()

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"bound_map_n{args.n}.csv"

    informative = []
    with open(csv_path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(
            ("n", "delta", "epsilon", "numerator", "denominator", "raw", "vacuous")
        )
        for delta in args.deltas:
            for epsilon in args.epsilons:
                report = theorem_bound(args.n, delta, epsilon)
                writer.writerow(
                    (
                        report.n,
                        report.delta,
                        report.epsilon,
                        report.numerator,
                        report.denominator,
                        report.raw,
                        "true" if report.vacuous else "false",
                    )
                )
                if not report.vacuous:
                    informative.append(report)
    print(f"wrote {csv_path}")

    if not informative:
        print(f"no informative cells at n={args.n}; the bound is vacuous everywhere scanned")
    else:
        print(f"{len(informative)} informative cells:")
        for report in informative:
            print(
                f"  delta={report.delta:<8g} epsilon={report.epsilon:<5g} "
                f"bound={report.raw:.4f}"
            )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
