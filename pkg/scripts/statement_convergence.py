"""Trace the typical-instance fractions as the gap proportion shrinks.

The five aggregate fractions measured on extremal alignment pairs have
asymptotic targets of 1/2 (agreement mismatches and split-image
disagreements), 1/4 (the two shared-image disagreement classes), and a
uniform 1/4 per symbol-pair cell, but the approach is slow: at
moderate delta the measured values sit far from the targets.  This
script runs the same seeded experiment down a delta ladder so the
drift toward the targets is visible in one table.

Example:
  python scripts/statement_convergence.py --trials 300 --seed 11
"""

from __future__ import annotations

import argparse

from alignuniq import ExperimentConfig, run_experiment

LADDER = [
    (1000, 0.05),
    (2000, 0.02),
    (5000, 0.01),
    (5000, 0.005),
    (5000, 0.002),
]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=300)
    parser.add_argument("--seed", type=int, default=11)
    parser.add_argument("--epsilon", type=float, default=0.2)
    parser.add_argument("--threads", type=int, default=4)
    args = parser.parse_args()

    header = (
        f"{'n':>6} {'delta':>7} {'i':>6} {'ii':>6} {'iii':>6} {'iv':>6} "
        f"{'v_00':>6} {'v_01':>6} {'v_10':>6} {'v_11':>6}"
    )
    print(header)
    print(f"{'target':>14} {0.5:>6} {0.5:>6} {0.25:>6} {0.25:>6} "
          f"{0.25:>6} {0.25:>6} {0.25:>6} {0.25:>6}")
    for n, delta in LADDER:
        config = ExperimentConfig(
            n=n,
            delta=delta,
            epsilon=args.epsilon,
            trials=args.trials,
            seed=args.seed,
            collect_statements=True,
        )
        means = run_experiment(config, workers=args.threads).statement_means
        cells = [
            means[key]
            for key in (
                "stmt_i",
                "stmt_ii",
                "stmt_iii",
                "stmt_iv",
                "stmt_v_00",
                "stmt_v_01",
                "stmt_v_10",
                "stmt_v_11",
            )
        ]
        shown = " ".join("   n/a" if c is None else f"{c:6.3f}" for c in cells)
        print(f"{n:>6} {delta:>7} {shown}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
