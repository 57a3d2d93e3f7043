#!/usr/bin/env python3
"""End-to-end demo with scripted endpoints: shows how the three metrics separate.

An endpoint that echoes the ground truth scores 1.0 everywhere; one that
restates the observations stays weakly correct but earns a low quality
score; one that answers nothing fails outright.

Usage: python3 scripts/mock_eval_demo.py [--height 2] [--count 50] [--icl none]
"""

import argparse

from hypotree.generator import GenConfig, derive_seed, generate_example
from hypotree.harness import ICL_SETTINGS, MockEndpoint, run_eval, run_results_rows
from hypotree.metrics import aggregate
from hypotree.storage import DatasetRecord


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--height", type=int, default=2)
    parser.add_argument("--count", type=int, default=50)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--icl", choices=ICL_SETTINGS, default="none")
    args = parser.parse_args()

    dataset = []
    for i in range(args.count):
        config = GenConfig(
            height=args.height, mode="multi", seed=derive_seed(args.seed, "demo", i)
        )
        dataset.append(DatasetRecord.from_example(f"ex{i:05d}", generate_example(config)))

    print(f"{'endpoint':<20} {'weak':>6} {'strong':>7} {'quality':>8}")
    for behavior in ("echo-truth", "echo-observations", "empty"):
        records = run_eval(dataset, MockEndpoint(behavior), icl=args.icl, run_seed=args.seed)
        report = aggregate(run_results_rows(records))
        row = report.rows[0]
        print(f"{behavior:<20} {row.weak_mean:>6.2f} {row.strong_mean:>7.2f} "
              f"{row.quality_mean:>8.3f}")


if __name__ == "__main__":
    main()
