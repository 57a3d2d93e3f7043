#!/usr/bin/env python3
"""Generate multi-hypothesis datasets for heights 1-4 and print their statistics.

Usage: python3 scripts/reproduce_stats.py [--count 100] [--seed 0] [--out-dir data/]
"""

import argparse
from pathlib import Path

from hypotree.generator import GenConfig, derive_seed, generate_example
from hypotree.storage import DatasetRecord, write_dataset


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out-dir", default=None, help="also write the datasets here")
    args = parser.parse_args()

    print(f"{'height':>6} {'axioms':>8} {'observations':>13} {'hypotheses':>11}")
    for height in (1, 2, 3, 4):
        records = []
        for i in range(args.count):
            config = GenConfig(
                height=height, mode="multi", seed=derive_seed(args.seed, "stats", height, i)
            )
            records.append(DatasetRecord.from_example(f"h{height}-{i:05d}", generate_example(config)))
        axioms = sum(len(r.axioms) for r in records) / len(records)
        observations = sum(len(r.observations) for r in records) / len(records)
        hypotheses = sum(len(r.truth) for r in records) / len(records)
        print(f"{height:>6} {axioms:>8.1f} {observations:>13.1f} {hypotheses:>11.2f}")
        if args.out_dir:
            out = Path(args.out_dir) / f"multi-h{height}.jsonl"
            write_dataset(out, records)
            print(f"       wrote {out}")


if __name__ == "__main__":
    main()
