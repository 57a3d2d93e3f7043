"""Command-line surface: generate, grade, eval, stats.

Exit codes: 0 success, 1 usage error, 2 infeasible configuration, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from .generator import (
    GenConfig,
    Infeasible,
    PoolExhausted,
    derive_seed,
    generate_example,
)
from .harness import (
    DEFAULT_SYSTEM_PROMPT,
    ICL_SETTINGS,
    endpoint_from_config,
    grade_response,
    run_eval,
    run_results_rows,
)
from .metrics import EmptyGroup, aggregate
from .storage import (
    DatasetRecord,
    read_dataset,
    read_jsonl,
    read_responses,
    write_dataset,
    write_jsonl,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_IO = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2; we reserve that
        raise _UsageError(message)


def build_parser() -> _Parser:
    parser = _Parser(prog="hypotree", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a dataset of reasoning examples")
    gen.add_argument("--height", type=int, default=1)
    gen.add_argument("--mode", choices=("single", "multi"), default="single")
    gen.add_argument("--count", type=int, default=100)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument(
        "--subtask",
        choices=("random", "infer-property", "infer-membership", "infer-subtype"),
        default="random",
    )
    gen.add_argument(
        "--subtype-style",
        choices=("hide-edge", "fresh-supertype", "mixed"),
        default="mixed",
    )
    gen.add_argument("--negation-prob", type=float, default=0.2)
    gen.add_argument("--out", required=True)

    grd = sub.add_parser("grade", help="grade stored responses against a dataset")
    grd.add_argument("--dataset", required=True)
    grd.add_argument("--responses", required=True)
    grd.add_argument("--out", required=True)

    ev = sub.add_parser("eval", help="query an endpoint over a dataset and grade it")
    ev.add_argument("--dataset", required=True)
    ev.add_argument("--endpoint-config", required=True)
    ev.add_argument("--icl", choices=ICL_SETTINGS, default="none")
    ev.add_argument("--out", required=True, help="run directory")
    ev.add_argument("--seed", type=int, default=0)
    ev.add_argument("--workers", type=int, default=4)
    ev.add_argument("--demos-per-question", action="store_true")

    st = sub.add_parser("stats", help="summarize a dataset or a results file")
    st.add_argument("--dataset")
    st.add_argument("--results")
    st.add_argument("--group-by", choices=("height", "subtask"), default="height")
    st.add_argument("--plot-data", help="also write rows as JSON for external charting")
    return parser


def cmd_generate(args) -> int:
    config = GenConfig(
        height=args.height,
        mode=args.mode,
        subtask=args.subtask,
        subtype_style=args.subtype_style,
        negation_prob=args.negation_prob,
    )
    try:
        config.validate()
    except ValueError as err:
        raise _UsageError(str(err))
    records = []
    for i in range(args.count):
        example_config = replace(config, seed=derive_seed(args.seed, "example", i))
        example = generate_example(example_config)
        records.append(DatasetRecord.from_example(f"ex{i:05d}", example))
    write_dataset(args.out, records)
    print(f"wrote {len(records)} examples to {args.out}")
    return EXIT_OK


def _print_report(report, label: str) -> None:
    print(f"{label:<10} {'n':>5} {'weak':>22} {'strong':>22} {'quality':>8}")
    for row in report.rows:
        weak = f"{row.weak_mean:.3f} [{row.weak_interval[0]:.3f}, {row.weak_interval[1]:.3f}]"
        strong = (
            f"{row.strong_mean:.3f} [{row.strong_interval[0]:.3f}, {row.strong_interval[1]:.3f}]"
        )
        print(f"{row.group!s:<10} {row.count:>5} {weak:>22} {strong:>22} {row.quality_mean:>8.3f}")


def cmd_grade(args) -> int:
    dataset = read_dataset(args.dataset)
    responses = read_responses(args.responses)
    rows = []
    missing = 0
    for record in dataset:
        if record.id not in responses:
            missing += 1
            continue
        result, hypotheses = grade_response(record, responses[record.id])
        rows.append(
            {
                "id": record.id,
                "height": record.height,
                "subtasks": list(record.subtasks),
                "weak": result.weak,
                "strong": result.strong,
                "quality": result.quality,
                "opaque_count": len(hypotheses.opaque),
            }
        )
    write_jsonl(args.out, rows)
    if rows:
        _print_report(aggregate(rows), "height")
    if missing:
        print(f"warning: {missing} example(s) had no response and were left ungraded")
    return EXIT_OK


def cmd_eval(args) -> int:
    dataset = read_dataset(args.dataset)
    with open(args.endpoint_config, "r", encoding="utf-8") as fh:
        endpoint_config = json.load(fh)
    endpoint = endpoint_from_config(endpoint_config)
    system_prompt = endpoint_config.get("system_prompt", DEFAULT_SYSTEM_PROMPT)
    run_dir = Path(args.out)
    run_dir.mkdir(parents=True, exist_ok=True)
    records = run_eval(
        dataset,
        endpoint,
        icl=args.icl,
        out_path=run_dir / "records.jsonl",
        system_prompt=system_prompt,
        run_seed=args.seed,
        demos_per_question=args.demos_per_question,
        workers=args.workers,
        log_path=run_dir / "requests.jsonl",
    )
    rows = run_results_rows(records)
    report = aggregate(rows)
    _print_report(report, "height")
    summary = {
        "count": len(rows),
        "icl": args.icl,
        "rows": [
            {
                "group": row.group,
                "count": row.count,
                "weak_mean": row.weak_mean,
                "weak_interval": list(row.weak_interval),
                "strong_mean": row.strong_mean,
                "strong_interval": list(row.strong_interval),
                "quality_mean": row.quality_mean,
            }
            for row in report.rows
        ],
    }
    with (run_dir / "summary.json").open("w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
    return EXIT_OK


def _dataset_stats(records: list[DatasetRecord], group_by: str) -> list[dict]:
    groups: dict[object, list[DatasetRecord]] = {}
    for record in records:
        if group_by == "height":
            key: object = record.height
        else:
            key = ",".join(sorted(set(record.subtasks)))
        groups.setdefault(key, []).append(record)
    rows = []
    for key in sorted(groups, key=repr):
        members = groups[key]
        n = len(members)
        rows.append(
            {
                "group": key,
                "count": n,
                "mean_axioms": sum(len(r.axioms) for r in members) / n,
                "mean_observations": sum(len(r.observations) for r in members) / n,
                "mean_hypotheses": sum(len(r.truth) for r in members) / n,
            }
        )
    return rows


def cmd_stats(args) -> int:
    if bool(args.dataset) == bool(args.results):
        raise _UsageError("pass exactly one of --dataset or --results")
    if args.dataset:
        records = read_dataset(args.dataset)
        if not records:
            print("empty dataset", file=sys.stderr)
            return EXIT_IO
        rows = _dataset_stats(records, args.group_by)
        print(f"{'group':<10} {'n':>5} {'axioms':>8} {'obs':>8} {'hyps':>8}")
        for row in rows:
            print(
                f"{row['group']!s:<10} {row['count']:>5} {row['mean_axioms']:>8.2f} "
                f"{row['mean_observations']:>8.2f} {row['mean_hypotheses']:>8.2f}"
            )
    else:
        results = read_jsonl(args.results)
        if not results:
            print("empty results file", file=sys.stderr)
            return EXIT_IO
        if args.group_by == "subtask":
            key = lambda r: ",".join(sorted(set(r.get("subtasks", []))))
        else:
            key = lambda r: r["height"]
        report = aggregate(results, key=key)
        _print_report(report, args.group_by)
        rows = [
            {
                "group": row.group,
                "count": row.count,
                "weak_mean": row.weak_mean,
                "weak_interval": list(row.weak_interval),
                "strong_mean": row.strong_mean,
                "strong_interval": list(row.strong_interval),
                "quality_mean": row.quality_mean,
            }
            for row in report.rows
        ]
    if args.plot_data:
        with open(args.plot_data, "w", encoding="utf-8") as fh:
            json.dump(rows, fh, indent=2, sort_keys=True)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "generate":
            return cmd_generate(args)
        if args.command == "grade":
            return cmd_grade(args)
        if args.command == "eval":
            return cmd_eval(args)
        return cmd_stats(args)
    except _UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except Infeasible as err:
        print(f"infeasible configuration: {err}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except PoolExhausted as err:
        print(f"infeasible configuration: {err}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except EmptyGroup as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    except (OSError, json.JSONDecodeError) as err:
        print(f"i/o error: {err}", file=sys.stderr)
        return EXIT_IO
    except KeyError as err:
        print(f"malformed file: missing field {err}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
