import json

import pytest

from hypotree.cli import main
from hypotree.language import render_axiom
from hypotree.storage import (
    DatasetRecord,
    read_dataset,
    read_jsonl,
    statement_from_dict,
    statement_to_dict,
    write_jsonl,
)


def _generate(tmp_path, *extra, count=6, name="ds.jsonl"):
    out = tmp_path / name
    code = main(
        ["generate", "--height", "2", "--mode", "multi", "--count", str(count),
         "--seed", "7", "--out", str(out), *extra]
    )
    assert code == 0
    return out


def _truth_responses(dataset_path, tmp_path, name="responses.jsonl"):
    rows = []
    for record in read_dataset(dataset_path):
        text = " ".join(render_axiom(s) for s in record.truth)
        rows.append({"id": record.id, "response": text})
    path = tmp_path / name
    write_jsonl(path, rows)
    return path


def test_generate_is_deterministic(tmp_path):
    a = _generate(tmp_path, name="a.jsonl")
    b = _generate(tmp_path, name="b.jsonl")
    assert a.read_bytes() == b.read_bytes()


def test_generate_deterministic_across_processes(tmp_path):
    # Hash randomization changes set iteration order between processes; the
    # output must not depend on it.
    import os
    import subprocess
    import sys

    outputs = []
    for hash_seed in ("1", "4242"):
        out = tmp_path / f"proc-{hash_seed}.jsonl"
        env = dict(os.environ, PYTHONHASHSEED=hash_seed)
        subprocess.run(
            [sys.executable, "-m", "hypotree.cli", "generate", "--height", "3",
             "--mode", "multi", "--count", "3", "--seed", "11", "--out", str(out)],
            check=True, env=env, capture_output=True,
        )
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]


def test_dataset_round_trips(tmp_path):
    path = _generate(tmp_path)
    records = read_dataset(path)
    for record in records:
        again = DatasetRecord.from_dict(record.to_dict())
        assert again == record
    for record in records:
        for statement in record.axioms + record.truth + record.observations:
            assert statement_from_dict(statement_to_dict(statement)) == statement


def test_generate_then_grade_truths_all_strong(tmp_path, capsys):
    dataset = _generate(tmp_path)
    responses = _truth_responses(dataset, tmp_path)
    out = tmp_path / "results.jsonl"
    code = main(["grade", "--dataset", str(dataset), "--responses", str(responses),
                 "--out", str(out)])
    assert code == 0
    rows = read_jsonl(out)
    assert len(rows) == 6
    assert all(row["weak"] and row["strong"] and row["quality"] == 1.0 for row in rows)


def test_grade_missing_ids_warns_but_succeeds(tmp_path, capsys):
    dataset = _generate(tmp_path)
    responses = _truth_responses(dataset, tmp_path)
    rows = read_jsonl(responses)
    write_jsonl(responses, rows[:-2])
    out = tmp_path / "results.jsonl"
    code = main(["grade", "--dataset", str(dataset), "--responses", str(responses),
                 "--out", str(out)])
    assert code == 0
    assert len(read_jsonl(out)) == 4
    assert "2 example(s) had no response" in capsys.readouterr().out


def test_grade_counts_opaque_responses(tmp_path):
    dataset = _generate(tmp_path, count=2)
    rows = [{"id": r.id, "response": "Lompee is Frank."} for r in read_dataset(dataset)]
    responses = tmp_path / "responses.jsonl"
    write_jsonl(responses, rows)
    out = tmp_path / "results.jsonl"
    assert main(["grade", "--dataset", str(dataset), "--responses", str(responses),
                 "--out", str(out)]) == 0
    for row in read_jsonl(out):
        assert row["weak"] is False
        assert row["quality"] == 0.0
        assert row["opaque_count"] == 1


def test_stats_dataset_mode(tmp_path, capsys):
    dataset = _generate(tmp_path)
    plot = tmp_path / "plot.json"
    code = main(["stats", "--dataset", str(dataset), "--plot-data", str(plot)])
    assert code == 0
    out = capsys.readouterr().out
    assert "axioms" in out and "hyps" in out
    rows = json.loads(plot.read_text())
    assert rows[0]["count"] == 6


def test_stats_results_mode_and_subtask_grouping(tmp_path, capsys):
    single = tmp_path / "single.jsonl"
    assert main(["generate", "--height", "1", "--mode", "single", "--count", "9",
                 "--seed", "3", "--out", str(single)]) == 0
    responses = _truth_responses(single, tmp_path)
    results = tmp_path / "results.jsonl"
    assert main(["grade", "--dataset", str(single), "--responses", str(responses),
                 "--out", str(results)]) == 0
    assert main(["stats", "--results", str(results), "--group-by", "subtask"]) == 0
    out = capsys.readouterr().out
    assert "infer-" in out


def test_eval_with_mock_endpoint(tmp_path, capsys):
    dataset = _generate(tmp_path)
    endpoint = tmp_path / "endpoint.json"
    endpoint.write_text(json.dumps({"type": "mock", "behavior": "echo-truth"}))
    run_dir = tmp_path / "run"
    code = main(["eval", "--dataset", str(dataset), "--endpoint-config", str(endpoint),
                 "--icl", "none", "--out", str(run_dir), "--workers", "1"])
    assert code == 0
    summary = json.loads((run_dir / "summary.json").read_text())
    assert summary["rows"][0]["weak_mean"] == 1.0
    assert summary["rows"][0]["strong_mean"] == 1.0
    assert (run_dir / "records.jsonl").exists()
    assert (run_dir / "requests.jsonl").exists()


def test_eval_icl_prompts_include_eight_demos(tmp_path):
    dataset = _generate(tmp_path, count=2)
    endpoint = tmp_path / "endpoint.json"
    endpoint.write_text(json.dumps({"type": "mock", "behavior": "echo-truth"}))
    run_dir = tmp_path / "run"
    code = main(["eval", "--dataset", str(dataset), "--endpoint-config", str(endpoint),
                 "--icl", "in-dist", "--out", str(run_dir), "--workers", "1"])
    assert code == 0
    request = read_jsonl(run_dir / "requests.jsonl")[0]
    assert request["user"].count("Q: ") == 9


def test_eval_icl_ood_uses_height_one_demos(tmp_path):
    dataset = _generate(tmp_path, count=1)
    endpoint = tmp_path / "endpoint.json"
    endpoint.write_text(json.dumps({"type": "mock", "behavior": "echo-truth"}))
    run_dir = tmp_path / "run"
    assert main(["eval", "--dataset", str(dataset), "--endpoint-config", str(endpoint),
                 "--icl", "ood", "--out", str(run_dir), "--workers", "1"]) == 0
    request = read_jsonl(run_dir / "requests.jsonl")[0]
    demo_blocks = request["user"].split("Q: ")[1:-1]
    assert len(demo_blocks) == 8
    # height-1 single demos have at most one hidden axiom: one answer sentence
    for block in demo_blocks:
        answer = block.split("The hypotheses are:")[1]
        assert answer.count(".") == 1


def test_truth_responses_all_strong_across_flag_matrix(tmp_path):
    cases = [
        ("1", "single", "random", "mixed"),
        ("2", "single", "infer-property", "mixed"),
        ("2", "single", "infer-membership", "mixed"),
        ("2", "single", "infer-subtype", "hide-edge"),
        ("2", "single", "infer-subtype", "fresh-supertype"),
        ("3", "multi", "random", "mixed"),
        ("2", "multi", "random", "fresh-supertype"),
        ("2", "multi", "random", "hide-edge"),
    ]
    for i, (height, mode, subtask, style) in enumerate(cases):
        dataset = tmp_path / f"m{i}.jsonl"
        assert main(["generate", "--height", height, "--mode", mode, "--subtask", subtask,
                     "--subtype-style", style, "--count", "4", "--seed", str(i),
                     "--out", str(dataset)]) == 0
        responses = _truth_responses(dataset, tmp_path, name=f"m{i}-resp.jsonl")
        out = tmp_path / f"m{i}-results.jsonl"
        assert main(["grade", "--dataset", str(dataset), "--responses", str(responses),
                     "--out", str(out)]) == 0
        rows = read_jsonl(out)
        assert rows and all(r["strong"] and r["quality"] == 1.0 for r in rows), (
            f"flag combination {cases[i]} not all-strong"
        )


def test_grade_reference_candidate_through_cli(tmp_path):
    from conftest import ZOO_CANDIDATE_TEXT, ZOO_OBSERVATIONS, ZOO_TRUTH, ZOO_VISIBLE

    record = DatasetRecord(
        id="zoo",
        seed=0,
        height=3,
        mode="multi",
        subtasks=("infer-membership", "infer-property", "infer-subtype"),
        axioms=list(ZOO_VISIBLE),
        observations=list(ZOO_OBSERVATIONS),
        truth=list(ZOO_TRUTH),
        world_text=" ".join(render_axiom(a) for a in ZOO_VISIBLE),
        observations_text=" ".join(render_axiom(o) for o in ZOO_OBSERVATIONS),
    )
    dataset = tmp_path / "zoo.jsonl"
    write_jsonl(dataset, [record.to_dict()])
    responses = tmp_path / "zoo-resp.jsonl"
    write_jsonl(responses, [{"id": "zoo", "response": ZOO_CANDIDATE_TEXT}])
    out = tmp_path / "zoo-results.jsonl"
    assert main(["grade", "--dataset", str(dataset), "--responses", str(responses),
                 "--out", str(out)]) == 0
    (row,) = read_jsonl(out)
    assert row["weak"] is True
    assert row["strong"] is False
    assert abs(row["quality"] - 2 / 3) < 1e-9


def test_stats_on_eval_run_records(tmp_path, capsys):
    dataset = _generate(tmp_path, count=4)
    endpoint = tmp_path / "endpoint.json"
    endpoint.write_text(json.dumps({"type": "mock", "behavior": "echo-truth"}))
    run_dir = tmp_path / "run"
    assert main(["eval", "--dataset", str(dataset), "--endpoint-config", str(endpoint),
                 "--icl", "none", "--out", str(run_dir), "--workers", "1"]) == 0
    capsys.readouterr()
    assert main(["stats", "--results", str(run_dir / "records.jsonl")]) == 0
    assert "1.000" in capsys.readouterr().out


def test_eval_demos_per_question_flag(tmp_path):
    dataset = _generate(tmp_path, count=2)
    endpoint = tmp_path / "endpoint.json"
    endpoint.write_text(json.dumps({"type": "mock", "behavior": "echo-truth"}))
    run_dir = tmp_path / "run"
    assert main(["eval", "--dataset", str(dataset), "--endpoint-config", str(endpoint),
                 "--icl", "ood", "--out", str(run_dir), "--workers", "1",
                 "--demos-per-question"]) == 0
    requests_log = read_jsonl(run_dir / "requests.jsonl")
    payloads = {row["id"]: row["user"] for row in requests_log}
    assert len(payloads) == 2
    # per-question demos differ between questions
    demo_parts = [p.rsplit("Q: ", 1)[0] for p in payloads.values()]
    assert demo_parts[0] != demo_parts[1]


def test_infeasible_config_exits_two(tmp_path, capsys):
    code = main(["generate", "--height", "1", "--subtask", "infer-subtype",
                 "--subtype-style", "hide-edge", "--count", "2",
                 "--out", str(tmp_path / "x.jsonl")])
    assert code == 2
    assert "no in-tree edge at height 1" in capsys.readouterr().err


def test_usage_errors_exit_one(capsys):
    assert main(["stats"]) == 1
    assert main(["generate", "--height", "not-a-number", "--out", "x"]) == 1
    assert main(["frobnicate"]) == 1


def test_missing_files_exit_three(tmp_path, capsys):
    code = main(["grade", "--dataset", str(tmp_path / "absent.jsonl"),
                 "--responses", str(tmp_path / "absent2.jsonl"),
                 "--out", str(tmp_path / "r.jsonl")])
    assert code == 3


def test_stats_empty_results_exit_three(tmp_path):
    empty = tmp_path / "empty.jsonl"
    empty.write_text("")
    assert main(["stats", "--results", str(empty)]) == 3
