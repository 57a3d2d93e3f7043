"""Acceptance suite: one test per shipping criterion, tolerances pinned.

Each test prints a PASS line so `pytest -s tests/test_acceptance.py` reads as
a checklist. Expected values are either computed by independent oracles in
this file (brute-force closure, closed-form interval evaluation) or are
hand-checkable counts on the reference zoo world.
"""

import json
import random
import time

from hypotree.cli import main
from hypotree.generator import GenConfig, derive_seed, generate_example
from hypotree.harness import parse_response
from hypotree.language import parse_statement, render_axiom
from hypotree.metrics import (
    GradedExample,
    HypothesisSet,
    quality,
    quality_breakdown,
    strong_accuracy,
    weak_accuracy,
    wilson_interval,
)
from hypotree.ontology import (
    Membership,
    PropertyLiteral,
    PropertyRule,
    Subtype,
    canonical,
)
from hypotree.prover import close, explain, statement_fact
from hypotree.storage import read_dataset, write_jsonl

from conftest import ZOO_CANDIDATE_TEXT, ZOO_OBSERVATIONS, ZOO_TRUTH, ZOO_VISIBLE
from test_prover import oracle_closure


def _zoo():
    return GradedExample(list(ZOO_VISIBLE), list(ZOO_OBSERVATIONS), list(ZOO_TRUTH))


def test_worked_quality_example(zoo):
    started = time.monotonic()
    hypotheses = parse_response(ZOO_CANDIDATE_TEXT)
    breakdown = quality_breakdown(zoo, hypotheses)
    elapsed = time.monotonic() - started
    assert abs(breakdown.value - 2 / 3) < 1e-9
    assert breakdown.candidate_uses == 10
    assert breakdown.candidate_count == 5
    assert breakdown.truth_uses == 9
    assert breakdown.truth_count == 3
    assert elapsed < 1.0
    print(f"\nPASS worked quality example: q={breakdown.value:.10f} "
          f"(10/5)/(9/3), graded in {elapsed * 1000:.1f} ms")


def test_ground_truth_optimality():
    started = time.monotonic()
    checked = 0
    for height in (1, 2, 3, 4):
        for mode in ("single", "multi"):
            for i in range(125):
                seed = derive_seed(20_000, height, mode, i)
                example = generate_example(GenConfig(height=height, mode=mode, seed=seed))
                view = GradedExample(example.visible(), list(example.observations),
                                     list(example.truth))
                truth_set = HypothesisSet.of(example.truth)
                assert strong_accuracy(view, truth_set) is True
                assert quality(view, truth_set) == 1.0
                checked += 1
    elapsed = time.monotonic() - started
    assert checked == 1000
    assert elapsed < 60.0
    print(f"\nPASS ground-truth optimality: {checked} examples, "
          f"quality(truth)=1 exactly, {elapsed:.1f} s")


def test_dataset_statistics_reproduction():
    targets = {
        1: (9.0, 10.0, 3.0),
        2: (14.0, 11.8, 3.5),
        3: (25.5, 15.2, 4.6),
        4: (46.8, 20.0, 6.6),
    }
    lines = []
    for height, (t_axioms, t_obs, t_hyps) in targets.items():
        axioms = observations = hypotheses = 0
        for i in range(100):
            seed = derive_seed(30_000, height, i)
            example = generate_example(GenConfig(height=height, mode="multi", seed=seed))
            axioms += len(example.visible())
            observations += len(example.observations)
            hypotheses += len(example.truth)
        means = (axioms / 100, observations / 100, hypotheses / 100)
        for mean, target in zip(means, (t_axioms, t_obs, t_hyps)):
            assert 0.8 * target <= mean <= 1.2 * target, (
                f"height {height}: mean {mean:.2f} outside ±20% of {target}"
            )
        lines.append(f"  h={height}: axioms {means[0]:.1f}/{t_axioms} "
                     f"obs {means[1]:.1f}/{t_obs} hyps {means[2]:.2f}/{t_hyps}")
    print("\nPASS dataset statistics within ±20% of targets\n" + "\n".join(lines))


def test_reference_forest_hypothesis_counts(zoo):
    forest = explain(zoo.visible, zoo.truth, zoo.observations)
    assert forest is not None
    counts = {
        "membership": forest.premise_uses(Membership("Fae", "tiger")),
        "property": forest.premise_uses(PropertyRule("mammal", PropertyLiteral("hairy"))),
        "subtype": forest.premise_uses(Subtype("rodent", "mammal")),
    }
    assert counts == {"membership": 3, "property": 3, "subtype": 3}
    print(f"\nPASS reference forest: hypothesis leaf counts {counts}")


def test_prover_matches_bruteforce_oracle():
    rng = random.Random(40_000)
    for trial in range(200):
        height = rng.randint(1, 3)
        mode = rng.choice(["single", "multi"])
        example = generate_example(GenConfig(height=height, mode=mode,
                                             seed=rng.getrandbits(48)))
        visible = example.visible()
        statements = visible + list(example.truth)
        assert close(statements) == oracle_closure(statements)
        oracle_facts = oracle_closure(statements)
        visible_facts = oracle_closure(visible)
        forest = explain(visible, example.truth, example.observations)
        assert forest is not None
        for observation in example.observations:
            fact = statement_fact(observation)
            assert fact in oracle_facts
            assert fact not in visible_facts
            assert statement_fact(observation) not in close(visible)
    print("\nPASS prover-oracle equivalence on 200 random instances (height <= 3)")


def test_grammar_round_trip_10k():
    from hypotree import names

    rng = random.Random(50_000)
    for trial in range(10_000):
        kind = rng.choice(["property", "membership", "subtype"])
        if kind == "property":
            axiom = PropertyRule(
                rng.choice(names.CONCEPTS),
                PropertyLiteral(rng.choice(names.PROPERTIES), rng.random() < 0.8),
            )
        elif kind == "membership":
            axiom = Membership(rng.choice(names.MEMBERS), rng.choice(names.CONCEPTS))
        else:
            child, parent = rng.sample(list(names.CONCEPTS), 2)
            axiom = Subtype(child, parent)
        text = render_axiom(axiom, rng)
        assert parse_statement(text) == canonical(axiom), f"{axiom} -> {text}"
    forms = {
        parse_statement(t)
        for t in ("Each cat is a feline.", "Every cat is a feline.", "All cats are felines.")
    }
    assert forms == {Subtype("cat", "feline")}
    print("\nPASS grammar round-trip on 10k random axioms; all subtype forms agree")


def test_wilson_intervals_closed_form():
    import math

    z = 1.959964

    def reference(successes, trials):
        p = successes / trials
        denom = 1 + z * z / trials
        center = (p + z * z / (2 * trials)) / denom
        margin = (z / denom) * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials ** 2))
        return center - margin, center + margin

    cases = {(0, 100): (0.0, 0.0370), (50, 100): (0.4038, 0.5962), (100, 100): (0.9630, 1.0)}
    for (successes, trials), (expect_low, expect_high) in cases.items():
        low, high = wilson_interval(successes, trials)
        ref_low, ref_high = reference(successes, trials)
        assert abs(low - max(0.0, ref_low)) < 1e-6
        assert abs(high - min(1.0, ref_high)) < 1e-6
        assert abs(low - expect_low) < 1e-4
        assert abs(high - expect_high) < 1e-4
    print("\nPASS Wilson intervals match closed form at (0,100), (50,100), (100,100)")


def test_metric_ordering_fuzz():
    rng = random.Random(60_000)
    unused = Subtype("xolbit", "zorfee")  # names reserved out of generated worlds
    checked = 0
    while checked < 1000:
        height = rng.randint(1, 3)
        mode = rng.choice(["single", "multi"])
        config = GenConfig(
            height=height,
            mode=mode,
            seed=rng.getrandbits(48),
            concepts=tuple(c for c in GenConfig().concepts if c not in ("xolbit", "zorfee")),
        )
        example = generate_example(config)
        view = GradedExample(example.visible(), list(example.observations),
                             list(example.truth))
        variants = [
            HypothesisSet.of(example.truth),
            HypothesisSet.of(example.truth[:-1]),
            HypothesisSet.of(list(example.observations)),
            HypothesisSet.of(example.truth, opaque=["Lompee is Frank."]),
            HypothesisSet.of([unused]),
        ]
        for hypotheses in variants:
            weak = weak_accuracy(view, hypotheses)
            strong = strong_accuracy(view, hypotheses)
            q = quality(view, hypotheses)
            if strong:
                assert weak
            assert (q == 0.0) == (not weak)
            checked += 1
            if checked >= 1000:
                break
        # padding a weak-correct set with a provably unused hypothesis
        # strictly lowers quality
        base = HypothesisSet.of(example.truth)
        padded = HypothesisSet.of(list(example.truth) + [unused])
        assert quality(view, padded) < quality(view, base)
    print(f"\nPASS metric ordering fuzz on {checked} (example, hypothesis-set) pairs")


def test_end_to_end_mock_harness(tmp_path):
    dataset_path = tmp_path / "dataset.jsonl"
    assert main(["generate", "--height", "2", "--mode", "multi", "--count", "100",
                 "--seed", "424242", "--out", str(dataset_path)]) == 0
    assert len(read_dataset(dataset_path)) == 100

    truth_endpoint = tmp_path / "truth.json"
    truth_endpoint.write_text(json.dumps({"type": "mock", "behavior": "echo-truth"}))
    run_a = tmp_path / "run-truth"
    assert main(["eval", "--dataset", str(dataset_path), "--endpoint-config",
                 str(truth_endpoint), "--icl", "none", "--out", str(run_a),
                 "--workers", "1"]) == 0
    summary = json.loads((run_a / "summary.json").read_text())
    (row,) = summary["rows"]
    assert row["weak_mean"] == 1.0
    assert row["strong_mean"] == 1.0
    assert abs(row["weak_interval"][0] - 0.9630) < 1e-3
    assert row["weak_interval"][1] == 1.0

    obs_endpoint = tmp_path / "obs.json"
    obs_endpoint.write_text(json.dumps({"type": "mock", "behavior": "echo-observations"}))
    run_b = tmp_path / "run-obs"
    assert main(["eval", "--dataset", str(dataset_path), "--endpoint-config",
                 str(obs_endpoint), "--icl", "none", "--out", str(run_b),
                 "--workers", "1"]) == 0
    summary_b = json.loads((run_b / "summary.json").read_text())
    (row_b,) = summary_b["rows"]
    assert row_b["weak_mean"] == 1.0
    assert row_b["quality_mean"] < 1.0
    print(f"\nPASS end-to-end mock harness: echo-truth weak/strong 1.0 with interval "
          f"[{row['weak_interval'][0]:.4f}, 1.0]; echo-observations weak 1.0 with "
          f"mean quality {row_b['quality_mean']:.3f} < 1")
