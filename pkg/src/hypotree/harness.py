"""Prompt construction, model endpoints, response parsing, and evaluation runs.

Prompts follow a chat-completion shape: the output-format contract is the
system message, the rendered example (optionally preceded by eight worked
demonstrations with step-by-step proofs) is the user message. Raw responses
are stored verbatim so failures can be inspected by hand later.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
import re
import time
from dataclasses import dataclass, field
from pathlib import Path
from threading import Lock

from .generator import GenConfig, SUBTASKS, derive_seed, generate_example
from .language import Unparseable, parse_statement, render_axiom, strip_list_marker
from .metrics import EvalResult, HypothesisSet, grade
from .ontology import Statement
from .prover import AXIOM, ProofTree, explain
from .storage import (
    DatasetRecord,
    append_jsonl,
    read_jsonl,
    statement_to_dict,
)

DEFAULT_SYSTEM_PROMPT = (
    "You will be given a world model and a set of observations. Produce "
    "hypotheses that explain all observations. Reply with one hypothesis per "
    "line and nothing else, using the same sentence forms as the world model, "
    'for example: "All wumpuses are blue." or "Every wumpus is a lempus." or '
    '"Alex is a wumpus."'
)

ICL_SETTINGS = ("none", "in-dist", "ood")
DEMO_COUNT = 8


class HarnessError(Exception):
    pass


class AuthMissing(HarnessError):
    pass


class EndpointError(HarnessError):
    def __init__(self, message: str, status: int | None = None):
        super().__init__(message)
        self.status = status


class Timeout(EndpointError):
    pass


@dataclass
class PromptBundle:
    system: str
    user: str
    demos: tuple[str, ...] = ()
    example_id: str = ""

    def user_payload(self) -> str:
        parts = list(self.demos) + [f"Q: {self.user}\nA:"]
        return "\n\n".join(parts)

    def sha256(self) -> str:
        blob = json.dumps(
            {"system": self.system, "demos": list(self.demos), "user": self.user},
            sort_keys=True,
        )
        return hashlib.sha256(blob.encode()).hexdigest()


# --- Chain-of-thought rendering ---------------------------------------------------


def _linearize(tree: ProofTree) -> list[str]:
    if tree.rule == AXIOM:
        return [render_axiom(tree.statement)]
    left, right = tree.premises
    return _linearize(left) + _linearize(right) + [f"So {render_axiom(tree.conclusion)}"]


def render_cot(example: DatasetRecord) -> str:
    """Step-by-step proofs of every observation, then the answer line."""
    forest = explain(example.axioms, example.truth, example.observations)
    if forest is None:
        raise HarnessError(f"example {example.id} is not explainable by its truth")
    lines = []
    for tree in forest.trees:
        lines.append(" ".join(_linearize(tree)))
    answer = " ".join(render_axiom(s) for s in example.truth)
    lines.append(f"The hypotheses are: {answer}")
    return " ".join(lines)


def _example_names(record: DatasetRecord) -> tuple[set[str], set[str], set[str]]:
    concepts: set[str] = set()
    members: set[str] = set()
    properties: set[str] = set()
    for statement in list(record.axioms) + list(record.truth) + list(record.observations):
        data = statement_to_dict(statement)
        kind = data["kind"]
        if kind == "property":
            concepts.add(data["concept"])
            properties.add(data["name"])
        elif kind in ("membership", "concept-fact"):
            members.add(data["member"])
            concepts.add(data["concept"])
        elif kind == "subtype":
            concepts.update((data["child"], data["parent"]))
        elif kind == "property-fact":
            members.add(data["member"])
            properties.add(data["name"])
    return concepts, members, properties


def build_demos(
    setting: str, target: DatasetRecord, rng: random.Random, base: GenConfig | None = None
) -> tuple[str, ...]:
    """Eight demonstration blocks covering all three subtask kinds.

    In-distribution demos match the target's height and mode;
    out-of-distribution demos are height-1 single-hypothesis examples.
    Demo name pools exclude every name in the target example so a model
    echoing demo vocabulary is caught as hallucination.
    """
    if setting not in ("in-dist", "ood"):
        raise ValueError(f"unknown demo setting {setting!r}")
    base = base or GenConfig()
    used_concepts, used_members, used_properties = _example_names(target)
    concepts = tuple(c for c in base.concepts if c not in used_concepts)
    members = tuple(m for m in base.members if m not in used_members)
    properties = tuple(p for p in base.properties if p not in used_properties)

    blocks = []
    for i in range(DEMO_COUNT):
        if setting == "in-dist":
            height, mode = target.height, target.mode
        else:
            height, mode = 1, "single"
        config = GenConfig(
            height=height,
            mode=mode,
            subtask=SUBTASKS[i % len(SUBTASKS)] if mode == "single" else "random",
            seed=rng.getrandbits(63),
            concepts=concepts,
            members=members,
            properties=properties,
        )
        demo = DatasetRecord.from_example(f"demo-{i}", generate_example(config))
        cot = render_cot(demo)
        blocks.append(f"Q: {demo.world_text} {demo.observations_text}\nA: {cot}")
    return tuple(blocks)


# --- Endpoints ---------------------------------------------------------------------


@dataclass
class ModelEndpoint:
    """Chat-completion style HTTP endpoint; the auth token stays in the environment."""

    base_url: str
    model: str
    auth_env: str = "MODEL_API_KEY"
    timeout: float = 60.0
    max_retries: int = 3
    temperature: float = 0.0
    backoff: float = 1.0

    RETRYABLE = (429, 500, 502, 503, 504)

    def describe(self) -> dict:
        return {"type": "http", "base_url": self.base_url, "model": self.model}

    def complete(self, bundle: PromptBundle, record: DatasetRecord | None = None) -> str:
        token = os.environ.get(self.auth_env)
        if not token:
            raise AuthMissing(f"environment variable {self.auth_env} is not set")
        import requests

        body = {
            "model": self.model,
            "temperature": self.temperature,
            "messages": [
                {"role": "system", "content": bundle.system},
                {"role": "user", "content": bundle.user_payload()},
            ],
        }
        url = self.base_url.rstrip("/") + "/chat/completions"
        last: Exception | None = None
        for attempt in range(self.max_retries + 1):
            if attempt:
                _sleep(self.backoff * (2 ** (attempt - 1)))
            try:
                response = requests.post(
                    url,
                    json=body,
                    headers={"Authorization": f"Bearer {token}"},
                    timeout=self.timeout,
                )
            except requests.Timeout as err:
                last = Timeout(f"request timed out after {self.timeout}s: {err}")
                continue
            except requests.RequestException as err:
                last = EndpointError(f"request failed: {err}")
                continue
            if response.status_code == 200:
                data = response.json()
                return data["choices"][0]["message"]["content"]
            last = EndpointError(f"status {response.status_code}", response.status_code)
            if response.status_code not in self.RETRYABLE:
                raise last
        raise last if last else EndpointError("no attempts made")


def _sleep(seconds: float) -> None:
    time.sleep(seconds)


@dataclass
class MockEndpoint:
    """Scripted endpoint for offline runs and tests.

    Behaviors: "echo-truth" answers with the ground-truth sentences,
    "echo-observations" restates every observation, "empty" returns nothing,
    "fixed" always returns `text`, "table" looks the response up by example id.
    """

    behavior: str = "echo-truth"
    text: str = ""
    table: dict[str, str] = field(default_factory=dict)

    def describe(self) -> dict:
        return {"type": "mock", "behavior": self.behavior}

    def complete(self, bundle: PromptBundle, record: DatasetRecord | None = None) -> str:
        if self.behavior == "echo-truth":
            return " ".join(render_axiom(s) for s in record.truth)
        if self.behavior == "echo-observations":
            return " ".join(render_axiom(f) for f in record.observations)
        if self.behavior == "empty":
            return ""
        if self.behavior == "fixed":
            return self.text
        if self.behavior == "table":
            if bundle.example_id not in self.table:
                raise EndpointError(f"no scripted response for {bundle.example_id}")
            return self.table[bundle.example_id]
        raise ValueError(f"unknown mock behavior {self.behavior!r}")


def endpoint_from_config(data: dict):
    kind = data.get("type", "http")
    if kind == "mock":
        return MockEndpoint(
            behavior=data.get("behavior", "echo-truth"),
            text=data.get("text", ""),
            table=data.get("table", {}),
        )
    if kind == "http":
        return ModelEndpoint(
            base_url=data["base_url"],
            model=data["model"],
            auth_env=data.get("auth_env", "MODEL_API_KEY"),
            timeout=data.get("timeout", 60.0),
            max_retries=data.get("max_retries", 3),
            temperature=data.get("temperature", 0.0),
        )
    raise ValueError(f"unknown endpoint type {kind!r}")


def query_model(endpoint, bundle: PromptBundle, record: DatasetRecord | None = None) -> str:
    """One completion for `bundle`; retry behavior lives in the endpoint."""
    return endpoint.complete(bundle, record)


# --- Response parsing ---------------------------------------------------------------

_THINK_BLOCK = re.compile(r"<think>.*?</think>", re.DOTALL | re.IGNORECASE)
_THINK_OPEN = re.compile(r"<think>.*\Z", re.DOTALL | re.IGNORECASE)
_ANSWER_PREFIX = re.compile(
    r"^\s*(?:final\s+)?(?:the\s+)?(?:answer|hypotheses|hypothesis)(?:\s+(?:is|are))?\s*:\s*",
    re.IGNORECASE,
)


def parse_response(text: str) -> HypothesisSet:
    """Split a raw model response into parsed hypotheses and opaque lines."""
    text = _THINK_BLOCK.sub(" ", text)
    text = _THINK_OPEN.sub(" ", text)
    parsed: list[Statement] = []
    opaque: list[str] = []
    for line in text.splitlines():
        line = strip_list_marker(_ANSWER_PREFIX.sub("", line))
        for sentence in line.split("."):
            sentence = sentence.strip()
            if not sentence or sentence.isdigit():
                continue
            statement = parse_statement(sentence)
            if isinstance(statement, Unparseable):
                opaque.append(statement.text)
            else:
                parsed.append(statement)
    return HypothesisSet.of(parsed, opaque)


# --- Evaluation runs ----------------------------------------------------------------


@dataclass
class RunRecord:
    example_id: str
    height: int
    subtasks: tuple[str, ...]
    prompt_sha256: str
    response: str
    parsed: list[str]
    opaque: list[str]
    result: EvalResult
    elapsed_s: float
    endpoint: dict
    error: str | None = None

    def to_dict(self) -> dict:
        return {
            "id": self.example_id,
            "height": self.height,
            "subtasks": list(self.subtasks),
            "prompt_sha256": self.prompt_sha256,
            "response": self.response,
            "parsed": self.parsed,
            "opaque": self.opaque,
            "weak": self.result.weak,
            "strong": self.result.strong,
            "quality": self.result.quality,
            "elapsed_s": self.elapsed_s,
            "endpoint": self.endpoint,
            "error": self.error,
        }


def build_bundle(
    record: DatasetRecord,
    system_prompt: str = DEFAULT_SYSTEM_PROMPT,
    demos: tuple[str, ...] = (),
) -> PromptBundle:
    return PromptBundle(
        system=system_prompt,
        user=f"{record.world_text} {record.observations_text}",
        demos=demos,
        example_id=record.id,
    )


def grade_response(record: DatasetRecord, response: str) -> tuple[EvalResult, HypothesisSet]:
    hypotheses = parse_response(response)
    return grade(record.graded_view(), hypotheses), hypotheses


def run_eval(
    dataset: list[DatasetRecord],
    endpoint,
    icl: str = "none",
    out_path=None,
    system_prompt: str = DEFAULT_SYSTEM_PROMPT,
    run_seed: int = 0,
    demos_per_question: bool = False,
    workers: int = 4,
    log_path=None,
) -> list[RunRecord]:
    """Query, parse, and grade every example; append-only and resumable.

    Records land in `out_path` as they complete; examples whose ids already
    appear there are skipped on re-runs. Endpoint failures are recorded with
    an error field and zeroed metrics rather than aborting the run.
    """
    if icl not in ICL_SETTINGS:
        raise ValueError(f"icl must be one of {ICL_SETTINGS}")
    done: set[str] = set()
    if out_path is not None and Path(out_path).exists():
        done = {row["id"] for row in read_jsonl(out_path)}
    pending = [r for r in dataset if r.id not in done]

    # Fixed-per-run demos, one block set per (height, mode) so in-distribution
    # demos match each question even in mixed datasets. Strict name
    # disjointness between demos and every question needs demos_per_question.
    shared_demos: dict[tuple[int, str], tuple[str, ...]] = {}
    if icl != "none" and not demos_per_question:
        for record in pending:
            key = (record.height, record.mode)
            if key not in shared_demos:
                shared_demos[key] = build_demos(
                    icl, record, random.Random(derive_seed(run_seed, "demos", *key))
                )

    write_lock = Lock()
    records: list[RunRecord] = []

    def process(record: DatasetRecord) -> RunRecord:
        if icl == "none":
            demos: tuple[str, ...] = ()
        elif demos_per_question:
            demos = build_demos(
                icl, record, random.Random(derive_seed(run_seed, "demos", record.id))
            )
        else:
            demos = shared_demos[(record.height, record.mode)]
        bundle = build_bundle(record, system_prompt, demos)
        started = time.perf_counter()
        error = None
        try:
            response = query_model(endpoint, bundle, record)
        except HarnessError as err:
            response, error = "", str(err)
        elapsed = time.perf_counter() - started
        result, hypotheses = grade_response(record, response)
        if error is not None:
            result = EvalResult(weak=False, strong=False, quality=0.0)
        run_record = RunRecord(
            example_id=record.id,
            height=record.height,
            subtasks=record.subtasks,
            prompt_sha256=bundle.sha256(),
            response=response,
            parsed=[render_axiom(s) for s in hypotheses.parsed],
            opaque=list(hypotheses.opaque),
            result=result,
            elapsed_s=elapsed,
            endpoint=endpoint.describe(),
            error=error,
        )
        with write_lock:
            records.append(run_record)
            if out_path is not None:
                append_jsonl(out_path, run_record.to_dict())
            if log_path is not None:
                append_jsonl(
                    log_path,
                    {
                        "id": record.id,
                        "system": bundle.system,
                        "user": bundle.user_payload(),
                        "response": response,
                    },
                )
        return run_record

    if workers <= 1 or len(pending) <= 1:
        for record in pending:
            process(record)
    else:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(process, pending))
    records.sort(key=lambda r: r.example_id)
    return records


def run_results_rows(records: list[RunRecord]) -> list[dict]:
    """Rows suitable for metrics.aggregate."""
    return [
        {
            "id": rec.example_id,
            "height": rec.height,
            "subtasks": list(rec.subtasks),
            "weak": rec.result.weak,
            "strong": rec.result.strong,
            "quality": rec.result.quality,
        }
        for rec in records
    ]
