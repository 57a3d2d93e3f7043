"""JSON-Lines persistence for datasets, responses, and results.

One record per line, UTF-8. Datasets carry everything grading needs (visible
axioms, observations, ground truth, rendered text), so graders never have to
regenerate the world.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .generator import ReasoningExample, render_texts
from .metrics import GradedExample
from .ontology import (
    ConceptFact,
    Membership,
    PropertyFact,
    PropertyLiteral,
    PropertyRule,
    Statement,
    Subtype,
)


class StorageError(Exception):
    pass


def statement_to_dict(statement: Statement) -> dict:
    if isinstance(statement, PropertyRule):
        return {
            "kind": "property",
            "concept": statement.concept,
            "name": statement.prop.name,
            "positive": statement.prop.positive,
        }
    if isinstance(statement, Membership):
        return {"kind": "membership", "member": statement.member, "concept": statement.concept}
    if isinstance(statement, Subtype):
        return {"kind": "subtype", "child": statement.child, "parent": statement.parent}
    if isinstance(statement, ConceptFact):
        return {"kind": "concept-fact", "member": statement.member, "concept": statement.concept}
    if isinstance(statement, PropertyFact):
        return {
            "kind": "property-fact",
            "member": statement.member,
            "name": statement.prop.name,
            "positive": statement.prop.positive,
        }
    raise StorageError(f"cannot serialize {statement!r}")


def statement_from_dict(data: dict) -> Statement:
    kind = data["kind"]
    if kind == "property":
        return PropertyRule(data["concept"], PropertyLiteral(data["name"], data["positive"]))
    if kind == "membership":
        return Membership(data["member"], data["concept"])
    if kind == "subtype":
        return Subtype(data["child"], data["parent"])
    if kind == "concept-fact":
        return ConceptFact(data["member"], data["concept"])
    if kind == "property-fact":
        return PropertyFact(data["member"], PropertyLiteral(data["name"], data["positive"]))
    raise StorageError(f"unknown statement kind {kind!r}")


@dataclass
class DatasetRecord:
    """One stored reasoning example."""

    id: str
    seed: int
    height: int
    mode: str
    subtasks: tuple[str, ...]
    axioms: list[Statement]  # visible axioms, canonical order
    observations: list
    truth: list[Statement]
    world_text: str
    observations_text: str

    @classmethod
    def from_example(cls, example_id: str, example: ReasoningExample) -> "DatasetRecord":
        world_text, observations_text = render_texts(example)
        return cls(
            id=example_id,
            seed=example.meta.seed,
            height=example.meta.height,
            mode=example.meta.mode,
            subtasks=example.meta.subtasks,
            axioms=example.visible(),
            observations=list(example.observations),
            truth=list(example.truth),
            world_text=world_text,
            observations_text=observations_text,
        )

    def graded_view(self) -> GradedExample:
        return GradedExample(
            visible=list(self.axioms),
            observations=list(self.observations),
            truth=list(self.truth),
        )

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "seed": self.seed,
            "height": self.height,
            "mode": self.mode,
            "subtasks": list(self.subtasks),
            "axioms": [statement_to_dict(s) for s in self.axioms],
            "observations": [statement_to_dict(f) for f in self.observations],
            "truth": [statement_to_dict(s) for s in self.truth],
            "world_text": self.world_text,
            "observations_text": self.observations_text,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DatasetRecord":
        return cls(
            id=data["id"],
            seed=data["seed"],
            height=data["height"],
            mode=data["mode"],
            subtasks=tuple(data["subtasks"]),
            axioms=[statement_from_dict(d) for d in data["axioms"]],
            observations=[statement_from_dict(d) for d in data["observations"]],
            truth=[statement_from_dict(d) for d in data["truth"]],
            world_text=data["world_text"],
            observations_text=data["observations_text"],
        )


def write_jsonl(path, rows) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, sort_keys=True) + "\n")


def append_jsonl(path, row) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("a", encoding="utf-8") as fh:
        fh.write(json.dumps(row, sort_keys=True) + "\n")


def read_jsonl(path) -> list[dict]:
    out = []
    with Path(path).open("r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(json.loads(line))
    return out


def write_dataset(path, records) -> None:
    write_jsonl(path, (r.to_dict() for r in records))


def read_dataset(path) -> list[DatasetRecord]:
    return [DatasetRecord.from_dict(d) for d in read_jsonl(path)]


def read_responses(path) -> dict[str, str]:
    """Responses file: one {"id": ..., "response": ...} object per line."""
    out: dict[str, str] = {}
    for row in read_jsonl(path):
        out[row["id"]] = row["response"]
    return out
