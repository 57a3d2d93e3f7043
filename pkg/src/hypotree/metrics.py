"""Per-example grading (weak/strong accuracy, parsimony quality) and aggregation.

Quality is a ratio of two averages. The numerator averages, over the candidate
set H, the number of observations each candidate can appear in a valid proof
of; unparseable candidate lines count in |H| with zero uses. The denominator
averages, over the ground truth H*, each hypothesis's leaf count in the
minimal proof forest of the observations. Ground truth therefore scores
exactly 1, restated observations score low, and padding a set with unused
hypotheses strictly lowers the score.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field

from .ontology import Statement, canonical
from .prover import ProofForest, explain, usable_hypotheses


class MetricError(Exception):
    pass


class DivisionUndefined(MetricError):
    """Ground truth has zero premise uses; the example is corrupt."""


class InvalidCounts(MetricError):
    pass


class EmptyGroup(MetricError):
    pass


@dataclass
class GradedExample:
    """The slice of a reasoning example the grader needs."""

    visible: list[Statement]
    observations: list
    truth: list[Statement]


@dataclass
class HypothesisSet:
    """Parsed candidate hypotheses plus raw unparseable lines.

    Parsed statements are canonicalized and deduplicated; |H| counts both
    parsed statements and opaque lines.
    """

    parsed: list[Statement] = field(default_factory=list)
    opaque: list[str] = field(default_factory=list)

    @classmethod
    def of(cls, statements, opaque=()) -> "HypothesisSet":
        seen: list[Statement] = []
        for s in statements:
            c = canonical(s)
            if c not in seen:
                seen.append(c)
        return cls(parsed=seen, opaque=list(opaque))

    def size(self) -> int:
        return len(self.parsed) + len(self.opaque)


@dataclass(frozen=True)
class EvalResult:
    weak: bool
    strong: bool
    quality: float


@dataclass(frozen=True)
class QualityBreakdown:
    value: float
    candidate_uses: int  # sum of n(h) over the candidate set
    candidate_count: int  # |H|, opaque lines included
    truth_uses: int  # sum of n(h*) over the ground truth
    truth_count: int  # |H*|


def weak_accuracy(example: GradedExample, hypotheses: HypothesisSet) -> bool:
    """True iff the parsed hypotheses explain every observation."""
    return explain(example.visible, hypotheses.parsed, example.observations) is not None


def strong_accuracy(example: GradedExample, hypotheses: HypothesisSet) -> bool:
    """True iff the candidate set exactly matches the ground truth."""
    if hypotheses.opaque:
        return False
    truth = {canonical(s) for s in example.truth}
    return set(hypotheses.parsed) == truth


def truth_forest(example: GradedExample) -> ProofForest:
    forest = explain(example.visible, example.truth, example.observations)
    if forest is None:
        raise DivisionUndefined("ground truth does not explain the observations")
    return forest


def quality_breakdown(
    example: GradedExample, hypotheses: HypothesisSet
) -> QualityBreakdown:
    truth = [canonical(s) for s in example.truth]
    forest = truth_forest(example)
    truth_uses = sum(forest.premise_uses(h) for h in truth)
    if truth_uses == 0:
        raise DivisionUndefined("ground truth is never used as a premise")

    if hypotheses.size() == 0 or not weak_accuracy(example, hypotheses):
        return QualityBreakdown(0.0, 0, hypotheses.size(), truth_uses, len(truth))

    uses = {h: 0 for h in hypotheses.parsed}
    for observation in example.observations:
        for h in usable_hypotheses(example.visible, hypotheses.parsed, observation):
            uses[h] += 1
    candidate_uses = sum(uses.values())
    value = (candidate_uses / hypotheses.size()) / (truth_uses / len(truth))
    return QualityBreakdown(
        value, candidate_uses, hypotheses.size(), truth_uses, len(truth)
    )


def quality(example: GradedExample, hypotheses: HypothesisSet) -> float:
    return quality_breakdown(example, hypotheses).value


def grade(example: GradedExample, hypotheses: HypothesisSet) -> EvalResult:
    weak = weak_accuracy(example, hypotheses)
    strong = strong_accuracy(example, hypotheses)
    q = quality(example, hypotheses) if weak else 0.0
    return EvalResult(weak=weak, strong=strong, quality=q)


# --- Aggregation ----------------------------------------------------------------

Z_95 = statistics.NormalDist().inv_cdf(0.975)  # 1.959964


def wilson_interval(
    successes: int, trials: int, confidence: float = 0.95
) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials <= 0 or not 0 <= successes <= trials:
        raise InvalidCounts(f"successes={successes}, trials={trials}")
    if not 0 < confidence < 1:
        raise InvalidCounts(f"confidence={confidence}")
    z = statistics.NormalDist().inv_cdf((1 + confidence) / 2)
    p = successes / trials
    denom = 1 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    margin = (z / denom) * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials))
    # at the boundaries the closed form is exact but float noise is not
    lower = 0.0 if successes == 0 else max(0.0, center - margin)
    upper = 1.0 if successes == trials else min(1.0, center + margin)
    return (lower, upper)


@dataclass(frozen=True)
class ReportRow:
    group: object
    count: int
    weak_mean: float
    weak_interval: tuple[float, float]
    strong_mean: float
    strong_interval: tuple[float, float]
    quality_mean: float


@dataclass(frozen=True)
class Report:
    rows: tuple[ReportRow, ...]

    def row_for(self, group) -> ReportRow:
        for row in self.rows:
            if row.group == group:
                return row
        raise KeyError(group)


def aggregate(
    results,
    key=lambda r: r["height"],
    confidence: float = 0.95,
    quality_weak_only: bool = False,
) -> Report:
    """Group results and compute means plus Wilson intervals for the accuracies.

    Each result needs `weak`, `strong`, and `quality` entries. Quality is
    reported as a plain mean over all results in the group; set
    `quality_weak_only` to average over weak-correct results instead.
    """
    results = list(results)
    if not results:
        raise EmptyGroup("no results to aggregate")
    groups: dict[object, list] = {}
    for r in results:
        groups.setdefault(key(r), []).append(r)
    try:
        ordered = sorted(groups)
    except TypeError:
        ordered = sorted(groups, key=repr)
    rows = []
    for group in ordered:
        members = groups[group]
        n = len(members)
        weak_hits = sum(1 for r in members if r["weak"])
        strong_hits = sum(1 for r in members if r["strong"])
        qualities = [r["quality"] for r in members if r["weak"] or not quality_weak_only]
        rows.append(
            ReportRow(
                group=group,
                count=n,
                weak_mean=weak_hits / n,
                weak_interval=wilson_interval(weak_hits, n, confidence),
                strong_mean=strong_hits / n,
                strong_interval=wilson_interval(strong_hits, n, confidence),
                quality_mean=sum(qualities) / len(qualities) if qualities else 0.0,
            )
        )
    return Report(rows=tuple(rows))
