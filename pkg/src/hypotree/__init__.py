"""Hypothesis-discovery benchmark over fictional ontology trees.

Generates reasoning examples (an incomplete first-order world model plus
observations), renders them to English, proves observations by forward
chaining, and grades candidate hypothesis sets on weak accuracy, strong
accuracy, and a parsimony-based quality score.
"""

from .generator import GenConfig, ReasoningExample, generate_example
from .language import parse_statement, pluralize, render_axiom
from .metrics import (
    EvalResult,
    GradedExample,
    HypothesisSet,
    aggregate,
    grade,
    quality,
    strong_accuracy,
    weak_accuracy,
    wilson_interval,
)
from .ontology import (
    ConceptFact,
    Membership,
    PropertyFact,
    PropertyLiteral,
    PropertyRule,
    Subtype,
    WorldModel,
    canonical,
    visible_axioms,
)
from .prover import ProofForest, ProofTree, close, explain, prove, usable_hypotheses

__all__ = [
    "GenConfig",
    "ReasoningExample",
    "generate_example",
    "parse_statement",
    "pluralize",
    "render_axiom",
    "EvalResult",
    "GradedExample",
    "HypothesisSet",
    "aggregate",
    "grade",
    "quality",
    "strong_accuracy",
    "weak_accuracy",
    "wilson_interval",
    "ConceptFact",
    "Membership",
    "PropertyFact",
    "PropertyLiteral",
    "PropertyRule",
    "Subtype",
    "WorldModel",
    "canonical",
    "visible_axioms",
    "close",
    "explain",
    "prove",
    "usable_hypotheses",
    "ProofForest",
    "ProofTree",
]

__version__ = "0.1.0"
