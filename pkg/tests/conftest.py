"""Shared fixtures: a hand-built reference world with known proof structure."""

import pytest

from hypotree.metrics import GradedExample
from hypotree.ontology import (
    ConceptFact as CF,
    Membership as M,
    PropertyFact as PF,
    PropertyLiteral as L,
    PropertyRule as P,
    Subtype as S,
)


def neg(name: str) -> L:
    return L(name, False)


# A three-level animal taxonomy with one hidden axiom of each kind:
#   Fae's tiger membership, the mammal "hairy" property rule, and the
#   rodent->mammal edge. Each hidden axiom explains three observations.
ZOO_VISIBLE = [
    P("mammal", L("warm-blooded")),
    M("Sam", "mammal"),
    M("Tom", "mammal"),
    M("John", "mammal"),
    S("feline", "mammal"),
    S("canidae", "mammal"),
    P("canidae", L("muscular")),
    S("dog", "canidae"),
    S("wolf", "canidae"),
    P("feline", neg("slow")),
    S("cat", "feline"),
    S("tiger", "feline"),
    P("cat", L("cute")),
    M("Alice", "cat"),
    P("dog", L("smart")),
    M("Bob", "dog"),
    P("wolf", L("gregarious")),
    M("Jessica", "wolf"),
    P("tiger", L("strong")),
    M("Susan", "tiger"),
    P("rodent", L("gnawing")),
    S("rat", "rodent"),
    S("squirrel", "rodent"),
    P("rat", L("adaptable")),
    M("Jack", "rat"),
    M("Noah", "rat"),
    P("squirrel", L("bushy")),
    M("Oliver", "squirrel"),
]

ZOO_TRUTH = [M("Fae", "tiger"), P("mammal", L("hairy")), S("rodent", "mammal")]

ZOO_OBSERVATIONS = [
    PF("Sam", L("hairy")),
    PF("Alice", L("hairy")),
    PF("Bob", L("hairy")),
    PF("Fae", L("strong")),
    PF("Fae", neg("slow")),
    PF("Fae", L("warm-blooded")),
    CF("Jack", "mammal"),
    CF("Noah", "mammal"),
    CF("Oliver", "mammal"),
]

# The five-hypothesis candidate set whose quality is 2/3 against the zoo:
# two redundant subtype rules replace the general rodent->mammal edge and a
# cat-specific rule shadows the mammal-level property.
ZOO_CANDIDATE_TEXT = (
    "Fae is a tiger. All mammals are hairy. All rats are mammals. "
    "All squirrels are mammals. All cats are hairy."
)


@pytest.fixture
def zoo() -> GradedExample:
    return GradedExample(
        visible=list(ZOO_VISIBLE),
        observations=list(ZOO_OBSERVATIONS),
        truth=list(ZOO_TRUTH),
    )
