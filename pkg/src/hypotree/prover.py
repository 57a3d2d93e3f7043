"""Forward-chaining inference and minimal proof trees for the ontology fragment.

Two binary inference rules close the fragment:

* modus ponens:       c(A)  +  (c -> X)   =>   X(A)
* implication chain:  (c1 -> c2)  +  (c2 -> X)   =>   (c1 -> X)

where X is a concept or a property literal. Negated properties are opaque
literals; no classical negation happens here.

`prove` returns a minimal proof under the ordering (fewest hypothesis leaves,
then fewest total nodes, then a deterministic serialization order that prefers
pure modus-ponens chains). `usable_hypotheses` answers the complementary
question used by the quality metric's numerator: which hypotheses appear in at
least one cycle-free proof of a goal, minimal or not.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ontology import (
    ConceptFact,
    Fact,
    Membership,
    PropertyFact,
    PropertyLiteral,
    PropertyRule,
    RuleFact,
    Statement,
    Subtype,
    canonical,
)

Cost = tuple[int, int, int]  # (hypothesis leaves, tree nodes, chain steps)


def statement_fact(statement: Statement) -> Fact:
    """The fact a statement contributes to the closure."""
    if isinstance(statement, Membership):
        return ConceptFact(statement.member, statement.concept)
    if isinstance(statement, PropertyRule):
        return RuleFact(statement.concept, statement.prop)
    if isinstance(statement, Subtype):
        return RuleFact(statement.child, statement.parent)
    return statement  # already a ground fact


def close(statements) -> set[Fact]:
    """Least fixed point of the two inference rules over `statements`."""
    facts: set[Fact] = {statement_fact(canonical(s)) for s in statements}
    changed = True
    while changed:
        changed = False
        rules = [f for f in facts if isinstance(f, RuleFact)]
        by_premise: dict[str, list[RuleFact]] = {}
        for rule in rules:
            by_premise.setdefault(rule.premise, []).append(rule)
        new: set[Fact] = set()
        for fact in facts:
            if isinstance(fact, ConceptFact):
                for rule in by_premise.get(fact.concept, ()):
                    new.add(_apply(fact.member, rule.conclusion))
            elif isinstance(fact, RuleFact) and isinstance(fact.conclusion, str):
                for rule in by_premise.get(fact.conclusion, ()):
                    new.add(RuleFact(fact.premise, rule.conclusion))
        if not new <= facts:
            facts |= new
            changed = True
    return facts


def _apply(member: str, conclusion: str | PropertyLiteral) -> Fact:
    if isinstance(conclusion, str):
        return ConceptFact(member, conclusion)
    return PropertyFact(member, conclusion)


def find_contradictions(facts) -> list[tuple[PropertyFact, PropertyFact]]:
    """Pairs deriving both polarities of one member property. Reported, never fatal."""
    positives = {
        (f.member, f.prop.name): f
        for f in facts
        if isinstance(f, PropertyFact) and f.prop.positive
    }
    out = []
    for f in facts:
        if isinstance(f, PropertyFact) and not f.prop.positive:
            pos = positives.get((f.member, f.prop.name))
            if pos is not None:
                out.append((pos, f))
    return out


# --- Proof trees --------------------------------------------------------------

AXIOM = "axiom"
MODUS_PONENS = "modus-ponens"
CHAIN = "implication-chain"

_RULE_RANK = {AXIOM: "0", MODUS_PONENS: "1", CHAIN: "2"}


@dataclass(frozen=True)
class ProofTree:
    """A derivation whose leaves are input statements.

    Internal nodes have exactly two premises. `statement` is set on leaves
    only and holds the canonical input statement the leaf uses.
    """

    conclusion: Fact
    rule: str
    premises: tuple["ProofTree", ...] = ()
    statement: Statement | None = None
    is_hypothesis: bool = False
    hypothesis_leaves: int = 0
    size: int = 1
    depth: int = 0
    key: str = field(default="", compare=False)

    def leaves(self):
        if self.rule == AXIOM:
            yield self
        else:
            for premise in self.premises:
                yield from premise.leaves()

    def to_dict(self) -> dict:
        """Nested record form for debugging dumps and step-by-step rendering."""
        out: dict = {"conclusion": _fact_repr(self.conclusion), "rule": self.rule}
        if self.rule == AXIOM:
            out["hypothesis"] = self.is_hypothesis
        else:
            out["premises"] = [p.to_dict() for p in self.premises]
        return out


def _fact_repr(fact: Fact) -> str:
    if isinstance(fact, ConceptFact):
        return f"{fact.concept}({fact.member})"
    if isinstance(fact, PropertyFact):
        sign = "" if fact.prop.positive else "not "
        return f"{sign}{fact.prop.name}({fact.member})"
    conclusion = fact.conclusion
    if isinstance(conclusion, PropertyLiteral):
        sign = "" if conclusion.positive else "not "
        return f"{fact.premise} -> {sign}{conclusion.name}"
    return f"{fact.premise} -> {conclusion}"


def _leaf(statement: Statement, is_hypothesis: bool) -> ProofTree:
    fact = statement_fact(statement)
    return ProofTree(
        conclusion=fact,
        rule=AXIOM,
        statement=statement,
        is_hypothesis=is_hypothesis,
        hypothesis_leaves=1 if is_hypothesis else 0,
        size=1,
        depth=0,
        key=f"0({statement!r})",
    )


def _node(rule: str, conclusion: Fact, left: ProofTree, right: ProofTree) -> ProofTree:
    return ProofTree(
        conclusion=conclusion,
        rule=rule,
        premises=(left, right),
        hypothesis_leaves=left.hypothesis_leaves + right.hypothesis_leaves,
        size=left.size + right.size + 1,
        depth=max(left.depth, right.depth) + 1,
        key=f"{_RULE_RANK[rule]}({left.key},{right.key})",
    )


class _Prover:
    """Single-query minimal-proof search over a tiny closed universe."""

    def __init__(self, axioms, hypotheses):
        self.visible = {canonical(s) for s in axioms}
        self.hypotheses = {canonical(s) for s in hypotheses} - self.visible
        self.leaves: dict[Fact, list[ProofTree]] = {}
        for statement in sorted(self.visible | self.hypotheses, key=repr):
            leaf = _leaf(statement, statement in self.hypotheses)
            self.leaves.setdefault(leaf.conclusion, []).append(leaf)
        self.facts = close(self.visible | self.hypotheses)
        self.cost = self._relax_costs()
        self._built: dict[Fact, ProofTree] = {}

    def _leaf_cost(self, fact: Fact) -> Cost | None:
        options = self.leaves.get(fact)
        if not options:
            return None
        return (min(leaf.hypothesis_leaves for leaf in options), 1, 0)

    def _relax_costs(self) -> dict[Fact, Cost]:
        cost: dict[Fact, Cost] = {}
        for fact in self.facts:
            leaf_cost = self._leaf_cost(fact)
            if leaf_cost is not None:
                cost[fact] = leaf_cost
        concept_facts = [f for f in self.facts if isinstance(f, ConceptFact)]
        rule_facts = [f for f in self.facts if isinstance(f, RuleFact)]
        by_premise: dict[str, list[RuleFact]] = {}
        for rule in rule_facts:
            by_premise.setdefault(rule.premise, []).append(rule)

        def offer(fact: Fact, candidate: Cost) -> bool:
            best = cost.get(fact)
            if best is None or candidate < best:
                cost[fact] = candidate
                return True
            return False

        changed = True
        while changed:
            changed = False
            for cf in concept_facts:
                c1 = cost.get(cf)
                if c1 is None:
                    continue
                for rule in by_premise.get(cf.concept, ()):
                    c2 = cost.get(rule)
                    if c2 is None:
                        continue
                    cand = (c1[0] + c2[0], c1[1] + c2[1] + 1, c1[2] + c2[2])
                    if offer(_apply(cf.member, rule.conclusion), cand):
                        changed = True
            for r1 in rule_facts:
                if not isinstance(r1.conclusion, str):
                    continue
                c1 = cost.get(r1)
                if c1 is None:
                    continue
                for r2 in by_premise.get(r1.conclusion, ()):
                    c2 = cost.get(r2)
                    if c2 is None:
                        continue
                    cand = (c1[0] + c2[0], c1[1] + c2[1] + 1, c1[2] + c2[2] + 1)
                    if offer(RuleFact(r1.premise, r2.conclusion), cand):
                        changed = True
        return cost

    def prove(self, goal: Fact) -> ProofTree | None:
        goal = _canonical_fact(goal)
        if goal not in self.cost:
            return None
        return self._build(goal)

    def _build(self, fact: Fact) -> ProofTree:
        cached = self._built.get(fact)
        if cached is not None:
            return cached
        target = self.cost[fact]
        best: ProofTree | None = None
        for leaf in self.leaves.get(fact, ()):
            if (leaf.hypothesis_leaves, 1, 0) == target:
                best = _min_tree(best, leaf)
        if target[1] > 1:
            for left_fact, right_fact, rule_tag in self._splits(fact):
                c1 = self.cost.get(left_fact)
                c2 = self.cost.get(right_fact)
                if c1 is None or c2 is None:
                    continue
                chain_extra = 1 if rule_tag == CHAIN else 0
                combined = (c1[0] + c2[0], c1[1] + c2[1] + 1, c1[2] + c2[2] + chain_extra)
                if combined != target:
                    continue
                tree = _node(rule_tag, fact, self._build(left_fact), self._build(right_fact))
                best = _min_tree(best, tree)
        assert best is not None, f"cost table inconsistent for {fact!r}"
        self._built[fact] = best
        return best

    def _splits(self, fact: Fact):
        """All (left premise, right premise, rule) decompositions of `fact`."""
        if isinstance(fact, (ConceptFact, PropertyFact)):
            member = fact.member
            conclusion = fact.concept if isinstance(fact, ConceptFact) else fact.prop
            for mid in self.facts:
                if isinstance(mid, ConceptFact) and mid.member == member:
                    yield mid, RuleFact(mid.concept, conclusion), MODUS_PONENS
        else:
            for mid in self.facts:
                if (
                    isinstance(mid, RuleFact)
                    and mid.premise == fact.premise
                    and isinstance(mid.conclusion, str)
                ):
                    yield mid, RuleFact(mid.conclusion, fact.conclusion), CHAIN


def _min_tree(current: ProofTree | None, candidate: ProofTree) -> ProofTree:
    if current is None or candidate.key < current.key:
        return candidate
    return current


def _canonical_fact(goal: Fact) -> Fact:
    if isinstance(goal, RuleFact):
        conclusion = goal.conclusion
        if isinstance(conclusion, str):
            conclusion = conclusion.lower()
        else:
            conclusion = PropertyLiteral(conclusion.name.lower(), conclusion.positive)
        return RuleFact(goal.premise.lower(), conclusion)
    return statement_fact(canonical(goal))


def prove(axioms, hypotheses, goal: Fact) -> ProofTree | None:
    """Minimal proof of `goal` from axioms plus hypotheses, or None."""
    return _Prover(axioms, hypotheses).prove(goal)


@dataclass(frozen=True)
class ProofForest:
    """One chosen proof per observation, in observation order."""

    observations: tuple[Fact, ...]
    trees: tuple[ProofTree, ...]

    def premise_uses(self, statement: Statement) -> int:
        """n(h): how often `statement` occurs as a leaf across all trees."""
        wanted = canonical(statement)
        return sum(
            1 for tree in self.trees for leaf in tree.leaves() if leaf.statement == wanted
        )


def explain(visible, hypotheses, observations) -> ProofForest | None:
    """Minimal proofs for every observation, or None if any is unprovable."""
    observations = tuple(observations)
    prover = _Prover(visible, hypotheses)
    trees = []
    for fact in observations:
        tree = prover.prove(fact)
        if tree is None:
            return None
        trees.append(tree)
    return ProofForest(observations, tuple(trees))


# --- "Appears in any valid proof" analysis ------------------------------------

_ROUTE_BUDGET = 200_000


def usable_hypotheses(visible, hypotheses, goal: Fact) -> set[Statement]:
    """Hypotheses occurring in at least one cycle-free proof of `goal`.

    A cycle-free proof of a ground fact is a membership (or the fact itself)
    followed by a simple chain of rules, so this enumerates simple paths in
    the rule graph. The traversal budget only matters for adversarial
    candidate sets that build dense cyclic rule graphs.
    """
    vis = {canonical(s) for s in visible}
    hyps = {canonical(s) for s in hypotheses}
    statements = vis | hyps
    goal = _canonical_fact(goal)
    if not isinstance(goal, (ConceptFact, PropertyFact)):
        raise TypeError("usable_hypotheses takes ground-fact goals")

    memberships: list[tuple[str, str, Statement]] = []
    edges: dict[str, list[tuple[str | PropertyLiteral, Statement]]] = {}
    found: set[Statement] = set()
    for s in statements:
        fact = statement_fact(s)
        if isinstance(fact, ConceptFact):
            memberships.append((fact.member, fact.concept, s))
        elif isinstance(fact, RuleFact):
            edges.setdefault(fact.premise, []).append((fact.conclusion, s))
        elif fact == goal and s in hyps:
            found.add(s)  # the observation restated as a hypothesis

    target_concept = goal.concept if isinstance(goal, ConceptFact) else None
    target_prop = goal.prop if isinstance(goal, PropertyFact) else None
    budget = [_ROUTE_BUDGET]

    def record(path: list[Statement]) -> None:
        for s in path:
            if s in hyps:
                found.add(s)

    def dfs(concept: str, path: list[Statement], visited: set[str]) -> None:
        if budget[0] <= 0 or found == hyps:
            return
        budget[0] -= 1
        if target_concept is not None and concept == target_concept:
            record(path)
        for conclusion, s in edges.get(concept, ()):
            if isinstance(conclusion, PropertyLiteral):
                if conclusion == target_prop:
                    record(path + [s])
            elif conclusion not in visited:
                visited.add(conclusion)
                dfs(conclusion, path + [s], visited)
                visited.remove(conclusion)

    for member, concept, s in memberships:
        if member != goal.member:
            continue
        dfs(concept, [s], {concept})
    return found
