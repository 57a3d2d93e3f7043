"""Core logical vocabulary: axioms, ground facts, and the ontology-tree world model.

The fragment has exactly three axiom shapes:

* property rules   -- every member of a concept has a property ("All cats are cute")
* memberships      -- a named individual belongs to a concept ("Amy is a cat")
* subtype rules    -- every member of a concept belongs to another ("Each cat is a feline")

Properties may be negated; a negated property is an opaque literal ("not slow"),
not classical negation. All value types here are immutable and hashable.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class PropertyLiteral:
    """An adjective with a polarity, e.g. +"cute" or -"slow"."""

    name: str
    positive: bool = True

    def negated(self) -> "PropertyLiteral":
        return PropertyLiteral(self.name, not self.positive)

    def __str__(self) -> str:
        return self.name if self.positive else f"not {self.name}"


# --- Axioms -----------------------------------------------------------------


@dataclass(frozen=True)
class PropertyRule:
    """All members of `concept` have `prop`."""

    concept: str
    prop: PropertyLiteral


@dataclass(frozen=True)
class Membership:
    """`member` belongs to `concept`."""

    member: str
    concept: str


@dataclass(frozen=True)
class Subtype:
    """Every member of `child` is also a member of `parent`."""

    child: str
    parent: str


Axiom = PropertyRule | Membership | Subtype


# --- Ground facts (conclusions of inference) ---------------------------------


@dataclass(frozen=True)
class ConceptFact:
    """Derived or asserted membership of a member in a concept."""

    member: str
    concept: str


@dataclass(frozen=True)
class PropertyFact:
    """Derived or asserted member-level property, e.g. cute(Amy)."""

    member: str
    prop: PropertyLiteral


@dataclass(frozen=True)
class RuleFact:
    """A (possibly derived) implication: concept -> concept or concept -> property."""

    premise: str
    conclusion: str | PropertyLiteral


Fact = ConceptFact | PropertyFact | RuleFact

# Anything a grader may treat as a premise: an axiom or a bare ground fact.
# Ground facts appear as candidate hypotheses when a model restates an
# observation instead of generalizing.
Statement = PropertyRule | Membership | Subtype | ConceptFact | PropertyFact


def canonical(statement: Statement) -> Statement:
    """Normalize case so equal statements compare equal.

    Concept and property names are lowercased, member names capitalized.
    Idempotent; polarity is preserved.
    """
    if isinstance(statement, PropertyRule):
        return PropertyRule(
            statement.concept.lower(),
            PropertyLiteral(statement.prop.name.lower(), statement.prop.positive),
        )
    if isinstance(statement, Membership):
        return Membership(statement.member.capitalize(), statement.concept.lower())
    if isinstance(statement, Subtype):
        return Subtype(statement.child.lower(), statement.parent.lower())
    if isinstance(statement, ConceptFact):
        return ConceptFact(statement.member.capitalize(), statement.concept.lower())
    if isinstance(statement, PropertyFact):
        return PropertyFact(
            statement.member.capitalize(),
            PropertyLiteral(statement.prop.name.lower(), statement.prop.positive),
        )
    raise TypeError(f"not a statement: {statement!r}")


# --- World model --------------------------------------------------------------


@dataclass
class Node:
    """One concept in the ontology tree, with its members and property rules.

    Member and property lists grow on demand while observations are generated,
    so their lengths vary per node (the root of a rich example may carry five
    or six members, an untouched node none).
    """

    concept: str
    properties: list[PropertyLiteral] = field(default_factory=list)
    members: list[str] = field(default_factory=list)
    children: list["Node"] = field(default_factory=list)

    def walk(self):
        """Yield this node and all descendants, level order."""
        queue = [self]
        while queue:
            node = queue.pop(0)
            yield node
            queue.extend(node.children)


@dataclass
class WorldModel:
    """An ontology tree plus the set of axioms hidden from the reader.

    The hidden axioms are the ground-truth hypotheses. Fresh-supertype
    hypotheses are hidden axioms that do not correspond to any tree edge;
    they are the only axioms outside the tree itself.
    """

    root: Node
    height: int
    hidden: set[Axiom] = field(default_factory=set)

    def nodes(self) -> list[Node]:
        return list(self.root.walk())

    def levels(self) -> list[list[Node]]:
        """Nodes grouped by depth; levels()[0] == [root]."""
        out = [[self.root]]
        while out[-1]:
            nxt = [child for node in out[-1] for child in node.children]
            if not nxt:
                break
            out.append(nxt)
        return out

    def tree_axioms(self) -> list[Axiom]:
        """All axioms carried by the tree structure, hidden or not."""
        axioms: list[Axiom] = []
        for node in self.root.walk():
            for member in node.members:
                axioms.append(Membership(member, node.concept))
            for prop in node.properties:
                axioms.append(PropertyRule(node.concept, prop))
            for child in node.children:
                axioms.append(Subtype(child.concept, node.concept))
        return axioms

    def complete_axioms(self) -> set[Axiom]:
        return set(self.tree_axioms()) | self.hidden

    def node_for(self, concept: str) -> Node:
        for node in self.root.walk():
            if node.concept == concept:
                return node
        raise KeyError(concept)


def visible_axioms(wm: WorldModel) -> set[Axiom]:
    """The incomplete world model presented to the reader: complete minus hidden."""
    return wm.complete_axioms() - wm.hidden
