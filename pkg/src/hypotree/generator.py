"""Synthesizes complete reasoning examples over random fictional ontology trees.

A generated example is an incomplete world model (an ontology tree with some
axioms hidden), a shuffled list of observations, and the hidden axioms as
ground truth. Member and property names are minted on demand while the
observations for each hidden axiom are generated: every hidden axiom brings
exactly three observations, and each observation leans on a freshly named
member or property so that nothing in it is derivable from the visible
axioms alone.

Subtask kinds:

* infer-property    -- a fresh property rule on a node is hidden; members of
                       the node and its descendants are observed with it
* infer-membership  -- a brand-new member's membership is hidden; the member
                       is observed with fresh properties of its node, the
                       root, and an intermediate ancestor
* infer-subtype     -- a tree edge is hidden, or a fresh supertype of the
                       root is invented; members of the subtree are observed
                       as members of the supertype
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field, replace

from . import names
from .language import render_example
from .ontology import (
    Axiom,
    ConceptFact,
    Fact,
    Membership,
    Node,
    PropertyFact,
    PropertyLiteral,
    PropertyRule,
    Subtype,
    WorldModel,
    visible_axioms,
)
from .prover import close, explain, statement_fact

INFER_PROPERTY = "infer-property"
INFER_MEMBERSHIP = "infer-membership"
INFER_SUBTYPE = "infer-subtype"
SUBTASKS = (INFER_PROPERTY, INFER_MEMBERSHIP, INFER_SUBTYPE)

MODES = ("single", "multi")
SUBTYPE_STYLES = ("hide-edge", "fresh-supertype", "mixed")


class GeneratorError(Exception):
    pass


class Infeasible(GeneratorError):
    """The requested configuration admits no hidden axiom."""


class PoolExhausted(GeneratorError):
    """A name pool ran dry; supply larger pools for very tall trees."""


def derive_seed(seed: int, *labels) -> int:
    """Deterministic child seed for a labeled substream of `seed`."""
    payload = repr((seed,) + labels).encode()
    return int.from_bytes(hashlib.blake2b(payload, digest_size=8).digest(), "big")


@dataclass
class GenConfig:
    height: int = 1
    mode: str = "single"
    subtask: str = "random"  # single mode only
    seed: int = 0
    subtype_style: str = "mixed"
    negation_prob: float = 0.2
    concepts: tuple[str, ...] = names.CONCEPTS
    members: tuple[str, ...] = names.MEMBERS
    properties: tuple[str, ...] = names.PROPERTIES
    max_attempts: int = 5

    def validate(self) -> None:
        if self.height < 1:
            raise ValueError(f"height must be >= 1, got {self.height}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.subtask != "random" and self.subtask not in SUBTASKS:
            raise ValueError(f"unknown subtask {self.subtask!r}")
        if self.subtype_style not in SUBTYPE_STYLES:
            raise ValueError(f"unknown subtype_style {self.subtype_style!r}")
        if not 0 <= self.negation_prob <= 1:
            raise ValueError("negation_prob must be in [0, 1]")


class _Pool:
    """Draws names uniformly without replacement."""

    def __init__(self, items, label: str):
        self._items = list(items)
        self._label = label

    def draw(self, rng: random.Random) -> str:
        if not self._items:
            raise PoolExhausted(f"{self._label} pool exhausted")
        return self._items.pop(rng.randrange(len(self._items)))


@dataclass
class Pools:
    concepts: _Pool
    members: _Pool
    properties: _Pool

    @classmethod
    def from_config(cls, config: GenConfig) -> "Pools":
        return cls(
            concepts=_Pool(config.concepts, "concept"),
            members=_Pool(config.members, "member"),
            properties=_Pool(config.properties, "property"),
        )


@dataclass(frozen=True)
class ExampleMeta:
    height: int
    mode: str
    subtasks: tuple[str, ...]
    seed: int


@dataclass
class ReasoningExample:
    world: WorldModel
    observations: list[Fact]
    truth: list[Axiom]
    meta: ExampleMeta

    def visible(self) -> list[Axiom]:
        return sorted(visible_axioms(self.world), key=repr)


# --- Topology and naming --------------------------------------------------------


def build_topology(height: int, rng: random.Random) -> Node:
    """Random tree skeleton: each non-leaf gets 2 children if u > 0.5 else 3."""
    if height < 1:
        raise ValueError("height must be >= 1")
    root = Node(concept="")
    frontier = [root]
    for _ in range(height - 1):
        nxt = []
        for parent in frontier:
            width = 2 if rng.random() > 0.5 else 3
            parent.children = [Node(concept="") for _ in range(width)]
            nxt.extend(parent.children)
        frontier = nxt
    return root


def populate(skeleton: Node, pools: Pools, rng: random.Random, height: int) -> WorldModel:
    """Assign a concept name to every node, level order.

    Members and properties are minted later, while observations are
    generated, so freshly populated worlds carry no member or property
    axioms yet.
    """
    wm = WorldModel(root=skeleton, height=height)
    for node in skeleton.walk():
        node.concept = pools.concepts.draw(rng)
    return wm


def _mint_literal(pools: Pools, rng: random.Random, negation_prob: float) -> PropertyLiteral:
    name = pools.properties.draw(rng)
    return PropertyLiteral(name, positive=rng.random() >= negation_prob)


def _mint_member(node: Node, pools: Pools, rng: random.Random) -> str:
    member = pools.members.draw(rng)
    node.members.append(member)
    return member


def _parents(wm: WorldModel) -> dict[str, Node]:
    parents: dict[str, Node] = {}
    for node in wm.root.walk():
        for child in node.children:
            parents[child.concept] = node
    return parents


def _descendants(node: Node) -> list[Node]:
    return [n for n in node.walk() if n is not node]


def _ancestors(wm: WorldModel, node: Node) -> list[Node]:
    """Proper ancestors, nearest first."""
    parents = _parents(wm)
    chain = []
    current = parents.get(node.concept)
    while current is not None:
        chain.append(current)
        current = parents.get(current.concept)
    return chain


# --- Hiding -----------------------------------------------------------------------


@dataclass(frozen=True)
class _Plan:
    level: int
    position: int  # index of the node within its level
    kind: str
    node: Node = field(compare=False, hash=False)


def _allowed_kinds(level: int, style: str) -> tuple[str, ...]:
    kinds = [INFER_PROPERTY, INFER_MEMBERSHIP]
    if level == 0:
        if style in ("mixed", "fresh-supertype"):
            kinds.append(INFER_SUBTYPE)
    else:
        if style in ("mixed", "hide-edge"):
            kinds.append(INFER_SUBTYPE)
    return tuple(kinds)


def _plan_multi(wm: WorldModel, config: GenConfig, rng: random.Random) -> list[_Plan]:
    levels = wm.levels()
    if wm.height == 1:
        if config.subtype_style == "hide-edge":
            raise Infeasible("no in-tree edge at height 1")
        return [_Plan(0, 0, kind, wm.root) for kind in SUBTASKS]

    plans: list[_Plan] = []
    taken: set[tuple[str, str]] = set()
    for level_idx, level in enumerate(levels):
        want = rng.randint(1, 3) if level_idx == 0 else rng.randint(1, 2)
        candidates = [
            _Plan(level_idx, pos, kind, node)
            for pos, node in enumerate(level)
            for kind in _allowed_kinds(level_idx, config.subtype_style)
            if (node.concept, kind) not in taken
        ]
        for plan in rng.sample(candidates, min(want, len(candidates))):
            plans.append(plan)
            taken.add((plan.node.concept, plan.kind))

    # Every subtask kind must be represented: convert a duplicated kind if
    # possible, otherwise add one more hypothesis.
    for kind in SUBTASKS:
        if any(p.kind == kind for p in plans):
            continue
        counts = {k: sum(1 for p in plans if p.kind == k) for k in SUBTASKS}
        converted = False
        for plan in sorted(plans, key=lambda p: (p.level, p.position)):
            if counts[plan.kind] < 2:
                continue
            if kind not in _allowed_kinds(plan.level, config.subtype_style):
                continue
            if (plan.node.concept, kind) in taken:
                continue
            plans.remove(plan)
            taken.discard((plan.node.concept, plan.kind))
            plans.append(replace(plan, kind=kind))
            taken.add((plan.node.concept, kind))
            converted = True
            break
        if converted:
            continue
        options = [
            _Plan(level_idx, pos, kind, node)
            for level_idx, level in enumerate(levels)
            for pos, node in enumerate(level)
            if kind in _allowed_kinds(level_idx, config.subtype_style)
            and (node.concept, kind) not in taken
        ]
        if not options:
            raise Infeasible(f"cannot place a {kind} hypothesis")
        plan = rng.choice(options)
        plans.append(plan)
        taken.add((plan.node.concept, plan.kind))
    plans.sort(key=lambda p: (p.level, p.position, SUBTASKS.index(p.kind)))
    return plans


def _plan_single(wm: WorldModel, config: GenConfig, rng: random.Random) -> _Plan:
    subtask = config.subtask
    if subtask == "random":
        subtask = rng.choice(SUBTASKS)
    if subtask == INFER_PROPERTY:
        return _Plan(0, 0, INFER_PROPERTY, wm.root)
    if subtask == INFER_MEMBERSHIP:
        leaves = [n for n in wm.root.walk() if not n.children]
        node = rng.choice(leaves)
        return _Plan(wm.height - 1, 0, INFER_MEMBERSHIP, node)
    style = config.subtype_style
    if style == "mixed":
        style = "fresh-supertype" if wm.height == 1 or rng.random() < 0.5 else "hide-edge"
    if style == "fresh-supertype":
        return _Plan(0, 0, INFER_SUBTYPE, wm.root)
    non_root = [n for n in wm.root.walk() if n is not wm.root]
    if not non_root:
        raise Infeasible("no in-tree edge at height 1")
    return _Plan(1, 0, INFER_SUBTYPE, rng.choice(non_root))


def hide_axioms(
    wm: WorldModel, config: GenConfig, rng: random.Random, pools: Pools
) -> tuple[list[Axiom], tuple[str, ...]]:
    """Choose and mint the hidden axioms; returns (truth, subtask tags)."""
    if config.mode == "single":
        plans = [_plan_single(wm, config, rng)]
    else:
        plans = _plan_multi(wm, config, rng)

    parents = _parents(wm)
    truth: list[Axiom] = []
    tags: list[str] = []
    for plan in plans:
        node = plan.node
        if plan.kind == INFER_PROPERTY:
            lit = _mint_literal(pools, rng, config.negation_prob)
            node.properties.append(lit)
            axiom: Axiom = PropertyRule(node.concept, lit)
        elif plan.kind == INFER_MEMBERSHIP:
            member = _mint_member(node, pools, rng)
            axiom = Membership(member, node.concept)
        else:
            parent = parents.get(node.concept)
            if parent is not None and node is not wm.root:
                axiom = Subtype(node.concept, parent.concept)
            else:
                axiom = Subtype(node.concept, pools.concepts.draw(rng))
        wm.hidden.add(axiom)
        truth.append(axiom)
        tags.append(plan.kind)

    if config.mode == "single" and tags[0] == INFER_MEMBERSHIP:
        # Distractor members keep the world from revealing the answer node:
        # every concept except the hidden member's node shows one member.
        selected = plans[0].node
        for node in wm.root.walk():
            if node is not selected:
                _mint_member(node, pools, rng)
    return truth, tuple(tags)


# --- Observations ------------------------------------------------------------------


def _observation_members(
    wm: WorldModel, node: Node, pools: Pools, rng: random.Random
) -> list[str]:
    """Three fresh members: of the node, a leaf descendant, a non-leaf descendant.

    Shallow trees fall back to nearer relatives so three members always exist.
    """
    descendants = _descendants(node)
    leaf_descendants = [n for n in descendants if not n.children]
    inner_descendants = [n for n in descendants if n.children]
    slots = [
        node,
        rng.choice(leaf_descendants) if leaf_descendants else node,
        rng.choice(inner_descendants)
        if inner_descendants
        else (rng.choice(leaf_descendants) if leaf_descendants else node),
    ]
    return [_mint_member(slot, pools, rng) for slot in slots]


def gen_observations(
    wm: WorldModel,
    hidden: Axiom,
    rng: random.Random,
    pools: Pools,
    config: GenConfig,
) -> list[Fact]:
    """Three observations supporting one hidden axiom."""
    if isinstance(hidden, PropertyRule):
        node = wm.node_for(hidden.concept)
        return [
            PropertyFact(member, hidden.prop)
            for member in _observation_members(wm, node, pools, rng)
        ]
    if isinstance(hidden, Membership):
        node = wm.node_for(hidden.concept)
        ancestors = _ancestors(wm, node)
        root = ancestors[-1] if ancestors else node
        intermediates = ancestors[:-1]  # proper ancestors below the root
        slots = [
            node,
            root,
            rng.choice(intermediates) if intermediates else node,
        ]
        observations = []
        for slot in slots:
            lit = _mint_literal(pools, rng, config.negation_prob)
            slot.properties.append(lit)
            observations.append(PropertyFact(hidden.member, lit))
        return observations
    if isinstance(hidden, Subtype):
        node = wm.node_for(hidden.child)
        return [
            ConceptFact(member, hidden.parent)
            for member in _observation_members(wm, node, pools, rng)
        ]
    raise TypeError(f"cannot build observations for {hidden!r}")


# --- Orchestration ------------------------------------------------------------------


def _verify(example: ReasoningExample) -> None:
    visible = example.visible()
    derivable_without_truth = close(visible)
    for observation in example.observations:
        if statement_fact(observation) in derivable_without_truth:
            raise GeneratorError(f"observation {observation!r} leaks from visible axioms")
    if explain(visible, example.truth, example.observations) is None:
        raise GeneratorError("observations not explained by visible + truth")


def generate_example(config: GenConfig) -> ReasoningExample:
    """Build one reasoning example; deterministic in (config, seed)."""
    config.validate()
    last_error: GeneratorError | None = None
    for attempt in range(config.max_attempts):
        rng = random.Random(derive_seed(config.seed, "gen", attempt))
        pools = Pools.from_config(config)
        try:
            skeleton = build_topology(config.height, rng)
            wm = populate(skeleton, pools, rng, config.height)
            truth, tags = hide_axioms(wm, config, rng, pools)
            observations: list[Fact] = []
            for axiom in truth:
                for fact in gen_observations(wm, axiom, rng, pools, config):
                    if fact not in observations:
                        observations.append(fact)
            rng.shuffle(observations)
            example = ReasoningExample(
                world=wm,
                observations=observations,
                truth=truth,
                meta=ExampleMeta(config.height, config.mode, tags, config.seed),
            )
            _verify(example)
            return example
        except (Infeasible, PoolExhausted):
            raise
        except GeneratorError as err:
            last_error = err
    raise GeneratorError(f"gave up after {config.max_attempts} attempts: {last_error}")


def render_texts(example: ReasoningExample) -> tuple[str, str]:
    """Deterministic English rendering of an example, derived from its seed."""
    rng = random.Random(derive_seed(example.meta.seed, "render"))
    return render_example(example, rng)
