"""Template grammar between the logical fragment and English, plus the inverse parser.

Rendering is a fixed compatibility contract:

* property rules  -> "All cats are cute." / "All felines are not slow."
* memberships     -> "Amy is a cat." ("an" before vowels)
* subtype rules   -> one of "Each cat is a feline." / "Every cat is a feline." /
                     "All cats are felines." (chosen uniformly)
* ground facts    -> "Amy is cute." / "Fae is not slow." / "Jack is a mammal."

The parser accepts everything the renderer can produce plus tolerant variants
(case, optional period, is/are slack, singular/plural slack, leading list
markers, bare-plural rule forms). It never repairs reversed subtype direction
or member/concept confusion; text it cannot read comes back as Unparseable.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass

from .names import ADJECTIVES, MEMBER_LEXICON
from .ontology import (
    ConceptFact,
    Membership,
    PropertyFact,
    PropertyLiteral,
    PropertyRule,
    Statement,
    Subtype,
)

QUESTION_SENTENCE = "Please produce hypotheses to explain all observations."

_VOWELS = "aeiou"
_WORD = r"[A-Za-z][A-Za-z-]*"


@dataclass(frozen=True)
class Unparseable:
    """A line the grammar cannot read, preserved verbatim for grading."""

    text: str


def pluralize(noun: str) -> str:
    """Regular English pluralization: bus->buses, cherry->cherries, cat->cats."""
    if re.search(r"(s|x|z|ch|sh)$", noun):
        return noun + "es"
    if len(noun) >= 2 and noun.endswith("y") and noun[-2] not in _VOWELS:
        return noun[:-1] + "ies"
    return noun + "s"


def singularize(word: str) -> str | None:
    """Invert pluralize; None when `word` is not a regular plural."""
    if word.endswith(("ss", "us", "is")):
        # Singular-looking endings ("wumpus", "gregarious"); a true plural of
        # such a word would end in "-es" and is handled below.
        return None
    candidates = []
    if word.endswith("ies"):
        candidates.append(word[:-3] + "y")
    if word.endswith("es"):
        candidates.append(word[:-2])
    if word.endswith("s"):
        candidates.append(word[:-1])
    for cand in candidates:
        if cand and pluralize(cand) == word:
            return cand
    return None


def article(word: str) -> str:
    return "an" if word[:1].lower() in _VOWELS else "a"


_SUBTYPE_FORMS = ("each", "every", "all")


def render_axiom(axiom: Statement, rng: random.Random | None = None) -> str:
    """One English sentence for an axiom or ground fact, ending in a period."""
    if isinstance(axiom, PropertyRule):
        return f"All {pluralize(axiom.concept)} are {axiom.prop}."
    if isinstance(axiom, Membership):
        return f"{axiom.member} is {article(axiom.concept)} {axiom.concept}."
    if isinstance(axiom, Subtype):
        form = rng.choice(_SUBTYPE_FORMS) if rng is not None else "each"
        if form == "each":
            return f"Each {axiom.child} is {article(axiom.parent)} {axiom.parent}."
        if form == "every":
            return f"Every {axiom.child} is {article(axiom.parent)} {axiom.parent}."
        return f"All {pluralize(axiom.child)} are {pluralize(axiom.parent)}."
    if isinstance(axiom, ConceptFact):
        return f"{axiom.member} is {article(axiom.concept)} {axiom.concept}."
    if isinstance(axiom, PropertyFact):
        return f"{axiom.member} is {axiom.prop}."
    raise TypeError(f"cannot render {axiom!r}")


_LIST_MARKER = re.compile(r"^\s*(?:\d+[.)]\s+|[A-Za-z][.)]\s+|[-*•]\s+)")


def strip_list_marker(line: str) -> str:
    """Drop a leading "1.", "2)", "a)", "-", or bullet marker."""
    return _LIST_MARKER.sub("", line)


def _clean(text: str) -> str:
    text = _LIST_MARKER.sub("", text.strip())
    text = re.sub(r"\s+", " ", text).strip()
    if text.endswith("."):
        text = text[:-1].rstrip()
    return text


def _is_member_word(word: str) -> bool:
    return word[:1].isupper() or word.lower() in MEMBER_LEXICON


def _member_shaped_object(word: str) -> bool:
    # Proper-name shape or a known member name; plain case noise ("A CAT")
    # should still read as a concept.
    return bool(re.fullmatch(r"[A-Z][a-z-]+", word)) or word.lower() in MEMBER_LEXICON


def _as_concept(word: str) -> str:
    # Tolerate an accidentally pluralized object noun ("All cats are felines"
    # uses the plural on both sides; "Amy is a cats" is sloppy but readable).
    return singularize(word.lower()) or word.lower()


def _rule_object(subject: str, obj: str) -> Statement:
    """Classify the object of "All <subject>s are <obj>": adjective or plural noun."""
    low = obj.lower()
    if low in ADJECTIVES:
        return PropertyRule(subject, PropertyLiteral(low))
    singular = singularize(low)
    if singular is not None:
        return Subtype(subject, singular)
    return PropertyRule(subject, PropertyLiteral(low))


def parse_statement(text: str) -> Statement | Unparseable:
    """Parse one sentence into an axiom or a member-level fact.

    Total: anything unreadable is returned as Unparseable(text) with the
    original text preserved.
    """
    original = text
    sentence = _clean(text)
    if not sentence:
        return Unparseable(original)

    # "Each/Every/All X is/are (not) ..." -- quantified rule forms.
    m = re.fullmatch(
        rf"(each|every|all)\s+({_WORD})\s+(is|are)\s+(.+)", sentence, re.IGNORECASE
    )
    if m:
        subject = _as_concept(m.group(2))
        rest = m.group(4).strip()
        neg = re.fullmatch(rf"not\s+({_WORD})", rest, re.IGNORECASE)
        if neg:
            return PropertyRule(subject, PropertyLiteral(neg.group(1).lower(), False))
        art = re.fullmatch(rf"(?:a|an)\s+({_WORD})", rest, re.IGNORECASE)
        if art:
            return Subtype(subject, _as_concept(art.group(1)))
        bare = re.fullmatch(rf"({_WORD})", rest)
        if bare:
            return _rule_object(subject, bare.group(1))
        return Unparseable(original)

    # "X is/are ..." -- memberships, member facts, and bare-plural rules.
    m = re.fullmatch(rf"({_WORD})\s+(is|are)\s+(.+)", sentence, re.IGNORECASE)
    if not m:
        return Unparseable(original)
    subject, verb, rest = m.group(1), m.group(2).lower(), m.group(3).strip()

    neg = re.fullmatch(rf"not\s+({_WORD})", rest, re.IGNORECASE)
    art = re.fullmatch(rf"(?:a|an)\s+({_WORD})", rest, re.IGNORECASE)
    bare = re.fullmatch(rf"({_WORD})", rest)
    if not (neg or art or bare):
        return Unparseable(original)

    plural_subject = singularize(subject.lower()) is not None
    subject_is_member = _is_member_word(subject) and subject.lower() not in ADJECTIVES
    if subject_is_member and not (verb == "are" and plural_subject):
        # Member-level statement: "Amy is a cat." / "Fae is not slow." / "Amy is cute."
        member = subject.capitalize()
        if neg:
            return PropertyFact(member, PropertyLiteral(neg.group(1).lower(), False))
        if art:
            obj = art.group(1)
            if _member_shaped_object(obj) and obj.lower() not in ADJECTIVES:
                # "Wumpus is a Amy" style member/concept confusion: keep it broken.
                return Unparseable(original)
            return Membership(member, _as_concept(obj))
        obj = bare.group(1)
        if _member_shaped_object(obj) and obj.lower() not in ADJECTIVES:
            # "Wumpus is Amy." -- concept used as a member; not repaired.
            return Unparseable(original)
        return PropertyFact(member, PropertyLiteral(obj.lower()))

    # Concept subject: "Dalpists are rainy.", "Rompuses are dalpists.",
    # and the sloppy-singular variant "wumpus is a cat."
    if verb == "are" and not plural_subject:
        return Unparseable(original)
    subject_concept = _as_concept(subject)
    if neg:
        return PropertyRule(subject_concept, PropertyLiteral(neg.group(1).lower(), False))
    if art:
        obj = art.group(1)
        if _member_shaped_object(obj) and obj.lower() not in ADJECTIVES:
            return Unparseable(original)
        return Subtype(subject_concept, _as_concept(obj))
    return _rule_object(subject_concept, bare.group(1))


def render_example(example, rng: random.Random) -> tuple[str, str]:
    """Render a reasoning example to (world-model text, observations text).

    Visible axioms are shuffled with `rng` and joined into one paragraph.
    Observations keep their stored order, prefixed once with "We observe
    that"; the closing question sentence is always emitted.
    """
    from .ontology import visible_axioms  # local import to keep module deps flat

    axioms = sorted(visible_axioms(example.world), key=repr)
    rng.shuffle(axioms)
    world_text = " ".join(render_axiom(a, rng) for a in axioms)

    if example.observations:
        body = " ".join(render_axiom(fact) for fact in example.observations)
        observations_text = f"We observe that {body} {QUESTION_SENTENCE}"
    else:
        observations_text = QUESTION_SENTENCE
    return world_text, observations_text
