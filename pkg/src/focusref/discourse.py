"""Domain model: mentions, elementary events, documents.

A document is a sequence of elementary events (simple clauses), each carrying
the mentions that occur inside it.  Mentions are annotated with the surface
string, grammatical role, agreement features, and a semantic type drawn from
an ontology.  All types are frozen; a document is validated once at
construction time and never mutated afterwards.

Positions are document-wide token offsets.  Each event records its clause
text; the token span of a mention must line up with the clause tokens, which
lets the SGML emitter rebuild running text with inline markup.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import DocumentValidationError

MENTION_KINDS = frozenset({"pronoun", "common-np", "proper-name", "event"})
PRONOUN_CLASSES = frozenset(
    {"personal", "possessive", "reflexive", "reciprocal", "demonstrative"}
)
GRAM_ROLES = frozenset({"subject", "object", "oblique", "possessor"})
NUMBERS = frozenset({"singular", "plural", "unknown"})
GENDERS = frozenset({"masculine", "feminine", "neuter", "unknown"})
ANIMACIES = frozenset({"animate", "inanimate", "unknown"})
VERB_KINDS = frozenset({"transitive", "intransitive", "copula"})

# pronoun classes resolved only against material from the current clause
PRR_CLASSES = frozenset({"possessive", "reflexive", "reciprocal"})


def _check_enum(value, allowed, what, where):
    if value not in allowed:
        raise DocumentValidationError(
            f"{where}: bad {what} {value!r}, expected one of {sorted(allowed)}"
        )


@dataclass(frozen=True)
class Mention:
    """One referring expression inside an elementary event.

    ``surface`` is the exact token sequence as it appears in the clause text;
    event mentions (clause-as-referent) have an empty surface and occupy a
    zero-width span at ``position``.  ``position`` is the document-wide
    offset of the first token.
    """

    id: str
    surface: str
    kind: str
    pronoun_class: str | None
    gram_role: str
    number: str
    gender: str
    animate: str
    sem_type: str
    sentence_index: int
    ee_index: int
    position: int

    @property
    def tokens(self) -> tuple[str, ...]:
        return tuple(self.surface.split())

    @property
    def end(self) -> int:
        """Offset one past the last token of the span."""
        return self.position + len(self.tokens)

    @property
    def is_pronoun(self) -> bool:
        return self.kind == "pronoun"


@dataclass(frozen=True)
class ElementaryEvent:
    """A simple clause: one verb plus the mentions realised inside it."""

    ee_index: int
    sentence_index: int
    verb: str
    verb_kind: str
    mentions: tuple[Mention, ...]
    ends_sentence: bool
    text: str

    @property
    def tokens(self) -> tuple[str, ...]:
        return tuple(self.text.split())

    def mentions_with_role(self, role) -> tuple[Mention, ...]:
        return tuple(m for m in self.mentions if m.gram_role == role)

    @property
    def subject(self) -> Mention | None:
        found = self.mentions_with_role("subject")
        return found[0] if found else None

    @property
    def object(self) -> Mention | None:
        found = self.mentions_with_role("object")
        return found[0] if found else None


@dataclass(frozen=True)
class Document:
    """A validated sequence of elementary events.

    ``pre_links`` are annotated identity links between non-pronominal
    mentions (appositions, exact repeats); the scorer folds them into the
    response chains.  ``paragraphs`` optionally maps sentence indices to
    paragraph numbers where the default one-paragraph layout is wrong.
    """

    doc_id: str
    events: tuple[ElementaryEvent, ...]
    pre_links: tuple[tuple[str, str], ...] = ()
    paragraphs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        _validate_document(self)

    @cached_property
    def mentions_by_id(self) -> dict:
        return {m.id: m for ee in self.events for m in ee.mentions}

    @cached_property
    def sentence_count(self) -> int:
        if not self.events:
            return 0
        return self.events[-1].sentence_index + 1

    def sentence_events(self, sentence_index) -> tuple[ElementaryEvent, ...]:
        return tuple(
            ee for ee in self.events if ee.sentence_index == sentence_index
        )

    def paragraph_of(self, sentence_index) -> int:
        """Paragraph of a sentence; without an override every sentence is
        its own paragraph."""
        for s, p in self.paragraphs:
            if s == sentence_index:
                return p
        return sentence_index

    @property
    def mentions(self) -> tuple[Mention, ...]:
        return tuple(m for ee in self.events for m in ee.mentions)

    @property
    def pronouns(self) -> tuple[Mention, ...]:
        return tuple(m for m in self.mentions if m.is_pronoun)


def theme_of(ee) -> Mention | None:
    """The theme of a clause: the object if transitive, else the subject."""
    if ee.verb_kind == "transitive":
        return ee.object
    return ee.subject


def agent_of(ee) -> Mention | None:
    """The agent of a clause: an animate subject, else nothing."""
    subject = ee.subject
    if subject is not None and subject.animate == "animate":
        return subject
    return None


def classify_pronoun(mention, ee) -> str:
    """Sort a pronoun into one of the three resolution classes.

    ``prr`` covers possessives, reflexives, and reciprocals, which look for
    their antecedent inside the current clause.  ``agent`` covers personal
    pronouns in subject position marked animate.  Everything else is
    ``non-agent``.
    """
    if not mention.is_pronoun:
        raise ValueError(f"mention {mention.id!r} is not a pronoun")
    if mention.pronoun_class in PRR_CLASSES:
        return "prr"
    if (
        mention.pronoun_class == "personal"
        and mention.gram_role == "subject"
        and mention.animate == "animate"
    ):
        return "agent"
    return "non-agent"


def _validate_mention(m, ee, where):
    _check_enum(m.kind, MENTION_KINDS, "mention kind", where)
    _check_enum(m.gram_role, GRAM_ROLES, "grammatical role", where)
    _check_enum(m.number, NUMBERS, "number", where)
    _check_enum(m.gender, GENDERS, "gender", where)
    _check_enum(m.animate, ANIMACIES, "animacy", where)
    if m.is_pronoun:
        if m.pronoun_class is None:
            raise DocumentValidationError(f"{where}: pronoun without a class")
        _check_enum(m.pronoun_class, PRONOUN_CLASSES, "pronoun class", where)
    elif m.pronoun_class is not None:
        raise DocumentValidationError(
            f"{where}: pronoun class on non-pronoun mention"
        )
    if m.kind == "event":
        if m.surface:
            raise DocumentValidationError(
                f"{where}: event mention must have an empty surface"
            )
    elif not m.surface.strip():
        raise DocumentValidationError(f"{where}: empty surface")
    if m.sentence_index != ee.sentence_index or m.ee_index != ee.ee_index:
        raise DocumentValidationError(
            f"{where}: mention indices disagree with the containing event"
        )
    if m.position < 0:
        raise DocumentValidationError(f"{where}: negative position")


def _validate_spans(doc):
    """Check token offsets against the clause texts, and span disjointness."""
    offset = 0
    for ee in doc.events:
        tokens = ee.tokens
        start, end = offset, offset + len(tokens)
        for m in ee.mentions:
            where = f"mention {m.id!r}"
            if m.kind == "event":
                if not (start <= m.position <= end):
                    raise DocumentValidationError(
                        f"{where}: position {m.position} outside event span "
                        f"[{start}, {end}]",
                        doc_id=doc.doc_id,
                    )
                continue
            if m.position < start or m.end > end:
                raise DocumentValidationError(
                    f"{where}: span [{m.position}, {m.end}) outside event span "
                    f"[{start}, {end})",
                    doc_id=doc.doc_id,
                )
            found = tuple(tokens[m.position - start : m.end - start])
            if found != m.tokens:
                raise DocumentValidationError(
                    f"{where}: surface {m.tokens} does not match event tokens "
                    f"{found} at offset {m.position}",
                    doc_id=doc.doc_id,
                )
        spans = sorted(
            (m.position, m.end, m.id) for m in ee.mentions if m.kind != "event"
        )
        for (s1, e1, id1), (s2, e2, id2) in zip(spans, spans[1:]):
            if s2 < e1:
                raise DocumentValidationError(
                    f"mentions {id1!r} and {id2!r} overlap",
                    doc_id=doc.doc_id,
                )
        offset = end


def _validate_document(doc):
    seen_ids = set()
    for expected, ee in enumerate(doc.events):
        where = f"event {ee.ee_index}"
        if ee.ee_index != expected:
            raise DocumentValidationError(
                f"{where}: expected index {expected}", doc_id=doc.doc_id
            )
        _check_enum(ee.verb_kind, VERB_KINDS, "verb kind", where)
        if not ee.verb:
            raise DocumentValidationError(f"{where}: empty verb", doc_id=doc.doc_id)
        if not ee.text.strip():
            raise DocumentValidationError(f"{where}: empty text", doc_id=doc.doc_id)
        if ee.verb_kind != "transitive" and ee.object is not None:
            raise DocumentValidationError(
                f"{where}: {ee.verb_kind} verb with an object",
                doc_id=doc.doc_id,
            )
        for role in ("subject", "object"):
            if len(ee.mentions_with_role(role)) > 1:
                raise DocumentValidationError(
                    f"{where}: more than one {role}", doc_id=doc.doc_id
                )
        for m in ee.mentions:
            try:
                _validate_mention(m, ee, f"mention {m.id!r}")
            except DocumentValidationError as exc:
                if exc.doc_id is None:
                    raise DocumentValidationError(
                        str(exc), doc_id=doc.doc_id
                    ) from None
                raise
            if m.id in seen_ids:
                raise DocumentValidationError(
                    f"duplicate mention id {m.id!r}", doc_id=doc.doc_id
                )
            seen_ids.add(m.id)

    # sentence segmentation: indices gapless from 0, ends_sentence on the
    # last event of each sentence and nowhere else
    sentence = 0
    for i, ee in enumerate(doc.events):
        if ee.sentence_index != sentence:
            raise DocumentValidationError(
                f"event {ee.ee_index}: expected sentence {sentence}, "
                f"got {ee.sentence_index}",
                doc_id=doc.doc_id,
            )
        last_of_doc = i == len(doc.events) - 1
        next_sentence = (
            None if last_of_doc else doc.events[i + 1].sentence_index
        )
        should_end = last_of_doc or next_sentence != sentence
        if ee.ends_sentence != should_end:
            raise DocumentValidationError(
                f"event {ee.ee_index}: ends_sentence should be {should_end}",
                doc_id=doc.doc_id,
            )
        if ee.ends_sentence:
            sentence += 1
    if doc.events and doc.events[0].sentence_index != 0:
        raise DocumentValidationError(
            "first sentence index must be 0", doc_id=doc.doc_id
        )

    _validate_spans(doc)

    for a, b in doc.pre_links:
        for mid in (a, b):
            if mid not in seen_ids:
                raise DocumentValidationError(
                    f"pre-link references unknown mention {mid!r}",
                    doc_id=doc.doc_id,
                )
        if a == b:
            raise DocumentValidationError(
                f"pre-link from {a!r} to itself", doc_id=doc.doc_id
            )
        for mid in (a, b):
            # a pronoun's identity is the resolver's job, not annotation
            if doc.mentions_by_id[mid].is_pronoun:
                raise DocumentValidationError(
                    f"pre-link touches pronoun {mid!r}", doc_id=doc.doc_id
                )

    seen_pars = set()
    for s, _ in doc.paragraphs:
        if doc.events and not (0 <= s <= doc.events[-1].sentence_index):
            raise DocumentValidationError(
                f"paragraph override for unknown sentence {s}",
                doc_id=doc.doc_id,
            )
        if s in seen_pars:
            raise DocumentValidationError(
                f"duplicate paragraph override for sentence {s}",
                doc_id=doc.doc_id,
            )
        seen_pars.add(s)


def check_semantic_types(doc, ontology):
    """Raise unless every mention's semantic type names an ontology node."""
    for m in doc.mentions:
        if m.sem_type not in ontology:
            raise DocumentValidationError(
                f"mention {m.id!r} has unknown semantic type {m.sem_type!r}",
                doc_id=doc.doc_id,
            )


@dataclass(frozen=True)
class Resolution:
    """Outcome of resolving one pronoun.

    ``antecedent_id`` is None when every candidate was rejected;
    ``rule_fired`` then reads ``no-antecedent``.  ``candidates_considered``
    lists candidate ids in the order they were tried.
    """

    pronoun_id: str
    antecedent_id: str | None
    rule_fired: str
    candidates_considered: tuple[str, ...] = field(default=(), compare=False)
