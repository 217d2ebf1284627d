"""Pronoun resolution: candidate proposal, compatibility filtering, drivers.

Resolution splits into two stages.  A pronoun's class (``agent``,
``non-agent``, ``prr``) selects which focus registers are consulted and in
what order; the registers propose candidate antecedents.  A shared filter
then walks the candidates in order and accepts the first one that agrees in
number, gender, and animacy, is not a clause mate (except for
possessive/reflexive/reciprocal pronouns, which must find their antecedent
in the current clause), and has a semantic type consistent with what the
pronoun's surface form selects for.

Three document-level drivers share the filter: the focus-register resolver,
a recency baseline that scans all preceding mentions, and a pass-through
that resolves nothing (useful as a scoring floor).
"""

from __future__ import annotations

from typing import NamedTuple

from .discourse import Resolution, check_semantic_types, classify_pronoun
from .errors import IntegrityError
from .focus import (
    EngineConfig,
    TraceEntry,
    begin_ee,
    end_sentence,
    expected_focus,
    note_resolution,
    update_registers,
    update_registers_sentence,
)

REGISTER_NAMES = ("CF", "AF", "AFL", "FS", "AFS", "Intra-AFL")

# register consultation order per pronoun class
DEFAULT_PRIORITIES = {
    "agent": ("AF", "AFL", "AFS"),
    "non-agent": ("CF", "AFL", "FS", "AF", "AFS"),
    "prr": ("Intra-AFL",),
}

# what a pronoun's surface form says about its referent's semantic type;
# unlisted forms fall back to the type annotated on the pronoun itself
PRONOUN_TYPE_CONSTRAINTS = {
    "it": ("inanimate-entity", "event"),
    "its": ("inanimate-entity", "event"),
    "itself": ("inanimate-entity", "event"),
    "they": ("entity",),
    "them": ("entity",),
    "their": ("entity",),
    "theirs": ("entity",),
    "themselves": ("entity",),
    "each other": ("entity",),
    "one another": ("entity",),
}
for _form in (
    "he", "him", "his", "himself",
    "she", "her", "hers", "herself",
    "i", "me", "my", "mine", "myself",
    "we", "us", "our", "ours", "ourselves",
    "you", "your", "yours", "yourself", "yourselves",
):
    PRONOUN_TYPE_CONSTRAINTS[_form] = ("person",)
del _form


class Candidate(NamedTuple):
    mention_id: str
    source: str  # register name or "paragraph-scan"


def _register_members(name, state):
    if name == "CF":
        return (state.cf,) if state.cf is not None else ()
    if name == "AF":
        return (state.af,) if state.af is not None else ()
    if name == "AFL":
        return state.afl
    if name == "FS":
        return state.fs
    if name == "AFS":
        return state.afs
    if name == "Intra-AFL":
        return state.intra_afl
    raise ValueError(f"unknown register {name!r}")


def propose(pronoun_class, state, doc, priorities=None) -> tuple[Candidate, ...]:
    """Candidate antecedents for a pronoun class, best first.

    Registers are consulted in the order the priority table gives for the
    class.  Agent pronouns only accept animate elements from the alternate
    focus list.  Duplicate ids keep their first, highest-priority source.
    """
    table = DEFAULT_PRIORITIES if priorities is None else priorities
    order = table[pronoun_class]
    seen = set()
    out = []
    for register in order:
        for mid in _register_members(register, state):
            if mid in seen:
                continue
            if (
                pronoun_class == "agent"
                and register == "AFL"
                and doc.mentions_by_id.get(mid) is not None
                and doc.mentions_by_id[mid].animate != "animate"
            ):
                continue
            seen.add(mid)
            out.append(Candidate(mid, register))
    return tuple(out)


def _agree(a, b):
    """Feature agreement with ``unknown`` as a wildcard on either side."""
    return a == b or a == "unknown" or b == "unknown"


def _type_constraints(pronoun, ontology):
    wanted = PRONOUN_TYPE_CONSTRAINTS.get(pronoun.surface.lower())
    if wanted is not None:
        present = tuple(t for t in wanted if t in ontology)
        if present:
            return present
    return (pronoun.sem_type,)


def filter_accept(pronoun, candidates, doc, ontology) -> Resolution:
    """Walk candidates in order and accept the first compatible one.

    Compatibility means number, gender, and animacy agreement (``unknown``
    matches anything), no clause-mate antecedent for ordinary pronouns, and
    a semantic type consistent with the pronoun's surface form.  When every
    candidate fails the pronoun is left unresolved.
    """
    ee = doc.events[pronoun.ee_index]
    pclass = classify_pronoun(pronoun, ee)
    wanted_types = _type_constraints(pronoun, ontology)
    considered = tuple(c.mention_id for c in candidates)
    for cand in candidates:
        m = doc.mentions_by_id.get(cand.mention_id)
        if m is None:
            raise IntegrityError(
                f"register holds unknown mention {cand.mention_id!r}"
            )
        if m.id == pronoun.id:
            continue
        if pclass != "prr" and m.ee_index == pronoun.ee_index:
            continue
        if not (
            _agree(pronoun.number, m.number)
            and _agree(pronoun.gender, m.gender)
            and _agree(pronoun.animate, m.animate)
        ):
            continue
        if not any(
            ontology.type_consistent(t, m.sem_type) for t in wanted_types
        ):
            continue
        if cand.source == "paragraph-scan":
            rule = "baseline-paragraph"
        else:
            rule = f"IR-{pclass.replace('-', '')}-{cand.source}"
        return Resolution(
            pronoun_id=pronoun.id,
            antecedent_id=m.id,
            rule_fired=rule,
            candidates_considered=considered,
        )
    return Resolution(
        pronoun_id=pronoun.id,
        antecedent_id=None,
        rule_fired="no-antecedent",
        candidates_considered=considered,
    )


def resolve_document_focus(doc, ontology, config=None, priorities=None):
    """Resolve every pronoun with the focus registers.

    Returns ``(resolutions, trace)`` where the trace holds one register
    snapshot per clause, taken after that clause's update has run.
    """
    config = config or EngineConfig()
    check_semantic_types(doc, ontology)
    resolutions = []
    trace = []
    state = FocusStateDriver(doc, ontology, config, priorities)
    for ee in doc.events:
        resolutions.extend(state.step(ee))
        trace.append(TraceEntry(doc.doc_id, ee.ee_index, state.state))
    return resolutions, trace


class FocusStateDriver:
    """Per-clause stepping of the register cycle, shared by the resolver
    and the trace command."""

    def __init__(self, doc, ontology, config, priorities=None):
        self.doc = doc
        self.ontology = ontology
        self.config = config
        self.priorities = priorities
        self.state = None
        self.resolutions = []
        # per-sentence mode: clauses and contributed ids awaiting the update
        self._pending_ees = []
        self._pending_contrib = []

    def _resolve_pronouns(self, ee):
        new = []
        for m in ee.mentions:
            if not m.is_pronoun:
                continue
            pclass = classify_pronoun(m, ee)
            cands = propose(pclass, self.state, self.doc, self.priorities)
            res = filter_accept(m, cands, self.doc, self.ontology)
            new.append(res)
            self.resolutions.append(res)
            self.state = note_resolution(self.state, res.antecedent_id)
        return new

    def step(self, ee):
        first = self.state is None
        last = ee.ee_index == len(self.doc.events) - 1
        if first:
            self.state = expected_focus(ee)
        else:
            self.state = begin_ee(self.state, ee)
        new = self._resolve_pronouns(ee)

        if self.config.update_granularity == "per-ee":
            if not first:
                self.state = update_registers(
                    self.state, ee, self.resolutions, self.config, self.doc
                )
            # the reset readies the AFL for the next sentence, so the
            # document-final clause keeps its list
            if ee.ends_sentence and not last:
                self.state = end_sentence(self.state, self.config)
        else:
            self._pending_ees.append(ee)
            self._pending_contrib = list(
                dict.fromkeys(
                    list(self.state.intra_afl) + self._pending_contrib
                )
            )
            if ee.ends_sentence:
                self.state = update_registers_sentence(
                    self.state,
                    self._pending_ees,
                    self.resolutions,
                    self._pending_contrib,
                    self.config,
                    self.doc,
                )
                self._pending_ees = []
                self._pending_contrib = []
        return new


def resolve_document_baseline(doc, ontology):
    """Recency baseline: try all preceding mentions, nearest first.

    Works text order backwards from the pronoun through the whole
    document, so the scan covers the current paragraph and everything
    before it.  The shared compatibility filter does the accepting;
    possessive/reflexive/reciprocal pronouns still only look inside their
    own clause.
    """
    check_semantic_types(doc, ontology)
    order = {}
    for ee in doc.events:
        for k, m in enumerate(ee.mentions):
            order[m.id] = (m.position, m.ee_index, k)
    out = []
    for pronoun in doc.pronouns:
        here = order[pronoun.id]
        pool = [m for m in doc.mentions if order[m.id] < here]
        pool.sort(key=lambda m: order[m.id], reverse=True)
        cands = tuple(Candidate(m.id, "paragraph-scan") for m in pool)
        out.append(filter_accept(pronoun, cands, doc, ontology))
    return out


def resolve_document_none(doc):
    """Resolve nothing; the scoring floor configuration."""
    return []
