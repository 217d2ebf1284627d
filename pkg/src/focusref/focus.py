"""Focus registers and the rules that move them between clauses.

The resolver tracks what a discourse is currently about in six registers:

* ``cf`` — current focus, the discourse element in the center of attention
* ``af`` — actor focus, the agent of the last agentive clause
* ``afl`` — alternate focus list, other recently mentioned elements,
  most recent first
* ``fs`` — focus stack of displaced former foci, newest on top
* ``afs`` — actor focus stack of displaced former actor foci
* ``intra_afl`` — elements introduced by the clause being processed

The first clause seeds the registers (``expected_focus``); each later clause
contributes its mentions through ``begin_ee``/``note_resolution`` and then
moves the persistent registers through ``update_registers``.  Updates can run
per clause or be deferred to the end of each sentence
(``update_registers_sentence``), selected by ``EngineConfig``.

Registers hold mention ids.  When a clause mentions an already-focused
element again under a new id, retention and shift decisions treat ids
connected by annotated identity links as the same element.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .discourse import agent_of, theme_of

GRANULARITIES = ("per-ee", "per-sentence")


@dataclass(frozen=True)
class EngineConfig:
    """Knobs for the register update cycle.

    ``update_granularity`` selects whether persistent registers move after
    every clause or once per sentence.  ``afl_reset_at_sentence_end`` wipes
    the alternate focus list at sentence boundaries; in per-sentence mode
    the wipe is folded into the sentence update itself (the rebuilt list
    replaces the old one instead of extending it).
    """

    update_granularity: str = "per-ee"
    afl_reset_at_sentence_end: bool = True

    def __post_init__(self):
        if self.update_granularity not in GRANULARITIES:
            raise ValueError(
                f"bad granularity {self.update_granularity!r}, "
                f"expected one of {GRANULARITIES}"
            )


@dataclass(frozen=True)
class FocusState:
    cf: str | None = None
    af: str | None = None
    afl: tuple[str, ...] = ()
    fs: tuple[str, ...] = ()
    afs: tuple[str, ...] = ()
    intra_afl: tuple[str, ...] = ()


@dataclass(frozen=True)
class TraceEntry:
    """Register snapshot taken after a clause has been fully processed."""

    doc_id: str
    ee_index: int
    state: FocusState


def _dedup(ids):
    seen = set()
    out = []
    for i in ids:
        if i is not None and i not in seen:
            seen.add(i)
            out.append(i)
    return tuple(out)


def _entity_key(mention_id, doc):
    """Canonical representative of ``mention_id`` under annotated links."""
    if not doc.pre_links:
        return mention_id
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in doc.pre_links:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    return find(mention_id)


def _same_entity(a, b, doc):
    if a is None or b is None:
        return False
    return a == b or _entity_key(a, doc) == _entity_key(b, doc)


def expected_focus(first_ee) -> FocusState:
    """Seed the registers from the opening clause of a document.

    The theme becomes the current focus, an animate subject the actor
    focus; the remaining non-pronominal mentions go to the intra-clause
    list, most recent first.
    """
    theme = theme_of(first_ee)
    agent = agent_of(first_ee)
    cf = theme.id if theme is not None else None
    af = agent.id if agent is not None else None
    intra = tuple(
        m.id
        for m in reversed(first_ee.mentions)
        if not m.is_pronoun and m.id not in {cf, af}
    )
    return FocusState(cf=cf, af=af, intra_afl=intra)


def begin_ee(state, ee) -> FocusState:
    """Load the clause's own mentions into the intra-clause list."""
    intra = tuple(m.id for m in reversed(ee.mentions) if not m.is_pronoun)
    return replace(state, intra_afl=intra)


def note_resolution(state, antecedent_id) -> FocusState:
    """Make a just-resolved antecedent available to later pronouns in the
    same clause by promoting it to the front of the intra-clause list."""
    if antecedent_id is None or antecedent_id in state.intra_afl:
        return state
    return replace(state, intra_afl=(antecedent_id,) + state.intra_afl)


def _referent(mention, resolutions):
    """The id a mention stands for: its antecedent if it is a resolved
    pronoun, otherwise the mention itself."""
    for r in resolutions:
        if r.pronoun_id == mention.id and r.antecedent_id is not None:
            return r.antecedent_id
    return mention.id


def _mentions_entity(ees, resolutions, target, doc):
    """Does any clause in ``ees`` refer back to ``target``?

    True when a non-pronominal mention denotes the same element as
    ``target`` or a pronoun in the clause resolved to it.
    """
    if target is None:
        return False
    for ee in ees:
        for m in ee.mentions:
            if m.is_pronoun:
                for r in resolutions:
                    if r.pronoun_id == m.id and _same_entity(
                        r.antecedent_id, target, doc
                    ):
                        return True
            elif _same_entity(m.id, target, doc):
                return True
    return False


def _shift(state, ees_for_retention, theme_donor, agent_donor,
           contrib, extend_afl, resolutions, doc):
    """Common core of the per-clause and per-sentence updates."""
    cf, fs = state.cf, state.fs
    if not _mentions_entity(ees_for_retention, resolutions, state.cf, doc):
        theme = theme_of(theme_donor) if theme_donor is not None else None
        if theme is not None:
            new_cf = _referent(theme, resolutions)
            if state.cf is not None and state.cf != new_cf:
                fs = (state.cf,) + fs
            cf = new_cf

    af, afs = state.af, state.afs
    agent = agent_of(agent_donor) if agent_donor is not None else None
    if agent is not None:
        new_af = _referent(agent, resolutions)
        if state.af is not None and state.af != new_af and state.af != cf:
            afs = _dedup((state.af,) + afs)
        af = new_af

    fresh = tuple(x for x in contrib if x != cf)
    afl = _dedup(fresh + state.afl) if extend_afl else _dedup(fresh)

    return FocusState(
        cf=cf,
        af=af,
        afl=tuple(x for x in afl if x != cf),
        fs=tuple(x for x in fs if x != cf),
        afs=tuple(x for x in afs if x != cf),
        intra_afl=state.intra_afl,
    )


def update_registers(state, ee, resolutions, config, doc) -> FocusState:
    """Move the persistent registers after one clause.

    The current focus is retained when the clause refers back to it;
    otherwise it shifts to the clause's theme and the displaced focus is
    pushed on the focus stack.  An agentive clause moves the actor focus
    the same way.  The clause's other mentions are pushed onto the
    alternate focus list, most recent first.
    """
    return _shift(
        state,
        ees_for_retention=(ee,),
        theme_donor=ee,
        agent_donor=ee,
        contrib=state.intra_afl,
        extend_afl=True,
        resolutions=resolutions,
        doc=doc,
    )


def update_registers_sentence(
    state, ees, resolutions, contrib, config, doc
) -> FocusState:
    """Deferred register update covering a whole sentence.

    Retention looks across every clause of the sentence; the shift target
    comes from the sentence's first clause and the actor focus from its
    last agentive clause.  ``contrib`` is the accumulated intra-clause
    material of the sentence, most recent first.  With
    ``afl_reset_at_sentence_end`` the rebuilt alternate focus list replaces
    the old one; otherwise it extends it.
    """
    agent_donor = None
    for ee in ees:
        if agent_of(ee) is not None:
            agent_donor = ee
    return _shift(
        state,
        ees_for_retention=tuple(ees),
        theme_donor=ees[0] if ees else None,
        agent_donor=agent_donor,
        contrib=tuple(contrib),
        extend_afl=not config.afl_reset_at_sentence_end,
        resolutions=resolutions,
        doc=doc,
    )


def end_sentence(state, config) -> FocusState:
    """Sentence-boundary housekeeping for the per-clause cycle."""
    if config.afl_reset_at_sentence_end:
        return replace(state, afl=())
    return state
