"""Register mechanics: seeding, intra-clause list, update and reset rules."""

import pytest

import focusref as fr
from support import M, build_doc


def person(mid, surface, role, **extra):
    attrs = dict(role=role, anim="animate", typ="person", num="singular")
    attrs.update(extra)
    return M(mid, surface, **attrs)


@pytest.fixture
def greetings():
    # two transitive clauses with fresh participants, then a pronoun clause
    return build_doc(
        "d",
        [
            [("greet", "transitive",
              [person("david", "David", "subject", gen="masculine"),
               "greeted",
               person("bob", "Bob", "object", gen="masculine"), "."])],
            [("thank", "transitive",
              [person("carol", "Carol", "subject", gen="feminine"),
               "thanked",
               person("dave", "Dave", "object", gen="masculine"), "."])],
            [("smile", "intransitive",
              [M("he", "he", kind="pronoun", cls="personal", role="subject",
                 num="singular", gen="masculine", anim="animate"),
               "smiled ."])],
        ],
    )


def test_expected_focus_aircraft(aircraft):
    state = fr.expected_focus(aircraft.events[0])
    assert state == fr.FocusState(cf="m2", af="m1")


def test_expected_focus_without_agent():
    doc = build_doc(
        "d",
        [[("descend", "intransitive",
           [M("pl", "the plane", role="subject", anim="inanimate",
              gen="neuter", typ="entity"),
            "descended ."])]],
    )
    state = fr.expected_focus(doc.events[0])
    assert state.cf == "pl"
    assert state.af is None


def test_expected_focus_leftovers_feed_intra(twa):
    state = fr.expected_focus(twa.events[0])
    assert state.cf == "m1"
    assert state.af == "m1"
    assert state.intra_afl == ("m3", "m2")


def test_expected_focus_empty_clause():
    doc = build_doc("d", [[("rain", "intransitive", ["rained early ."])]])
    assert fr.expected_focus(doc.events[0]) == fr.FocusState()


def test_begin_ee(aircraft):
    state = fr.begin_ee(fr.FocusState(cf="x"), aircraft.events[1])
    assert state.intra_afl == ("m3",)
    assert state.cf == "x"
    state = fr.begin_ee(fr.FocusState(), aircraft.events[4])
    assert state.intra_afl == ("m8",)


def test_begin_ee_only_pronouns():
    doc = build_doc(
        "d",
        [
            [("see", "intransitive", [person("a", "Ann", "subject"), "left ."])],
            [("see", "transitive",
              [M("p", "they", kind="pronoun", cls="personal", role="subject",
                 num="plural"),
               "saw",
               M("q", "them", kind="pronoun", cls="personal", role="object",
                 num="plural"),
               "."])],
        ],
    )
    state = fr.begin_ee(fr.FocusState(), doc.events[1])
    assert state.intra_afl == ()


def test_note_resolution():
    state = fr.FocusState(intra_afl=("w",))
    state = fr.note_resolution(state, "sp")
    assert state.intra_afl == ("sp", "w")
    assert fr.note_resolution(state, "sp").intra_afl == ("sp", "w")
    assert fr.note_resolution(state, None) is state


def test_update_shift_pushes_focus_stack(greetings):
    cfg = fr.EngineConfig()
    state = fr.expected_focus(greetings.events[0])
    assert (state.cf, state.af) == ("bob", "david")
    state = fr.begin_ee(state, greetings.events[1])
    state = fr.update_registers(state, greetings.events[1], [], cfg, greetings)
    # no reference to Bob: focus shifts to the new theme, Bob is stacked
    assert state.cf == "dave"
    assert state.fs == ("bob",)
    # the displaced actor focus lands on the actor stack
    assert state.af == "carol"
    assert state.afs == ("david",)
    assert state.afl == ("carol",)


def test_update_retention_by_resolved_pronoun(aircraft):
    cfg = fr.EngineConfig()
    state = fr.FocusState(cf="m6", af="m3", fs=("m5", "m1", "m2"))
    state = fr.begin_ee(state, aircraft.events[4])
    resolution = fr.Resolution("m7", "m6", "IR-nonagent-CF")
    state = fr.update_registers(state, aircraft.events[4], [resolution], cfg,
                                aircraft)
    assert state.cf == "m6"
    assert state.fs == ("m5", "m1", "m2")
    assert state.afl == ("m8",)


def test_update_retention_by_pre_link():
    doc = build_doc(
        "d",
        [
            [("see", "intransitive",
              [person("a", "Ann", "subject"), "left ."])],
            [("see", "intransitive",
              [person("b", "Ann", "subject"), "left again ."])],
        ],
        pre_links=(("a", "b"),),
    )
    cfg = fr.EngineConfig()
    state = fr.expected_focus(doc.events[0])
    state = fr.begin_ee(state, doc.events[1])
    state = fr.update_registers(state, doc.events[1], [], cfg, doc)
    # the second clause re-mentions the focused entity under a new id
    assert state.cf == "a"
    assert state.fs == ()


def test_update_unresolved_pronoun_theme_becomes_focus():
    doc = build_doc(
        "d",
        [
            [("see", "intransitive",
              [person("a", "Ann", "subject"), "left ."])],
            [("vanish", "intransitive",
              [M("p", "it", kind="pronoun", cls="personal", role="subject",
                 num="singular", gen="neuter", anim="inanimate"),
               "vanished ."])],
        ],
    )
    cfg = fr.EngineConfig()
    state = fr.expected_focus(doc.events[0])
    state = fr.begin_ee(state, doc.events[1])
    unresolved = fr.Resolution("p", None, "no-antecedent")
    state = fr.update_registers(state, doc.events[1], [unresolved], cfg, doc)
    assert state.cf == "p"
    assert state.fs == ("a",)


def test_update_no_theme_keeps_focus(writ):
    cfg = fr.EngineConfig()
    state = fr.expected_focus(writ.events[0])
    state = fr.begin_ee(state, writ.events[1])  # "who died", no mentions
    state = fr.update_registers(state, writ.events[1], [], cfg, writ)
    assert state.cf == "m1"
    assert state.fs == ()


def test_update_merges_intra_into_afl_most_recent_first(greetings):
    cfg = fr.EngineConfig()
    state = fr.FocusState(cf="bob", af="david", afl=("old",))
    state = fr.begin_ee(state, greetings.events[1])
    assert state.intra_afl == ("dave", "carol")
    state = fr.update_registers(state, greetings.events[1], [], cfg, greetings)
    # new cf (dave) is excluded from its own contribution
    assert state.afl == ("carol", "old")


def test_registers_never_hold_the_focus(greetings):
    cfg = fr.EngineConfig()
    state = fr.FocusState(cf="bob", af="david", afl=("dave",), fs=("dave",))
    state = fr.begin_ee(state, greetings.events[1])
    state = fr.update_registers(state, greetings.events[1], [], cfg, greetings)
    assert state.cf == "dave"
    assert "dave" not in state.afl
    assert "dave" not in state.fs
    assert "dave" not in state.afs


def test_end_sentence_reset_flag():
    state = fr.FocusState(afl=("a", "b"), fs=("c",))
    reset = fr.end_sentence(state, fr.EngineConfig())
    assert reset.afl == ()
    assert reset.fs == ("c",)
    kept = fr.end_sentence(
        state, fr.EngineConfig(afl_reset_at_sentence_end=False)
    )
    assert kept.afl == ("a", "b")


def test_sentence_update_theme_from_first_clause(writ, ontology):
    cfg = fr.EngineConfig(update_granularity="per-sentence")
    resolutions, trace = fr.resolve_document_focus(writ, ontology, cfg)
    # the sentence-level update keeps the opening clause's theme in focus
    assert trace[2].state.cf == "m1"
    assert [r.antecedent_id for r in resolutions] == ["m1"]


def test_sentence_update_extend_semantics(writ, ontology):
    cfg = fr.EngineConfig(
        update_granularity="per-sentence", afl_reset_at_sentence_end=False
    )
    _, trace = fr.resolve_document_focus(writ, ontology, cfg)
    # without the reset the second sentence extends the first one's list
    first = trace[2].state.afl
    assert trace[4].state.afl[-len(first):] == first


def test_engine_config_validation():
    with pytest.raises(ValueError):
        fr.EngineConfig(update_granularity="per-paragraph")


def test_focus_state_defaults():
    state = fr.FocusState()
    assert (state.cf, state.af) == (None, None)
    assert state.afl == state.fs == state.afs == state.intra_afl == ()
