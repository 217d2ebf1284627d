"""Shared test helpers: document builders, random generators, oracles.

``build_doc`` lays out clause text and token offsets from interleaved
segments, so tests can write documents without hand-counting positions.
The randomized suites use these builders with a seeded ``random.Random``;
the scorer suite checks against ``partition_counts``, a deliberately
naive re-derivation of the partition metric.
"""

from __future__ import annotations

import focusref as fr

# Register snapshots after each clause of the aircraft fixture, worked out
# by hand; several suites check engine output against these exact lines.
AIRCRAFT_TRACE = (
    "aircraft 0 CF=m2 AF=m1 AFL=[] FS=[] AFS=[] IntraAFL=[]",
    "aircraft 1 CF=m1 AF=m3 AFL=[m3] FS=[m2] AFS=[] IntraAFL=[m1,m3]",
    "aircraft 2 CF=m5 AF=m3 AFL=[m3] FS=[m1,m2] AFS=[] IntraAFL=[m5]",
    "aircraft 3 CF=m6 AF=m3 AFL=[] FS=[m5,m1,m2] AFS=[] IntraAFL=[m6]",
    "aircraft 4 CF=m6 AF=m3 AFL=[m8] FS=[m5,m1,m2] AFS=[] IntraAFL=[m6,m8]",
)

# --------------------------------------------------------------------------
# document construction


def M(mid, surface, **attrs):
    """Mention segment for build_doc; attrs use short keys (role, typ...)."""
    return {"id": mid, "surface": surface, **attrs}


def _mention_from(attrs, sentence, ee, pos):
    a = dict(attrs)
    return fr.Mention(
        id=a.pop("id"),
        surface=a.pop("surface"),
        kind=a.pop("kind", "common-np"),
        pronoun_class=a.pop("cls", None),
        gram_role=a.pop("role", "oblique"),
        number=a.pop("num", "singular"),
        gender=a.pop("gen", "unknown"),
        animate=a.pop("anim", "unknown"),
        sem_type=a.pop("typ", "entity"),
        sentence_index=sentence,
        ee_index=ee,
        position=pos,
    )


def build_doc(doc_id, sentences, pre_links=(), paragraphs=()):
    """Assemble a Document from per-sentence clause descriptions.

    Each clause is ``(verb, verb_kind, segments)``; a segment is either a
    string of filler tokens or an ``M(...)`` mention whose surface tokens
    are spliced into the clause text at that point.  Event mentions
    (kind="event") are zero width and contribute no tokens.
    """
    events = []
    offset = 0
    ee_index = 0
    for s_index, sentence in enumerate(sentences):
        for j, (verb, verb_kind, segments) in enumerate(sentence):
            tokens = []
            mentions = []
            for seg in segments:
                if isinstance(seg, str):
                    tokens.extend(seg.split())
                    continue
                pos = offset + len(tokens)
                mention = _mention_from(seg, s_index, ee_index, pos)
                if mention.kind != "event":
                    tokens.extend(mention.tokens)
                mentions.append(mention)
            events.append(
                fr.ElementaryEvent(
                    ee_index=ee_index,
                    sentence_index=s_index,
                    verb=verb,
                    verb_kind=verb_kind,
                    mentions=tuple(mentions),
                    ends_sentence=j == len(sentence) - 1,
                    text=" ".join(tokens),
                )
            )
            offset += len(tokens)
            ee_index += 1
    return fr.Document(
        doc_id=doc_id,
        events=tuple(events),
        pre_links=tuple(pre_links),
        paragraphs=tuple(paragraphs),
    )


# --------------------------------------------------------------------------
# scoring oracle


def partition_counts(gold_chains, other_chains):
    """(numerator, denominator) of the partition metric, computed naively.

    Builds the induced partition of every gold chain explicitly as a list
    of parts and counts the links needed to rejoin them.
    """
    numerator = 0
    denominator = 0
    for chain in gold_chains:
        parts = []
        placed = set()
        for other in other_chains:
            shared = chain & other
            if shared:
                parts.append(shared)
                placed |= shared
        parts.extend({m} for m in chain - placed)
        numerator += len(chain) - len(parts)
        denominator += len(chain) - 1
    return numerator, denominator


def random_chain_pair(rng, max_mentions=12, max_chains=4):
    """A random key/response pair over a shared mention universe."""
    universe = [f"m{i}" for i in range(rng.randint(1, max_mentions))]

    def scatter():
        pool = universe[:]
        rng.shuffle(pool)
        kept = pool[: rng.randint(0, len(pool))]
        bins = [[] for _ in range(rng.randint(1, max_chains))]
        for mid in kept:
            rng.choice(bins).append(mid)
        return tuple(frozenset(b) for b in bins if b)

    return scatter(), scatter()


# --------------------------------------------------------------------------
# random documents

_FILLER = (
    "near", "under", "along", "before", "after", "around", "behind",
    "quietly", "slowly", "again", "already", "yesterday", "together",
)
_NOUNS = (
    "the report", "a committee", "the harbour", "an engine", "the letter",
    "a neighbour", "the council", "an island", "the bridge", "a pilot",
    "the morning", "a signal", "the garden", "an office", "the crowd",
)
_VERBS = ("move", "see", "find", "leave", "reach", "watch", "hold", "pass")
_PRONOUNS = (
    # surface, class, features
    ("it", "personal", "singular", "neuter", "inanimate"),
    ("they", "personal", "plural", "unknown", "unknown"),
    ("them", "personal", "plural", "unknown", "unknown"),
    ("he", "personal", "singular", "masculine", "animate"),
    ("she", "personal", "singular", "feminine", "animate"),
    ("her", "possessive", "singular", "feminine", "animate"),
    ("their", "possessive", "plural", "unknown", "unknown"),
    ("itself", "reflexive", "singular", "neuter", "inanimate"),
    ("themselves", "reflexive", "plural", "unknown", "unknown"),
)


def random_document(rng, ontology, doc_id):
    """A random well-formed document with 1 to 8 clauses."""
    types = [n for n in ontology.names()]
    counter = 0

    def fresh():
        nonlocal counter
        counter += 1
        return f"{doc_id}x{counter}"

    def random_mention(role, force_noun=False):
        if not force_noun and rng.random() < 0.35:
            surface, cls, num, gen, anim = rng.choice(_PRONOUNS)
            return M(
                fresh(), surface, kind="pronoun", cls=cls, role=role,
                num=num, gen=gen, anim=anim, typ="entity",
            )
        kind = rng.choice(("common-np", "proper-name"))
        surface = rng.choice(_NOUNS)
        if kind == "proper-name":
            surface = surface.split()[-1].capitalize()
        return M(
            fresh(), surface, kind=kind, role=role,
            num=rng.choice(("singular", "plural", "unknown")),
            gen=rng.choice(("masculine", "feminine", "neuter", "unknown")),
            anim=rng.choice(("animate", "inanimate", "unknown")),
            typ=rng.choice(types),
        )

    n_ees = rng.randint(1, 8)
    sentences = []
    current = []
    for i in range(n_ees):
        verb_kind = rng.choice(("transitive", "intransitive", "copula"))
        segments = []
        if rng.random() < 0.85:
            segments.append(random_mention("subject"))
        segments.append(rng.choice(_VERBS) + "ed")
        if verb_kind == "transitive" and rng.random() < 0.85:
            segments.append(random_mention("object"))
        for _ in range(rng.randint(0, 2)):
            segments.append(rng.choice(_FILLER))
            segments.append(
                random_mention(rng.choice(("oblique", "possessor")))
            )
        if rng.random() < 0.2:
            segments.append(
                M(
                    fresh(), "", kind="event", role="oblique",
                    num="singular", gen="neuter", anim="inanimate",
                    typ="event",
                )
            )
        current.append((rng.choice(_VERBS), verb_kind, segments))
        if i == n_ees - 1 or rng.random() < 0.4:
            sentences.append(current)
            current = []

    doc = build_doc(doc_id, sentences)
    links = []
    nouns = [m.id for m in doc.mentions if not m.is_pronoun]
    if len(nouns) >= 2 and rng.random() < 0.3:
        a, b = rng.sample(nouns, 2)
        links.append((a, b))
    if links:
        doc = build_doc(
            doc_id,
            sentences,
            pre_links=tuple(links),
        )
    return doc
