"""SGML coreference markup: emit and re-parse identity chains.

Output wraps each chained mention of the reconstructed text in a COREF tag::

    <DOC DOCID="aircraft">
    <COREF ID="m1">State Police</COREF> said ... told <COREF ID="m4" REF="m1">them</COREF> ...
    </DOC>

One line per sentence.  ``REF`` names the nearest preceding mention of the
same chain; the chain-initial mention carries no ``REF``.  Only the ID/REF
attributes are used, which is all identity chains need.  Parsing recovers
the chain partition by closing over the REF links, so emit followed by
parse is the identity on chain sets and parse followed by emit is the
identity on canonically produced files.
"""

from __future__ import annotations

import re
from pathlib import Path

from .errors import MarkupError
from .scorer import ChainSet

_DOC_RE = re.compile(
    r'<DOC DOCID="(?P<doc_id>[^"]*)">\n(?P<body>.*?)</DOC>\n', re.DOTALL
)
_COREF_RE = re.compile(
    r'<COREF ID="(?P<id>[^"]*)"(?: REF="(?P<ref>[^"]*)")?>(?P<surface>[^<]*)</COREF>'
)


def _mention_order(doc):
    order = {}
    for ee in doc.events:
        for k, m in enumerate(ee.mentions):
            order[m.id] = (m.position, ee.ee_index, k)
    return order


def emit_coref_markup(doc, chains) -> str:
    """Render a document as sentence-per-line text with COREF tags."""
    if chains.doc_id != doc.doc_id:
        raise MarkupError(
            f"chains are for {chains.doc_id!r}, document is {doc.doc_id!r}"
        )
    order = _mention_order(doc)

    # REF target per chained mention: its predecessor in text order
    ref = {}
    for chain in chains.chains:
        for mid in chain:
            if mid not in order:
                raise MarkupError(
                    f"chain references unknown mention {mid!r}"
                )
        members = sorted(chain, key=lambda mid: order[mid])
        for prev, mid in zip(members, members[1:]):
            ref[mid] = prev
        for mid in members:
            ref.setdefault(mid, None)

    open_at = {}  # token offset -> list of mention ids, outermost first
    close_at = {}  # token offset (last token) -> list of mention ids
    for mid in ref:
        m = doc.mentions_by_id[mid]
        if not m.tokens:
            raise MarkupError(
                f"mention {mid!r} has no surface text to wrap"
            )
        open_at.setdefault(m.position, []).append(mid)
        close_at.setdefault(m.end - 1, []).append(mid)

    lines = []
    offset = 0
    for s in range(doc.sentence_count):
        parts = []
        for ee in doc.sentence_events(s):
            for token in ee.tokens:
                if "<" in token or ">" in token:
                    raise MarkupError(
                        f"token {token!r} cannot be written as markup"
                    )
                piece = token
                for mid in open_at.get(offset, ()):
                    target = ref[mid]
                    attr = f' REF="{target}"' if target else ""
                    piece = f'<COREF ID="{mid}"{attr}>' + piece
                for mid in close_at.get(offset, ()):
                    piece = piece + "</COREF>"
                parts.append(piece)
                offset += 1
        lines.append(" ".join(parts))
    body = "".join(line + "\n" for line in lines)
    return f'<DOC DOCID="{doc.doc_id}">\n{body}</DOC>\n'


def emit_corpus_markup(docs_with_chains) -> str:
    """Concatenated markup blocks for (document, chain set) pairs."""
    return "".join(
        emit_coref_markup(doc, chains) for doc, chains in docs_with_chains
    )


def _chains_from_tags(doc_id, tags) -> ChainSet:
    ids = [t[0] for t in tags]
    if len(set(ids)) != len(ids):
        dup = next(i for i in ids if ids.count(i) > 1)
        raise MarkupError(f"document {doc_id!r}: duplicate ID {dup!r}")
    known = set(ids)
    parent = {i: i for i in ids}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for mid, target in tags:
        if target is None:
            continue
        if target not in known:
            raise MarkupError(
                f"document {doc_id!r}: REF to unknown ID {target!r}"
            )
        ra, rb = find(mid), find(target)
        if ra != rb:
            parent[ra] = rb
    groups = {}
    for mid in ids:
        groups.setdefault(find(mid), set()).add(mid)
    chains = sorted(
        (frozenset(g) for g in groups.values()), key=lambda c: sorted(c)
    )
    return ChainSet(doc_id=doc_id, chains=tuple(chains))


def parse_coref_markup(text) -> tuple[ChainSet, ...]:
    """Recover chain sets from markup, one per DOC block, in file order."""
    out = []
    consumed_spans = []
    for m in _DOC_RE.finditer(text):
        consumed_spans.append(m.span())
        body = m.group("body")
        tags = []
        for t in _COREF_RE.finditer(body):
            tags.append((t.group("id"), t.group("ref")))
        leftover = _COREF_RE.sub("", body)
        if "<COREF" in leftover or "</COREF" in leftover:
            raise MarkupError(
                f"document {m.group('doc_id')!r}: malformed COREF markup"
            )
        out.append(_chains_from_tags(m.group("doc_id"), tags))
    stripped = _DOC_RE.sub("", text)
    if stripped.strip():
        raise MarkupError(
            f"unparsed text outside DOC blocks: {stripped.strip()[:40]!r}"
        )
    if not out and text.strip():
        raise MarkupError("no DOC blocks found")
    return tuple(out)


def load_coref_markup(path) -> tuple[ChainSet, ...]:
    return parse_coref_markup(Path(path).read_text(encoding="utf-8"))
