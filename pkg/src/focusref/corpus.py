"""Plain-text file formats: annotated corpora, chain files, traces.

The corpus format is line oriented, one record per line (see
``docs/FORMATS.md`` for the grammar)::

    ontology ontology.txt

    document aircraft
    sentence 0
    ee 0 verb=say kind=transitive text="State Police said"
      mention m1 kind=proper-name role=subject num=plural gen=unknown \
anim=animate type=organization pos=0 surface="State Police"
    link m5 m6

Parsing is lenient about blank lines, comment lines, and attribute order;
serialization always produces the canonical layout (fixed attribute order,
two-space mention indent, links after the sentences, one blank line between
documents), so ``serialize(load(f))`` is byte-identical for files written
canonically.

Chain files list coreference chains per document (``doc id`` /
``chain m1 m2 ...`` lines); trace output is one line per elementary event
showing all six registers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .discourse import Document, DocumentValidationError, ElementaryEvent, Mention
from .errors import CorpusParseError
from .resolvers import DEFAULT_PRIORITIES, REGISTER_NAMES
from .scorer import ChainSet

_ATTR_RE = re.compile(r'([A-Za-z][\w-]*)=("(?:[^"\\]|\\.)*"|\S+)')


def _quote(s):
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _unquote(raw, source, lineno):
    if len(raw) >= 2 and raw.startswith('"') and raw.endswith('"'):
        body = raw[1:-1]
        out = []
        i = 0
        while i < len(body):
            c = body[i]
            if c == "\\":
                if i + 1 >= len(body) or body[i + 1] not in '"\\':
                    raise CorpusParseError(
                        f"bad escape in string {raw!r}", source, lineno
                    )
                out.append(body[i + 1])
                i += 2
            else:
                out.append(c)
                i += 1
        return "".join(out)
    return raw


@dataclass(frozen=True)
class CorpusFile:
    """A parsed corpus: documents plus an optional ontology reference."""

    documents: tuple[Document, ...]
    ontology_ref: str | None = None

    def __post_init__(self):
        seen = set()
        for doc in self.documents:
            if doc.doc_id in seen:
                raise DocumentValidationError(
                    f"duplicate document id {doc.doc_id!r}"
                )
            seen.add(doc.doc_id)

    def document(self, doc_id) -> Document:
        for doc in self.documents:
            if doc.doc_id == doc_id:
                return doc
        raise KeyError(doc_id)


def _parse_attrs(rest, source, lineno):
    attrs = {}
    consumed = 0
    for m in _ATTR_RE.finditer(rest):
        if rest[consumed : m.start()].strip():
            raise CorpusParseError(
                f"unparsed text {rest[consumed:m.start()].strip()!r}",
                source,
                lineno,
            )
        key = m.group(1)
        if key in attrs:
            raise CorpusParseError(f"duplicate attribute {key!r}", source, lineno)
        attrs[key] = _unquote(m.group(2), source, lineno)
        consumed = m.end()
    if rest[consumed:].strip():
        raise CorpusParseError(
            f"unparsed text {rest[consumed:].strip()!r}", source, lineno
        )
    return attrs


def _take(attrs, key, source, lineno):
    if key not in attrs:
        raise CorpusParseError(f"missing attribute {key!r}", source, lineno)
    return attrs.pop(key)


def _int(raw, what, source, lineno):
    try:
        return int(raw)
    except ValueError:
        raise CorpusParseError(
            f"{what} must be an integer, got {raw!r}", source, lineno
        ) from None


class _DocBuilder:
    def __init__(self, doc_id, source, lineno):
        self.doc_id = doc_id
        self.source = source
        self.lineno = lineno
        self.sentence = None
        self.par_overrides = []
        self.events = []  # [ee_index, sentence_index, verb, kind, text, [mention rows]]
        self.links = []

    def finish(self):
        events = []
        for i, (ee_index, s_index, verb, kind, text, rows) in enumerate(
            self.events
        ):
            last = i == len(self.events) - 1
            ends = last or self.events[i + 1][1] != s_index
            mentions = tuple(
                Mention(
                    id=row["id"],
                    surface=row["surface"],
                    kind=row["kind"],
                    pronoun_class=row["class"],
                    gram_role=row["role"],
                    number=row["num"],
                    gender=row["gen"],
                    animate=row["anim"],
                    sem_type=row["type"],
                    sentence_index=s_index,
                    ee_index=ee_index,
                    position=row["pos"],
                )
                for row in rows
            )
            events.append(
                ElementaryEvent(
                    ee_index=ee_index,
                    sentence_index=s_index,
                    verb=verb,
                    verb_kind=kind,
                    mentions=mentions,
                    ends_sentence=ends,
                    text=text,
                )
            )
        return Document(
            doc_id=self.doc_id,
            events=tuple(events),
            pre_links=tuple(self.links),
            paragraphs=tuple(self.par_overrides),
        )


def parse_corpus(text, source="<string>") -> CorpusFile:
    ontology_ref = None
    documents = []
    builder = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        keyword, _, rest = stripped.partition(" ")
        rest = rest.strip()

        if keyword == "ontology":
            if documents or builder is not None:
                raise CorpusParseError(
                    "ontology line must come before any document",
                    source,
                    lineno,
                )
            if ontology_ref is not None:
                raise CorpusParseError(
                    "more than one ontology line", source, lineno
                )
            if not rest:
                raise CorpusParseError(
                    "ontology line needs a path", source, lineno
                )
            ontology_ref = rest
        elif keyword == "document":
            if builder is not None:
                documents.append(builder.finish())
            if not rest or " " in rest:
                raise CorpusParseError(
                    f"bad document id {rest!r}", source, lineno
                )
            builder = _DocBuilder(rest, source, lineno)
        elif keyword == "sentence":
            if builder is None:
                raise CorpusParseError(
                    "sentence outside a document", source, lineno
                )
            index_raw, _, tail = rest.partition(" ")
            index = _int(index_raw, "sentence index", source, lineno)
            attrs = _parse_attrs(tail, source, lineno)
            if "par" in attrs:
                par = _int(attrs.pop("par"), "paragraph", source, lineno)
                if par != index:
                    builder.par_overrides.append((index, par))
            if attrs:
                raise CorpusParseError(
                    f"unknown sentence attributes {sorted(attrs)}",
                    source,
                    lineno,
                )
            builder.sentence = index
        elif keyword == "ee":
            if builder is None or builder.sentence is None:
                raise CorpusParseError(
                    "ee outside a sentence", source, lineno
                )
            index_raw, _, tail = rest.partition(" ")
            index = _int(index_raw, "ee index", source, lineno)
            attrs = _parse_attrs(tail, source, lineno)
            verb = _take(attrs, "verb", source, lineno)
            kind = _take(attrs, "kind", source, lineno)
            ee_text = _take(attrs, "text", source, lineno)
            if attrs:
                raise CorpusParseError(
                    f"unknown ee attributes {sorted(attrs)}", source, lineno
                )
            builder.events.append(
                [index, builder.sentence, verb, kind, ee_text, []]
            )
        elif keyword == "mention":
            if builder is None or not builder.events:
                raise CorpusParseError(
                    "mention outside an ee", source, lineno
                )
            mid, _, tail = rest.partition(" ")
            if not mid or "=" in mid:
                raise CorpusParseError(
                    f"bad mention id {mid!r}", source, lineno
                )
            attrs = _parse_attrs(tail, source, lineno)
            row = {"id": mid}
            for key in ("kind", "role", "num", "gen", "anim", "type"):
                row[key] = _take(attrs, key, source, lineno)
            row["pos"] = _int(
                _take(attrs, "pos", source, lineno), "pos", source, lineno
            )
            row["surface"] = _take(attrs, "surface", source, lineno)
            row["class"] = attrs.pop("class", None)
            if attrs:
                raise CorpusParseError(
                    f"unknown mention attributes {sorted(attrs)}",
                    source,
                    lineno,
                )
            builder.events[-1][5].append(row)
        elif keyword == "link":
            if builder is None:
                raise CorpusParseError(
                    "link outside a document", source, lineno
                )
            parts = rest.split()
            if len(parts) != 2:
                raise CorpusParseError(
                    "link needs exactly two mention ids", source, lineno
                )
            builder.links.append((parts[0], parts[1]))
        else:
            raise CorpusParseError(
                f"unknown record {keyword!r}", source, lineno
            )

    if builder is not None:
        documents.append(builder.finish())
    return CorpusFile(documents=tuple(documents), ontology_ref=ontology_ref)


def _serialize_mention(m):
    parts = [f"  mention {m.id}", f"kind={m.kind}", f"role={m.gram_role}"]
    if m.pronoun_class is not None:
        parts.append(f"class={m.pronoun_class}")
    parts.extend(
        [
            f"num={m.number}",
            f"gen={m.gender}",
            f"anim={m.animate}",
            f"type={m.sem_type}",
            f"pos={m.position}",
            f"surface={_quote(m.surface)}",
        ]
    )
    return " ".join(parts)


def serialize_document(doc) -> str:
    lines = [f"document {doc.doc_id}"]
    current = None
    for ee in doc.events:
        if ee.sentence_index != current:
            current = ee.sentence_index
            par = doc.paragraph_of(current)
            suffix = f" par={par}" if par != current else ""
            lines.append(f"sentence {current}{suffix}")
        lines.append(
            f"ee {ee.ee_index} verb={ee.verb} kind={ee.verb_kind} "
            f"text={_quote(ee.text)}"
        )
        lines.extend(_serialize_mention(m) for m in ee.mentions)
    lines.extend(f"link {a} {b}" for a, b in doc.pre_links)
    return "\n".join(lines) + "\n"


def serialize_corpus(corpus) -> str:
    chunks = []
    if corpus.ontology_ref is not None:
        chunks.append(f"ontology {corpus.ontology_ref}\n")
    chunks.extend(serialize_document(doc) for doc in corpus.documents)
    return "\n".join(chunks)


def load_corpus(path) -> CorpusFile:
    path = Path(path)
    return parse_corpus(path.read_text(encoding="utf-8"), source=str(path))


def save_corpus(corpus, path):
    Path(path).write_text(serialize_corpus(corpus), encoding="utf-8")


# ---------------------------------------------------------------------------
# chain files

def parse_chain_file(text, source="<string>") -> tuple[ChainSet, ...]:
    out = []
    doc_id = None
    chains = []
    seen = set()

    def flush():
        if doc_id is not None:
            out.append(ChainSet(doc_id=doc_id, chains=tuple(chains)))

    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        keyword, _, rest = stripped.partition(" ")
        rest = rest.strip()
        if keyword == "doc":
            flush()
            if not rest or " " in rest:
                raise CorpusParseError(f"bad doc id {rest!r}", source, lineno)
            if rest in seen:
                raise CorpusParseError(
                    f"duplicate doc {rest!r}", source, lineno
                )
            seen.add(rest)
            doc_id = rest
            chains = []
        elif keyword == "chain":
            if doc_id is None:
                raise CorpusParseError("chain outside a doc", source, lineno)
            members = rest.split()
            if len(members) < 2:
                raise CorpusParseError(
                    "chain needs at least two mentions", source, lineno
                )
            if len(set(members)) != len(members):
                raise CorpusParseError(
                    "repeated mention within a chain", source, lineno
                )
            chains.append(frozenset(members))
        else:
            raise CorpusParseError(
                f"unknown record {keyword!r}", source, lineno
            )
    flush()
    return tuple(out)


def serialize_chain_sets(chain_sets) -> str:
    lines = []
    for cs in chain_sets:
        lines.append(f"doc {cs.doc_id}")
        for chain in sorted(cs.chains, key=lambda c: sorted(c)):
            lines.append("chain " + " ".join(sorted(chain)))
    return "\n".join(lines) + "\n" if lines else ""


def load_chain_file(path) -> tuple[ChainSet, ...]:
    path = Path(path)
    return parse_chain_file(path.read_text(encoding="utf-8"), source=str(path))


# ---------------------------------------------------------------------------
# trace output

def _reg(ids):
    return "[" + ",".join(ids) + "]"


def format_trace_entry(entry) -> str:
    s = entry.state
    return (
        f"{entry.doc_id} {entry.ee_index} "
        f"CF={s.cf or '-'} AF={s.af or '-'} "
        f"AFL={_reg(s.afl)} FS={_reg(s.fs)} AFS={_reg(s.afs)} "
        f"IntraAFL={_reg(s.intra_afl)}"
    )


def format_trace(entries) -> str:
    return "".join(format_trace_entry(e) + "\n" for e in entries)


# ---------------------------------------------------------------------------
# rule-priority tables

def parse_priorities(text, source="<string>") -> dict:
    """Parse a register-priority override table.

    One line per pronoun class, ``class: REG, REG, ...``; classes not
    listed keep their default sequence.
    """
    table = dict(DEFAULT_PRIORITIES)
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        name, sep, rest = line.partition(":")
        name = name.strip()
        if not sep or name not in DEFAULT_PRIORITIES:
            raise CorpusParseError(
                f"expected one of {sorted(DEFAULT_PRIORITIES)} before ':', "
                f"got {line!r}",
                source,
                lineno,
            )
        if name in seen:
            raise CorpusParseError(
                f"duplicate class {name!r}", source, lineno
            )
        seen.add(name)
        regs = tuple(r.strip() for r in rest.split(",") if r.strip())
        for r in regs:
            if r not in REGISTER_NAMES:
                raise CorpusParseError(
                    f"unknown register {r!r}", source, lineno
                )
        table[name] = regs
    return table


def load_priorities(path) -> dict:
    path = Path(path)
    return parse_priorities(path.read_text(encoding="utf-8"), source=str(path))
