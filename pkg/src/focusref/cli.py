"""Command-line front end: resolve, score, trace.

``resolve`` runs one of the three resolvers over an annotated corpus and
writes coreference markup.  ``score`` compares two markup or chain files
and prints recall, precision, and f as percentages.  ``trace`` prints the
focus registers after every clause.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .corpus import (
    format_trace,
    load_chain_file,
    load_corpus,
    load_priorities,
)
from .errors import FocusrefError
from .focus import EngineConfig
from .ontology import load_ontology
from .resolvers import (
    resolve_document_baseline,
    resolve_document_focus,
    resolve_document_none,
)
from .scorer import ChainSet, chains_from_resolutions, report_from_docscores, score_document
from .sgml import emit_coref_markup, load_coref_markup

_GRANULARITY = {"ee": "per-ee", "sentence": "per-sentence"}


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="focusref",
        description="Focus-based pronoun resolution and coreference scoring.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("resolve", help="resolve pronouns, write COREF markup")
    p.add_argument("--algo", required=True, choices=("focus", "baseline", "none"))
    p.add_argument(
        "--granularity",
        choices=sorted(_GRANULARITY),
        default="ee",
        help="register update cadence for --algo focus (default: ee)",
    )
    p.add_argument("--priorities", help="register-priority override table")
    p.add_argument("--ontology", required=True, help="semantic type hierarchy")
    p.add_argument("corpus", metavar="IN", help="annotated corpus file")
    p.add_argument("out", metavar="OUT", help="output path, - for stdout")

    p = sub.add_parser("score", help="score response chains against a key")
    p.add_argument("key", metavar="KEY", help="gold markup or chain file")
    p.add_argument("response", metavar="RESPONSE", help="system markup or chain file")
    p.add_argument(
        "--per-doc", action="store_true", help="also print one line per document"
    )

    p = sub.add_parser("trace", help="print focus registers per clause")
    p.add_argument(
        "--granularity", choices=sorted(_GRANULARITY), default="ee"
    )
    p.add_argument("--ontology", required=True)
    p.add_argument("corpus", metavar="IN")
    return parser


def _resolutions_for(doc, algo, ontology, config, priorities):
    if algo == "focus":
        resolutions, _ = resolve_document_focus(doc, ontology, config, priorities)
        return resolutions
    if algo == "baseline":
        return resolve_document_baseline(doc, ontology)
    return resolve_document_none(doc)


def _run_resolve(args):
    corpus = load_corpus(args.corpus)
    ontology = load_ontology(args.ontology)
    config = EngineConfig(update_granularity=_GRANULARITY[args.granularity])
    priorities = load_priorities(args.priorities) if args.priorities else None
    blocks = []
    for doc in corpus.documents:
        resolutions = _resolutions_for(
            doc, args.algo, ontology, config, priorities
        )
        chains = chains_from_resolutions(doc, resolutions)
        blocks.append(emit_coref_markup(doc, chains))
    text = "".join(blocks)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8")
    return 0


def _load_chain_sets(path):
    """Markup or chain-file, decided by the first non-blank byte."""
    head = Path(path).read_text(encoding="utf-8").lstrip()[:1]
    if head == "<":
        return load_coref_markup(path)
    return load_chain_file(path)


def _percent(fraction):
    return f"{float(fraction) * 100:.1f}"


def _run_score(args):
    key_sets = {cs.doc_id: cs for cs in _load_chain_sets(args.key)}
    response_sets = {cs.doc_id: cs for cs in _load_chain_sets(args.response)}
    doc_ids = list(key_sets)
    doc_ids.extend(d for d in response_sets if d not in key_sets)
    docscores = []
    for doc_id in doc_ids:
        key = key_sets.get(doc_id, ChainSet(doc_id, ()))
        response = response_sets.get(doc_id, ChainSet(doc_id, ()))
        docscores.append(score_document(key, response))
    report = report_from_docscores(docscores)
    if args.per_doc:
        for d in report.per_document:
            sub = report_from_docscores([d])
            print(
                f"{d.doc_id} recall {_percent(sub.recall)} "
                f"precision {_percent(sub.precision)} f {_percent(sub.f)}"
            )
    if report.degenerate:
        print(
            "warning: empty key or response side, affected scores are 0",
            file=sys.stderr,
        )
    print(
        f"recall {_percent(report.recall)} "
        f"precision {_percent(report.precision)} f {_percent(report.f)}"
    )
    return 0


def _run_trace(args):
    corpus = load_corpus(args.corpus)
    ontology = load_ontology(args.ontology)
    config = EngineConfig(update_granularity=_GRANULARITY[args.granularity])
    for doc in corpus.documents:
        _, trace = resolve_document_focus(doc, ontology, config)
        sys.stdout.write(format_trace(trace))
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    handlers = {
        "resolve": _run_resolve,
        "score": _run_score,
        "trace": _run_trace,
    }
    try:
        return handlers[args.command](args)
    except FocusrefError as exc:
        print(f"focusref: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"focusref: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
