"""Focus-based pronoun resolution with model-theoretic coreference scoring.

The package tracks discourse focus through clause-annotated documents,
resolves pronouns with class-specific register lookups and a compatibility
filter, and scores the resulting coreference chains against gold keys.
"""

from .corpus import (
    CorpusFile,
    format_trace,
    format_trace_entry,
    load_chain_file,
    load_corpus,
    load_priorities,
    parse_chain_file,
    parse_corpus,
    parse_priorities,
    save_corpus,
    serialize_chain_sets,
    serialize_corpus,
    serialize_document,
)
from .discourse import (
    Document,
    ElementaryEvent,
    Mention,
    Resolution,
    agent_of,
    classify_pronoun,
    theme_of,
)
from .errors import (
    CorpusParseError,
    DocumentValidationError,
    FocusrefError,
    IntegrityError,
    MarkupError,
    OntologyError,
    ScoringError,
)
from .focus import (
    EngineConfig,
    FocusState,
    TraceEntry,
    begin_ee,
    end_sentence,
    expected_focus,
    note_resolution,
    update_registers,
    update_registers_sentence,
)
from .ontology import Ontology, OntologyNode, load_ontology, parse_ontology
from .resolvers import (
    DEFAULT_PRIORITIES,
    Candidate,
    filter_accept,
    propose,
    resolve_document_baseline,
    resolve_document_focus,
    resolve_document_none,
)
from .scorer import (
    ChainSet,
    DocScore,
    ScoreReport,
    chains_from_resolutions,
    combine_reports,
    score_document,
    vilain_score,
)
from .sgml import (
    emit_coref_markup,
    emit_corpus_markup,
    load_coref_markup,
    parse_coref_markup,
)

__version__ = "0.1.0"

__all__ = [
    "CorpusFile",
    "format_trace",
    "format_trace_entry",
    "load_chain_file",
    "load_corpus",
    "load_priorities",
    "parse_chain_file",
    "parse_corpus",
    "parse_priorities",
    "save_corpus",
    "serialize_chain_sets",
    "serialize_corpus",
    "serialize_document",
    "Document",
    "ElementaryEvent",
    "Mention",
    "Resolution",
    "agent_of",
    "classify_pronoun",
    "theme_of",
    "CorpusParseError",
    "DocumentValidationError",
    "FocusrefError",
    "IntegrityError",
    "MarkupError",
    "OntologyError",
    "ScoringError",
    "EngineConfig",
    "FocusState",
    "TraceEntry",
    "begin_ee",
    "end_sentence",
    "expected_focus",
    "note_resolution",
    "update_registers",
    "update_registers_sentence",
    "Ontology",
    "OntologyNode",
    "load_ontology",
    "parse_ontology",
    "DEFAULT_PRIORITIES",
    "Candidate",
    "filter_accept",
    "propose",
    "resolve_document_baseline",
    "resolve_document_focus",
    "resolve_document_none",
    "ChainSet",
    "DocScore",
    "ScoreReport",
    "chains_from_resolutions",
    "combine_reports",
    "score_document",
    "vilain_score",
    "emit_coref_markup",
    "emit_corpus_markup",
    "load_coref_markup",
    "parse_coref_markup",
    "__version__",
]
