"""Model-theoretic coreference scoring over chain partitions.

Key and response each partition a set of mention ids into coreference
chains.  Recall asks how many of the links needed to build each key chain
the response supplies:

    recall = sum(|S| - |p(S)|) / sum(|S| - 1)

over key chains ``S``, where ``p(S)`` is the partition of ``S`` induced by
the response (members of ``S`` the response never mentions each count as
their own part).  Precision is the same formula with the two sides swapped,
and f is the harmonic mean.  All arithmetic is exact rational arithmetic;
corpus-level figures pool numerators and denominators across documents
before dividing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import IntegrityError, ScoringError


@dataclass(frozen=True)
class ChainSet:
    """The coreference chains of one document."""

    doc_id: str
    chains: tuple[frozenset, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "chains", tuple(frozenset(c) for c in self.chains)
        )
        seen = set()
        for chain in self.chains:
            if not chain:
                raise ScoringError(
                    f"document {self.doc_id!r}: empty chain"
                )
            for mid in chain:
                if mid in seen:
                    raise ScoringError(
                        f"document {self.doc_id!r}: mention {mid!r} "
                        "appears in more than one chain"
                    )
                seen.add(mid)

    @property
    def mention_ids(self) -> frozenset:
        out = set()
        for chain in self.chains:
            out |= chain
        return frozenset(out)


@dataclass(frozen=True)
class DocScore:
    doc_id: str
    recall_num: int
    recall_den: int
    precision_num: int
    precision_den: int


@dataclass(frozen=True)
class ScoreReport:
    recall: Fraction
    precision: Fraction
    f: Fraction
    per_document: tuple[DocScore, ...]
    degenerate: bool = False


def _f_measure(recall, precision):
    if recall + precision == 0:
        return Fraction(0)
    return 2 * recall * precision / (recall + precision)


def _partition_numerator(gold_chains, other_chains):
    """Numerator of the partition formula: links of ``gold_chains`` that
    survive the partition induced by ``other_chains``."""
    containing = {}
    for i, chain in enumerate(other_chains):
        for mid in chain:
            containing[mid] = i
    numerator = 0
    for chain in gold_chains:
        touched = {containing[mid] for mid in chain if mid in containing}
        unaligned = sum(1 for mid in chain if mid not in containing)
        numerator += len(chain) - unaligned - len(touched)
    return numerator


def _denominator(chains):
    return sum(len(chain) - 1 for chain in chains)


def _ratio(num, den):
    return Fraction(num, den) if den else Fraction(0)


def score_document(key, response) -> DocScore:
    if key.doc_id != response.doc_id:
        raise ScoringError(
            f"key is for {key.doc_id!r} but response is for "
            f"{response.doc_id!r}"
        )
    return DocScore(
        doc_id=key.doc_id,
        recall_num=_partition_numerator(key.chains, response.chains),
        recall_den=_denominator(key.chains),
        precision_num=_partition_numerator(response.chains, key.chains),
        precision_den=_denominator(response.chains),
    )


def report_from_docscores(docs) -> ScoreReport:
    docs = tuple(docs)
    r_num = sum(d.recall_num for d in docs)
    r_den = sum(d.recall_den for d in docs)
    p_num = sum(d.precision_num for d in docs)
    p_den = sum(d.precision_den for d in docs)
    recall = _ratio(r_num, r_den)
    precision = _ratio(p_num, p_den)
    return ScoreReport(
        recall=recall,
        precision=precision,
        f=_f_measure(recall, precision),
        per_document=docs,
        degenerate=r_den == 0 or p_den == 0,
    )


def vilain_score(key, response) -> ScoreReport:
    """Score one document's response chains against its key chains."""
    return report_from_docscores([score_document(key, response)])


def combine_reports(reports) -> ScoreReport:
    """Pool per-document counts from several reports into one report."""
    docs = []
    for report in reports:
        docs.extend(report.per_document)
    return report_from_docscores(docs)


def chains_from_resolutions(doc, resolutions) -> ChainSet:
    """Build response chains from annotated links plus resolver output.

    Takes the transitive closure over the document's pre-links and each
    resolution's pronoun-antecedent pair; mentions that end up in no pair
    form no chain.
    """
    known = doc.mentions_by_id
    pairs = list(doc.pre_links)
    for r in resolutions:
        if r.antecedent_id is None:
            continue
        pairs.append((r.pronoun_id, r.antecedent_id))
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        for mid in (a, b):
            if mid not in known:
                raise IntegrityError(
                    f"document {doc.doc_id!r}: link references unknown "
                    f"mention {mid!r}"
                )
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
    groups = {}
    for mid in parent:
        groups.setdefault(find(mid), set()).add(mid)
    chains = sorted(
        (frozenset(g) for g in groups.values() if len(g) > 1),
        key=lambda c: sorted(c),
    )
    return ChainSet(doc_id=doc.doc_id, chains=tuple(chains))
