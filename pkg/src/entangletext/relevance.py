"""Term relevance ranking and concept-pair construction.

Two ranking methods: raw within-topic frequency, and tf-idf with a
smoothed idf, score = tf * (ln((N + 1) / (df + 1)) + 1), where N counts
every document in the collection and df counts the documents containing
the term collection-wide. Ties always break lexicographically so every
ranking is a total order. The top-k terms form one concept, the next k
the other.
"""

from __future__ import annotations

import csv
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .corpus import CorpusError, TopicCorpus

__all__ = [
    "CONCEPT_SIZE",
    "TermStats",
    "RankedTerms",
    "ConceptPair",
    "document_frequencies",
    "term_statistics",
    "rank_by_frequency",
    "rank_by_tfidf",
    "build_concept_pair",
    "ranking_to_csv",
]

CONCEPT_SIZE = 10
_MIN_DISTINCT = 2 * CONCEPT_SIZE


@dataclass(frozen=True)
class TermStats:
    term: str
    tf: int
    df: int


@dataclass(frozen=True)
class RankedTerms:
    """Full relevance ranking of a topic (callers truncate as needed)."""

    topic_id: str
    method: str  # "frequency" | "tfidf"
    terms: tuple[tuple[str, float], ...]  # (term, score), scores non-increasing

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((t, s) for t, s in self.terms))
        scores = [s for _, s in self.terms]
        if any(a < b for a, b in zip(scores, scores[1:])):
            raise ValueError("ranking scores must be non-increasing")


@dataclass(frozen=True)
class ConceptPair:
    """Two disjoint term sets: ranks 1..k and ranks k+1..2k of one ranking."""

    c1: tuple[str, ...]
    c2: tuple[str, ...]
    method: str
    topic_id: str

    def __post_init__(self):
        object.__setattr__(self, "c1", tuple(self.c1))
        object.__setattr__(self, "c2", tuple(self.c2))
        if len(self.c1) != len(self.c2):
            raise ValueError("concept term lists must have equal size")
        combined = self.c1 + self.c2
        if len(set(combined)) != len(combined):
            raise ValueError("concept terms must be distinct and disjoint")


def _topic_counts(topic: TopicCorpus) -> Counter:
    counts: Counter = Counter()
    for doc in topic.documents:
        counts.update(doc.terms)
    return counts


def _require_vocabulary(topic_id: str, n_distinct: int) -> None:
    if n_distinct < _MIN_DISTINCT:
        raise CorpusError(
            f"topic {topic_id!r}: insufficient vocabulary "
            f"({n_distinct} distinct terms, need at least {_MIN_DISTINCT})"
        )


def document_frequencies(collection: Iterable[TopicCorpus]) -> Counter:
    """Number of documents, collection-wide, containing each term.

    Computed once per run and shared read-only by every tf-idf ranking.
    """
    df: Counter = Counter()
    for topic in collection:
        for doc in topic.documents:
            df.update(set(doc.terms))
    return df


def term_statistics(
    topic: TopicCorpus, collection: Iterable[TopicCorpus] | None = None
) -> list[TermStats]:
    """Per-term occurrence and document counts, most frequent first.

    ``collection`` widens the document-frequency scope beyond the topic
    itself (the tf-idf ranking uses the whole collection).
    """
    counts = _topic_counts(topic)
    df = document_frequencies(collection if collection is not None else [topic])
    return [
        TermStats(term=term, tf=tf, df=df[term])
        for term, tf in sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    ]


def rank_by_frequency(topic: TopicCorpus) -> RankedTerms:
    """Rank a topic's terms by occurrence count, ties lexicographic."""
    counts = _topic_counts(topic)
    _require_vocabulary(topic.topic_id, len(counts))
    ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return RankedTerms(
        topic_id=topic.topic_id,
        method="frequency",
        terms=tuple((term, float(tf)) for term, tf in ordered),
    )


def rank_by_tfidf(
    topic: TopicCorpus,
    collection: Iterable[TopicCorpus],
    df: Mapping[str, int] | None = None,
) -> RankedTerms:
    """Rank a topic's terms by tf * (ln((N+1)/(df+1)) + 1).

    ``df`` may be passed precomputed (see document_frequencies); otherwise
    it is derived from ``collection``. N is the total document count of the
    collection.
    """
    collection = list(collection)
    if not collection:
        raise ValueError("collection must not be empty")
    if df is None:
        df = document_frequencies(collection)
    n_docs = sum(len(t.documents) for t in collection)

    counts = _topic_counts(topic)
    _require_vocabulary(topic.topic_id, len(counts))
    scored = [
        (term, tf * (math.log((n_docs + 1) / (df[term] + 1)) + 1.0))
        for term, tf in counts.items()
    ]
    scored.sort(key=lambda kv: (-kv[1], kv[0]))
    return RankedTerms(topic_id=topic.topic_id, method="tfidf", terms=tuple(scored))


def build_concept_pair(ranked: RankedTerms, k: int = CONCEPT_SIZE) -> ConceptPair:
    """Split ranks 1..k and k+1..2k into the two concept term lists."""
    if k < 1:
        raise ValueError(f"concept size must be >= 1, got {k}")
    if len(ranked.terms) < 2 * k:
        raise CorpusError(
            f"topic {ranked.topic_id!r}: insufficient ranked terms "
            f"({len(ranked.terms)}, need at least {2 * k})"
        )
    terms = [t for t, _ in ranked.terms]
    return ConceptPair(
        c1=tuple(terms[:k]),
        c2=tuple(terms[k : 2 * k]),
        method=ranked.method,
        topic_id=ranked.topic_id,
    )


def ranking_to_csv(ranked: RankedTerms, path: str | Path) -> None:
    """Write (term, score, rank) rows, rank starting at 1."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["term", "score", "rank"])
        for rank, (term, score) in enumerate(ranked.terms, start=1):
            writer.writerow([term, repr(score), rank])
