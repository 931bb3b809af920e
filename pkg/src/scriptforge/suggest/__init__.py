"""Ranking of ontology event types for curator-entered step text.

The curator's text is embedded as-is (after whitespace normalization; no
trigger extraction) and compared by cosine against each event type's
candidate text (definition + template). Candidate embeddings are cached
per (ontology version, provider identity) so the ontology is embedded once
per provider session.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from scriptforge.errors import EmptyText, UnknownType
from scriptforge.ontology import Ontology, candidate_text
from scriptforge.similarity import EmbeddingProvider, EmbeddingVector, cosine, normalize


@dataclass(frozen=True)
class TypeSuggestion:
    type_id: str
    score: float
    rank: int


@dataclass(frozen=True)
class TypeChoiceRecord:
    """One gold/predictions pair for later top-k and reciprocal-rank metrics.

    ``gold`` may well be absent from ``predictions``: the curator can pick
    any type from the ontology, not just a suggested one.
    """

    event_id: str
    event_text: str
    gold: str
    predictions: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "event": self.event_id,
            "text": self.event_text,
            "gold": self.gold,
            "predictions": list(self.predictions),
        }


class CandidateEmbeddingCache:
    """Thread-safe cache of candidate-text embeddings.

    Keyed by (ontology version, provider identity); a miss embeds every
    candidate text in one batch under the lock.
    """

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._store: dict[tuple[str, str], dict[str, EmbeddingVector]] = {}

    def get(self, ontology: Ontology, provider: EmbeddingProvider) -> dict[str, EmbeddingVector]:
        key = (ontology.version, provider.identity)
        with self._lock:
            cached = self._store.get(key)
            if cached is not None:
                return cached
            texts = [candidate_text(t) for t in ontology.event_types]
            vectors = provider.embed(texts)
            table = {t.id: v for t, v in zip(ontology.event_types, vectors)}
            self._store[key] = table
            return table

    def clear(self) -> None:
        with self._lock:
            self._store.clear()


_default_cache = CandidateEmbeddingCache()


def suggest_types(
    event_text: str,
    ontology: Ontology,
    provider: EmbeddingProvider,
    k: int = 3,
    cache: CandidateEmbeddingCache | None = None,
) -> list[TypeSuggestion]:
    """Top-k event types by cosine similarity, ties broken by type id."""
    cleaned = normalize(event_text)
    if not cleaned:
        raise EmptyText("event text is empty")
    if k < 1:
        raise ValueError("k must be >= 1")
    table = (cache or _default_cache).get(ontology, provider)
    [query] = provider.embed([cleaned])
    scored = sorted(
        ((cosine(query, vec), type_id) for type_id, vec in table.items()),
        key=lambda pair: (-pair[0], pair[1]),
    )
    return [
        TypeSuggestion(type_id=type_id, score=score, rank=i + 1)
        for i, (score, type_id) in enumerate(scored[:k])
    ]


def record_choice(
    event_id: str,
    event_text: str,
    suggestions: list[TypeSuggestion],
    chosen_type_id: str,
    ontology: Ontology,
) -> TypeChoiceRecord:
    if not ontology.has_event_type(chosen_type_id):
        raise UnknownType(f"no event type {chosen_type_id!r} in ontology")
    return TypeChoiceRecord(
        event_id=event_id,
        event_text=event_text,
        gold=chosen_type_id,
        predictions=tuple(s.type_id for s in sorted(suggestions, key=lambda s: s.rank)),
    )
