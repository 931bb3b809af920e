"""Grounding argument labels in a local knowledge-base subset.

Retrieval is a local inverted index over lowercased tokens of entry labels
and aliases plus a whole-phrase map; only class entries are ever returned,
since descriptive noun phrases (not specific named entities) are what get
grounded. Retrieved candidates are reranked by embedding similarity
between the query label and each entry's prose description.

KB file format (tab-separated, one entry per row, ``#`` comments allowed):

    qid <TAB> label <TAB> alias|alias|... <TAB> description <TAB> is_class

``is_class`` is ``true``/``false`` (or ``1``/``0``). Aliases may be empty.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from scriptforge.errors import (
    DuplicateQid,
    EmptyText,
    InvalidRequest,
    MalformedRow,
    StaleCandidate,
)
from scriptforge.similarity import EmbeddingProvider, cosine

_TOKEN = re.compile(r"[a-z0-9]+")


def _tokens(text: str) -> list[str]:
    return _TOKEN.findall(text.lower())


def _phrase(text: str) -> str:
    return " ".join(_tokens(text))


@dataclass(frozen=True)
class KBEntry:
    qid: str
    label: str
    aliases: tuple[str, ...]
    description: str
    is_class: bool

    def surface_forms(self) -> tuple[str, ...]:
        return (self.label, *self.aliases)


@dataclass(frozen=True)
class LinkCandidate:
    entry: KBEntry
    retrieval_score: float
    rerank_score: float
    rank: int


class KBIndex:
    """Immutable-after-ingest index; concurrent searches are safe."""

    def __init__(self, entries: Sequence[KBEntry]) -> None:
        self.entries: dict[str, KBEntry] = {e.qid: e for e in entries}
        self._token_map: dict[str, set[str]] = {}
        self._phrase_map: dict[str, set[str]] = {}
        self._entry_tokens: dict[str, set[str]] = {}
        for entry in entries:
            toks: set[str] = set()
            for form in entry.surface_forms():
                phrase = _phrase(form)
                if phrase:
                    self._phrase_map.setdefault(phrase, set()).add(entry.qid)
                toks.update(_tokens(form))
            self._entry_tokens[entry.qid] = toks
            for tok in toks:
                self._token_map.setdefault(tok, set()).add(entry.qid)

    def __len__(self) -> int:
        return len(self.entries)


def ingest_kb(source: str | Path) -> KBIndex:
    """Build a KBIndex from a tab-separated fixture file."""
    text = Path(source).read_text(encoding="utf-8")
    entries: list[KBEntry] = []
    seen: set[str] = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 5:
            raise MalformedRow(f"expected 5 tab-separated columns, got {len(cols)}", line=lineno)
        qid, label, aliases_col, description, is_class_col = (c.strip() for c in cols)
        if not qid:
            raise MalformedRow("empty qid", line=lineno)
        if not label:
            raise MalformedRow("empty label", line=lineno)
        if qid in seen:
            raise DuplicateQid(f"qid {qid!r} appears more than once")
        seen.add(qid)
        flag = is_class_col.lower()
        if flag not in ("true", "false", "1", "0"):
            raise MalformedRow(f"is_class must be true/false, got {is_class_col!r}", line=lineno)
        aliases = tuple(a.strip() for a in aliases_col.split("|") if a.strip())
        entries.append(
            KBEntry(
                qid=qid,
                label=label,
                aliases=aliases,
                description=description,
                is_class=flag in ("true", "1"),
            )
        )
    return KBIndex(entries)


def search(index: KBIndex, label_text: str, limit: int = 5) -> list[tuple[KBEntry, float]]:
    """Class entries matching a label, best first.

    Exact whole-phrase matches on label or alias score 1.0 and outrank
    everything else; other hits score by token overlap (matched query
    tokens / total query tokens). Ties break by qid.
    """
    query_phrase = _phrase(label_text)
    query_tokens = set(_tokens(label_text))
    if not query_tokens:
        raise EmptyText("search label is empty")

    exact = {qid for qid in index._phrase_map.get(query_phrase, ()) if index.entries[qid].is_class}
    scored: list[tuple[int, float, str]] = []
    candidates: set[str] = set()
    for tok in query_tokens:
        candidates.update(index._token_map.get(tok, ()))
    for qid in candidates:
        entry = index.entries[qid]
        if not entry.is_class:
            continue
        if qid in exact:
            scored.append((0, 1.0, qid))
        else:
            overlap = len(query_tokens & index._entry_tokens[qid]) / len(query_tokens)
            if overlap > 0:
                scored.append((1, overlap, qid))
    scored.sort(key=lambda row: (row[0], -row[1], row[2]))
    return [(index.entries[qid], score) for _, score, qid in scored[:limit]]


def rerank(
    label_text: str,
    candidates: Sequence[tuple[KBEntry, float]],
    provider: EmbeddingProvider,
) -> list[LinkCandidate]:
    """Order candidates by similarity of the label to each description."""
    if not candidates:
        raise InvalidRequest("no candidates to rerank")
    texts = [label_text] + [entry.description for entry, _ in candidates]
    vectors = provider.embed(texts)
    query, rest = vectors[0], vectors[1:]
    scored = sorted(
        (
            (-cosine(query, vec), entry.qid, entry, retrieval_score)
            for (entry, retrieval_score), vec in zip(candidates, rest)
        ),
    )
    return [
        LinkCandidate(entry=entry, retrieval_score=retrieval, rerank_score=-neg, rank=i + 1)
        for i, (neg, _qid, entry, retrieval) in enumerate(scored)
    ]


@dataclass(frozen=True)
class CandidateSet:
    """A published, versioned batch of link candidates for one variable."""

    variable_id: str
    label: str
    version: int
    candidates: tuple[LinkCandidate, ...]

    def qids(self) -> tuple[str, ...]:
        return tuple(c.entry.qid for c in self.candidates)


@dataclass(frozen=True)
class LinkDecision:
    variable_id: str
    label: str
    qid: str | None  # None == curator declined every candidate
    set_version: int

    def to_dict(self) -> dict:
        return {
            "variable": self.variable_id,
            "label": self.label,
            "qid": self.qid,
            "set_version": self.set_version,
        }


def decide_link(
    current_set: CandidateSet,
    presented_version: int,
    qid: str | None,
) -> LinkDecision:
    """Validate a curator decision against the live candidate set.

    The decision must reference the candidate set the curator was shown;
    if candidates were regenerated since, the decision is stale.
    """
    if presented_version != current_set.version:
        raise StaleCandidate(
            f"candidate set for {current_set.variable_id!r} is version "
            f"{current_set.version}, decision referenced {presented_version}"
        )
    if qid is not None and qid not in current_set.qids():
        raise InvalidRequest(f"{qid!r} is not among the presented candidates")
    return LinkDecision(
        variable_id=current_set.variable_id,
        label=current_set.label,
        qid=qid,
        set_version=current_set.version,
    )
