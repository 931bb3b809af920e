"""Metric kernels over ranked-prediction records and suggestion logs.

All kernels are pure batch computations, invariant under record
permutation, and exact (no display rounding happens here).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence

from scriptforge.errors import EmptyLog, EmptyRecordSet, NoVariables
from scriptforge.model import Script


@dataclass(frozen=True)
class RankedRecord:
    """Gold label plus the ranked predictions it is scored against."""

    gold: str
    predictions: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.predictions)) != len(self.predictions):
            raise ValueError("predictions must be duplicate-free")

    def rank_of_gold(self) -> int | None:
        """1-based rank of the gold label, or None for a miss."""
        for i, p in enumerate(self.predictions):
            if p == self.gold:
                return i + 1
        return None

    @classmethod
    def from_dict(cls, raw: Mapping) -> "RankedRecord":
        return cls(gold=str(raw["gold"]), predictions=tuple(str(p) for p in raw["predictions"]))


def top_k_accuracy(records: Sequence[RankedRecord], k: int) -> float:
    """Fraction of records whose gold appears within the first k predictions."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if not records:
        raise EmptyRecordSet("no records to score")
    hits = sum(1 for r in records if r.gold in r.predictions[:k])
    return hits / len(records)


def mrr(records: Sequence[RankedRecord], cutoff: int) -> float:
    """Mean reciprocal rank of the gold label; misses beyond the cutoff
    (or absent entirely) contribute 0."""
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    if not records:
        raise EmptyRecordSet("no records to score")
    total = 0.0
    for r in records:
        rank = r.rank_of_gold()
        if rank is not None and rank <= cutoff:
            total += 1.0 / rank
    return total / len(records)


def link_coverage(script: Script) -> float:
    """Ratio of reference variables carrying a KB link to all variables."""
    if not script.variables:
        raise NoVariables(f"script {script.id!r} has no reference variables")
    linked = sum(1 for v in script.variables if v.kb_link)
    return linked / len(script.variables)


class SuggestionMode(str, Enum):
    POST_CURATION = "post_curation"
    MIXED_INITIATIVE = "mixed_initiative"


def acceptance_rate(entries: Sequence[Mapping], mode: SuggestionMode | str) -> float:
    """Post-curation: accepted suggestions / offered suggestions.

    Mixed-initiative: sets where an option was accepted or used as an edit
    starting point / total sets.
    """
    mode = SuggestionMode(mode)
    if not entries:
        raise EmptyLog(f"no {mode.value} entries")
    if mode is SuggestionMode.POST_CURATION:
        accepted = sum(1 for e in entries if e.get("decision") == "accepted")
        return accepted / len(entries)
    taken = sum(1 for e in entries if e.get("outcome") in ("accepted", "edited"))
    return taken / len(entries)


def edited_set_count(entries: Iterable[Mapping]) -> int:
    """Mixed-initiative sets resolved by editing a suggestion."""
    return sum(1 for e in entries if e.get("outcome") == "edited")
