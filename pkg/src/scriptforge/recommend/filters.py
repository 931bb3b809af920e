"""Filter chain for generated step candidates.

Applied per candidate, in a fixed cheap-first order:

1. empty or whitespace-only
2. fewer than two words
3. a run of three or more consecutive non-alphabetic, non-space characters
4. exact duplicate (case/whitespace-normalized) of a script event, a prior
   suggestion, or an earlier kept candidate
5. near duplicate of the same reference set (gestalt ratio >= threshold)
6. overflow beyond the per-script cap

Every candidate receives exactly one disposition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, Sequence

from scriptforge.similarity import gestalt_ratio, normalize

MAX_SUGGESTIONS = 12


class DropReason(str, Enum):
    EMPTY = "empty"
    TOO_SHORT = "too_short"
    NONALPHA_RUN = "nonalpha_run"
    EXACT_DUPLICATE = "exact_duplicate"
    NEAR_DUPLICATE = "near_duplicate"
    OVERFLOW = "overflow"


@dataclass(frozen=True)
class Disposition:
    text: str
    kept: bool
    reason: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {"text": self.text, "kept": self.kept, "reason": self.reason}


@dataclass
class FilterReport:
    dispositions: list[Disposition] = field(default_factory=list)
    parse_loss: int = 0

    @property
    def kept(self) -> list[str]:
        return [d.text for d in self.dispositions if d.kept]

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for d in self.dispositions:
            key = "kept" if d.kept else (d.reason or "dropped")
            out[key] = out.get(key, 0) + 1
        return out

    def to_dict(self) -> dict[str, Any]:
        return {
            "dispositions": [d.to_dict() for d in self.dispositions],
            "parse_loss": self.parse_loss,
            "counts": self.counts(),
        }


def _has_nonalpha_run(text: str, run_length: int = 3) -> bool:
    run = 0
    for ch in text:
        if ch.isalpha() or ch.isspace():
            run = 0
        else:
            run += 1
            if run >= run_length:
                return True
    return False


def filter_candidates(
    candidates: Sequence[str],
    script_events: Iterable[str],
    prior_suggestions: Iterable[str] = (),
    threshold: float = 0.8,
    cap: int = MAX_SUGGESTIONS,
    parse_loss: int = 0,
) -> tuple[list[str], FilterReport]:
    """Return (kept candidates in arrival order, full report)."""
    if not 0.0 < threshold <= 1.0:
        raise ValueError(f"threshold must be in (0, 1], got {threshold}")
    references = [normalize(t) for t in script_events]
    references += [normalize(t) for t in prior_suggestions]
    reference_set = set(references)

    report = FilterReport(parse_loss=parse_loss)
    kept: list[str] = []

    def drop(text: str, reason: DropReason) -> None:
        report.dispositions.append(Disposition(text=text, kept=False, reason=reason.value))

    for raw in candidates:
        text = raw.strip()
        norm = normalize(text)
        if not norm:
            drop(raw, DropReason.EMPTY)
        elif len(norm.split()) < 2:
            drop(text, DropReason.TOO_SHORT)
        elif _has_nonalpha_run(text):
            drop(text, DropReason.NONALPHA_RUN)
        elif norm in reference_set:
            drop(text, DropReason.EXACT_DUPLICATE)
        elif any(gestalt_ratio(norm, ref) >= threshold for ref in references):
            drop(text, DropReason.NEAR_DUPLICATE)
        elif len(kept) >= cap:
            drop(text, DropReason.OVERFLOW)
        else:
            kept.append(text)
            references.append(norm)
            reference_set.add(norm)
            report.dispositions.append(Disposition(text=text, kept=True))

    return kept, report
