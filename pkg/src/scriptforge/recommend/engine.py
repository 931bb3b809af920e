"""Recommendation pipelines: overlooked events after curation, and option
sets for the next step in mixed-initiative authoring."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Iterable

from scriptforge.errors import InvalidRequest
from scriptforge.model import Script
from scriptforge.recommend.filters import MAX_SUGGESTIONS, FilterReport, filter_candidates
from scriptforge.recommend.prompts import build_prompt, parse_generation
from scriptforge.similarity import GenerationProvider

DEFAULT_POST_CURATION_SAMPLES = 15
DEFAULT_MIXED_OPTIONS = 5
DEFAULT_MIXED_SAMPLES = 5
DEFAULT_MAX_LENGTH = 120


class SuggestionSource(str, Enum):
    POST_CURATION = "post_curation"
    MIXED_INITIATIVE = "mixed_initiative"


class SuggestionDecision(str, Enum):
    PENDING = "pending"
    ACCEPTED = "accepted"
    EDITED = "edited"
    REJECTED = "rejected"


@dataclass
class EventSuggestion:
    """A machine-proposed step awaiting a curator decision."""

    id: str
    text: str
    source: SuggestionSource
    decision: SuggestionDecision = SuggestionDecision.PENDING
    edited_text: str | None = None

    def decide(self, decision: SuggestionDecision, edited_text: str | None = None) -> None:
        if decision is SuggestionDecision.EDITED:
            if not edited_text or edited_text.strip() == self.text:
                raise InvalidRequest("an edited suggestion needs text different from the original")
            self.edited_text = edited_text.strip()
        self.decision = decision

    @property
    def final_text(self) -> str:
        return self.edited_text if self.edited_text is not None else self.text

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "text": self.text,
            "source": self.source.value,
            "decision": self.decision.value,
            "edited_text": self.edited_text,
        }


def _generate_candidates(
    script: Script,
    provider: GenerationProvider,
    samples: int,
    max_length: int,
    first_step_only: bool,
) -> tuple[list[str], int]:
    prompt = build_prompt(script)
    raws = provider.generate(prompt.rendered, samples, max_length)
    candidates: list[str] = []
    loss = 0
    for raw in raws:
        parsed = parse_generation(raw, prompt.next_number)
        if first_step_only:
            if parsed.steps:
                candidates.append(parsed.steps[0])
        else:
            candidates.extend(parsed.steps)
        loss += int(parsed.truncated)
    return candidates, loss


def recommend_missing(
    script: Script,
    provider: GenerationProvider,
    samples: int = DEFAULT_POST_CURATION_SAMPLES,
    max_length: int = DEFAULT_MAX_LENGTH,
    prior_suggestions: Iterable[str] = (),
    threshold: float = 0.8,
    cap: int = MAX_SUGGESTIONS,
) -> tuple[list[EventSuggestion], FilterReport]:
    """Suggest events the curator may have overlooked in a finished script."""
    candidates, loss = _generate_candidates(script, provider, samples, max_length, first_step_only=False)
    kept, report = filter_candidates(
        candidates,
        script_events=[ev.text for ev in script.events],
        prior_suggestions=prior_suggestions,
        threshold=threshold,
        cap=cap,
        parse_loss=loss,
    )
    suggestions = [
        EventSuggestion(id=f"g{i + 1}", text=text, source=SuggestionSource.POST_CURATION)
        for i, text in enumerate(kept)
    ]
    return suggestions, report


def mixed_initiative_next(
    script: Script,
    provider: GenerationProvider,
    options_per_set: int = DEFAULT_MIXED_OPTIONS,
    samples: int = DEFAULT_MIXED_SAMPLES,
    max_length: int = DEFAULT_MAX_LENGTH,
    prior_suggestions: Iterable[str] = (),
    threshold: float = 0.8,
) -> tuple[list[EventSuggestion], FilterReport]:
    """Options for the single next step; each generation contributes only
    its first parsed step."""
    if not script.events:
        raise InvalidRequest("mixed-initiative mode needs at least one step entered first")
    candidates, loss = _generate_candidates(script, provider, samples, max_length, first_step_only=True)
    kept, report = filter_candidates(
        candidates,
        script_events=[ev.text for ev in script.events],
        prior_suggestions=prior_suggestions,
        threshold=threshold,
        cap=min(options_per_set, MAX_SUGGESTIONS),
        parse_loss=loss,
    )
    options = [
        EventSuggestion(id=f"o{i + 1}", text=text, source=SuggestionSource.MIXED_INITIATIVE)
        for i, text in enumerate(kept)
    ]
    return options, report
