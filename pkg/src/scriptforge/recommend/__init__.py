"""Machine-suggested events: prompting, parsing, filtering, and the
post-curation / mixed-initiative pipelines."""

from scriptforge.recommend.engine import (
    DEFAULT_MAX_LENGTH,
    DEFAULT_MIXED_OPTIONS,
    DEFAULT_MIXED_SAMPLES,
    DEFAULT_POST_CURATION_SAMPLES,
    EventSuggestion,
    SuggestionDecision,
    SuggestionSource,
    mixed_initiative_next,
    recommend_missing,
)
from scriptforge.recommend.filters import (
    MAX_SUGGESTIONS,
    Disposition,
    DropReason,
    FilterReport,
    filter_candidates,
)
from scriptforge.recommend.prompts import ParsedGeneration, Prompt, build_prompt, parse_generation

__all__ = [
    "DEFAULT_MAX_LENGTH",
    "DEFAULT_MIXED_OPTIONS",
    "DEFAULT_MIXED_SAMPLES",
    "DEFAULT_POST_CURATION_SAMPLES",
    "Disposition",
    "DropReason",
    "EventSuggestion",
    "FilterReport",
    "MAX_SUGGESTIONS",
    "ParsedGeneration",
    "Prompt",
    "SuggestionDecision",
    "SuggestionSource",
    "build_prompt",
    "filter_candidates",
    "mixed_initiative_next",
    "parse_generation",
    "recommend_missing",
]
