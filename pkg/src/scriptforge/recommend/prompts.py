"""Prompt construction and continuation parsing for event recommendation.

Prompts use a numbered-step formulation, which keeps generated
continuations parseable: the prompt ends with the next step number ("4.")
and structured output is recovered by splitting on incrementing "K."
boundaries.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from scriptforge.model import Script

# a step-number boundary: digits + '.', standing alone between whitespace
_BOUNDARY = re.compile(r"(?:(?<=\s)|^)(\d+)\.(?=\s|$)")


@dataclass(frozen=True)
class Prompt:
    script_name: str
    script_description: str
    request_sentence: str
    numbered_steps: tuple[str, ...]
    rendered: str
    next_number: int


def build_prompt(script: Script) -> Prompt:
    """Render name, description, request sentence, and numbered steps,
    ending with the number of the step the model should produce."""
    steps = tuple(ev.text for ev in script.events)
    next_number = len(steps) + 1
    numbered = " ".join(f"{i + 1}. {text}" for i, text in enumerate(steps))
    line = f"{numbered} {next_number}." if numbered else f"{next_number}."
    request = f"Describe steps of {script.name}."
    rendered = f"{script.name}\n{script.description}\n{request}\n{line}"
    return Prompt(
        script_name=script.name,
        script_description=script.description,
        request_sentence=request,
        numbered_steps=steps,
        rendered=rendered,
        next_number=next_number,
    )


@dataclass(frozen=True)
class ParsedGeneration:
    steps: tuple[str, ...]
    truncated: bool


def parse_generation(raw_text: str, expected_start_number: int) -> ParsedGeneration:
    """Split a raw continuation into step texts.

    The continuation is the body of step ``expected_start_number``; each
    subsequent boundary must be the next integer ("5.", "6.", ...). A step
    is emitted when terminated by a valid boundary (possibly empty: the
    model numbered an empty step) or, if non-empty, by end of input. At
    the first out-of-sequence boundary the in-progress step and the rest
    of the text are discarded and the loss is reported.
    """
    steps: list[str] = []
    expected = expected_start_number + 1
    pos = 0
    for match in _BOUNDARY.finditer(raw_text):
        if int(match.group(1)) != expected:
            return ParsedGeneration(steps=tuple(steps), truncated=True)
        steps.append(raw_text[pos : match.start()].strip())
        expected += 1
        pos = match.end()
    tail = raw_text[pos:].strip()
    if tail:
        steps.append(tail)
    return ParsedGeneration(steps=tuple(steps), truncated=False)
