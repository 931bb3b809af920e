"""Embedding and generation provider contracts, deterministic stubs, and
HTTP clients for the provider wire protocol.

Wire protocol (shared with any live sidecar):

* ``POST {base}/embed``    body ``{"texts": [str, ...]}`` returns
  ``{"vectors": [[float, ...], ...], "dim": int}``
* ``POST {base}/generate`` body ``{"prompt": str, "samples": int,
  "max_length": int, "seed": int | null}`` returns ``{"texts": [str, ...]}``

The stub embedder hashes character trigrams so tests and offline runs are
fully reproducible; the scheme is documented in ``docs/providers.md`` and
must not change without regenerating committed golden traces.
"""

from __future__ import annotations

import json
import zlib
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol, Sequence, runtime_checkable

import httpx

from scriptforge.errors import ProviderUnavailable, TranscriptMiss
from scriptforge.similarity.gestalt import normalize
from scriptforge.similarity.vectors import EmbeddingVector


@runtime_checkable
class EmbeddingProvider(Protocol):
    """Maps batches of texts to equal-dimension vectors, deterministically
    within one provider session."""

    identity: str

    def embed(self, texts: Sequence[str]) -> list[EmbeddingVector]: ...


@runtime_checkable
class GenerationProvider(Protocol):
    """Returns up to ``samples`` raw continuations for a prompt. Transport
    failures must propagate; a provider never fabricates output."""

    identity: str

    def generate(self, prompt: str, samples: int, max_length: int) -> list[str]: ...


class TrigramEmbedder:
    """Deterministic test embedder: hashed bag of character trigrams.

    The normalized text (lowercased, whitespace collapsed) is padded with
    one space on each side; every 3-char window is hashed with CRC-32 into
    one of ``dim`` buckets; the count vector is L2-normalized. Text that
    normalizes to empty maps to the first basis vector.
    """

    def __init__(self, dim: int = 256) -> None:
        if dim < 1:
            raise ValueError("dim must be positive")
        self.dim = dim
        self.identity = f"stub-trigram-{dim}"

    def embed_one(self, text: str) -> EmbeddingVector:
        padded = f" {normalize(text)} "
        counts = [0.0] * self.dim
        for i in range(len(padded) - 2):
            bucket = zlib.crc32(padded[i : i + 3].encode("utf-8")) % self.dim
            counts[bucket] += 1.0
        norm = sum(c * c for c in counts) ** 0.5
        if norm == 0.0:
            counts[0] = 1.0
            return EmbeddingVector(tuple(counts))
        return EmbeddingVector(tuple(c / norm for c in counts))

    def embed(self, texts: Sequence[str]) -> list[EmbeddingVector]:
        return [self.embed_one(t) for t in texts]


_MATCH_KINDS = ("equals", "endswith", "contains", "any")


@dataclass(frozen=True)
class TranscriptEntry:
    kind: str
    value: str
    continuations: tuple[str, ...]

    def matches(self, prompt: str) -> bool:
        if self.kind == "equals":
            return prompt == self.value
        if self.kind == "endswith":
            return prompt.endswith(self.value)
        if self.kind == "contains":
            return self.value in prompt
        return True  # any


class ScriptedGenerator:
    """Deterministic generation stub driven by a committed transcript.

    A transcript is an ordered list of (prompt matcher, canned
    continuations); ``generate`` replays the first matching entry. A prompt
    no entry matches is a test-setup bug and raises loudly.
    """

    def __init__(self, entries: Sequence[TranscriptEntry], identity: str = "stub-scripted") -> None:
        self.entries = list(entries)
        self.identity = identity

    @classmethod
    def from_file(cls, path: str | Path) -> "ScriptedGenerator":
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        entries = []
        for i, raw in enumerate(doc["entries"]):
            match = raw["match"]
            if match["kind"] not in _MATCH_KINDS:
                raise ValueError(f"entries[{i}]: unknown matcher kind {match['kind']!r}")
            entries.append(
                TranscriptEntry(
                    kind=match["kind"],
                    value=match.get("value", ""),
                    continuations=tuple(raw["continuations"]),
                )
            )
        return cls(entries, identity=f"stub-scripted:{Path(path).name}")

    def generate(self, prompt: str, samples: int, max_length: int) -> list[str]:
        if samples < 0:
            raise ValueError("samples must be >= 0")
        if samples == 0:
            return []
        for entry in self.entries:
            if entry.matches(prompt):
                return list(entry.continuations[:samples])
        raise TranscriptMiss(f"no transcript entry matches prompt ending {prompt[-40:]!r}")


class RemoteEmbeddingProvider:
    """Client for the ``/embed`` endpoint of a provider service."""

    def __init__(self, base_url: str, client: httpx.Client | None = None, timeout: float = 30.0) -> None:
        self.base_url = base_url.rstrip("/")
        self.identity = f"remote-embed:{self.base_url}"
        self._client = client or httpx.Client(timeout=timeout)

    def embed(self, texts: Sequence[str]) -> list[EmbeddingVector]:
        payload = {"texts": list(texts)}
        body = _post_json(self._client, f"{self.base_url}/embed", payload)
        dim = body.get("dim")
        vectors = [EmbeddingVector(tuple(float(x) for x in row)) for row in body["vectors"]]
        if any(v.dim != dim for v in vectors):
            raise ProviderUnavailable(f"provider returned vectors not matching declared dim {dim}")
        return vectors


class RemoteGenerationProvider:
    """Client for the ``/generate`` endpoint of a provider service."""

    def __init__(
        self,
        base_url: str,
        client: httpx.Client | None = None,
        timeout: float = 120.0,
        seed: int | None = None,
    ) -> None:
        self.base_url = base_url.rstrip("/")
        self.identity = f"remote-generate:{self.base_url}"
        self.seed = seed
        self._client = client or httpx.Client(timeout=timeout)

    def generate(self, prompt: str, samples: int, max_length: int) -> list[str]:
        if samples == 0:
            return []
        payload = {"prompt": prompt, "samples": samples, "max_length": max_length, "seed": self.seed}
        body = _post_json(self._client, f"{self.base_url}/generate", payload)
        texts = [str(t) for t in body["texts"]]
        if len(texts) > samples:
            raise ProviderUnavailable(f"provider returned {len(texts)} texts for {samples} samples")
        return texts


def _post_json(client: httpx.Client, url: str, payload: dict) -> dict:
    try:
        response = client.post(url, json=payload)
    except httpx.HTTPError as exc:
        raise ProviderUnavailable(f"provider request failed: {exc}") from exc
    if response.status_code != 200:
        raise ProviderUnavailable(f"provider returned HTTP {response.status_code}: {response.text[:200]}")
    try:
        return response.json()
    except json.JSONDecodeError as exc:
        raise ProviderUnavailable("provider returned malformed JSON") from exc
