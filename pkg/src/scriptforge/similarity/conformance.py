"""Provider contract checks, shared by the stub tests and any live sidecar.

Each check raises AssertionError with a readable message on violation, so
the suite can run under pytest or as a standalone probe.
"""

from __future__ import annotations

import math
from typing import Sequence

from scriptforge.similarity.providers import EmbeddingProvider, GenerationProvider

DEFAULT_TEXTS = (
    "go to a car dealership",
    "take a test drive",
    "negotiate the price",
    "a",
)


def check_embedding_provider(provider: EmbeddingProvider, texts: Sequence[str] = DEFAULT_TEXTS) -> None:
    batch = list(texts)
    first = provider.embed(batch)
    assert len(first) == len(batch), f"expected {len(batch)} vectors, got {len(first)}"
    dims = {v.dim for v in first}
    assert len(dims) == 1, f"inconsistent dims in one batch: {sorted(dims)}"
    for v in first:
        assert all(math.isfinite(x) for x in v.values), "non-finite embedding value"
        assert abs(v.norm() - 1.0) < 1e-5, f"vector norm {v.norm()} not unit"
    second = provider.embed(batch)
    assert [v.values for v in first] == [v.values for v in second], "embedding not deterministic in-session"
    pair = provider.embed([batch[0], batch[0]])
    assert pair[0].values == pair[1].values, "identical texts produced different vectors"


def check_generation_provider(
    provider: GenerationProvider,
    prompt: str,
    samples: int = 3,
    max_length: int = 64,
    deterministic: bool = True,
) -> None:
    assert provider.generate(prompt, 0, max_length) == [], "samples=0 must yield no texts"
    texts = provider.generate(prompt, samples, max_length)
    assert len(texts) <= samples, f"got {len(texts)} texts for {samples} samples"
    assert all(isinstance(t, str) for t in texts), "non-string generation output"
    if deterministic:
        again = provider.generate(prompt, samples, max_length)
        assert texts == again, "generation not deterministic for identical request"
