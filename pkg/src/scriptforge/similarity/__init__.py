"""String similarity, embedding vectors, and provider contracts."""

from scriptforge.similarity.gestalt import gestalt_ratio, kernel_backend, match_total, normalize
from scriptforge.similarity.providers import (
    EmbeddingProvider,
    GenerationProvider,
    RemoteEmbeddingProvider,
    RemoteGenerationProvider,
    ScriptedGenerator,
    TranscriptEntry,
    TrigramEmbedder,
)
from scriptforge.similarity.vectors import EmbeddingVector, cosine

__all__ = [
    "EmbeddingProvider",
    "EmbeddingVector",
    "GenerationProvider",
    "RemoteEmbeddingProvider",
    "RemoteGenerationProvider",
    "ScriptedGenerator",
    "TranscriptEntry",
    "TrigramEmbedder",
    "cosine",
    "gestalt_ratio",
    "kernel_backend",
    "match_total",
    "normalize",
]
