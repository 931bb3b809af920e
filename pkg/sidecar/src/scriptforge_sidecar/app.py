"""Live provider service: pretrained models behind the shared wire protocol.

Serves ``/embed`` (mean-pooled, unit-normed sentence vectors), ``/generate``
(sampled continuations, optionally seeded for reproducible demos), and
``/handshake`` (declared limits). Model identifiers and decoding defaults
are configuration; see README.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass, field
from typing import Any

import torch
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

DEFAULT_EMBED_MODEL = "sentence-transformers/all-distilroberta-v1"
DEFAULT_GENERATE_MODEL = "gpt2"


@dataclass
class SidecarConfig:
    embed_model: str = DEFAULT_EMBED_MODEL
    generate_model: str = DEFAULT_GENERATE_MODEL
    max_batch: int = 64
    max_concurrency: int = 2
    temperature: float = 0.9
    top_k: int = 50
    device: str = "cpu"

    @classmethod
    def from_env(cls) -> "SidecarConfig":
        env = os.environ
        return cls(
            embed_model=env.get("SIDECAR_EMBED_MODEL", DEFAULT_EMBED_MODEL),
            generate_model=env.get("SIDECAR_GENERATE_MODEL", DEFAULT_GENERATE_MODEL),
            max_batch=int(env.get("SIDECAR_MAX_BATCH", "64")),
            max_concurrency=int(env.get("SIDECAR_MAX_CONCURRENCY", "2")),
            temperature=float(env.get("SIDECAR_TEMPERATURE", "0.9")),
            top_k=int(env.get("SIDECAR_TOP_K", "50")),
            device=env.get("SIDECAR_DEVICE", "cpu"),
        )


class ServiceUnavailable(Exception):
    pass


class BatchTooLarge(Exception):
    pass


@dataclass
class ModelHost:
    """Owns the two models and serializes inference up to max_concurrency."""

    config: SidecarConfig
    embed_tokenizer: Any = None
    embed_model: Any = None
    generate_tokenizer: Any = None
    generate_model: Any = None
    _gate: threading.Semaphore = field(init=False)
    _seed_lock: threading.Lock = field(default_factory=threading.Lock)

    def __post_init__(self) -> None:
        self._gate = threading.Semaphore(self.config.max_concurrency)

    def load(self) -> None:
        from transformers import AutoModel, AutoModelForCausalLM, AutoTokenizer

        self.embed_tokenizer = AutoTokenizer.from_pretrained(self.config.embed_model)
        self.embed_model = AutoModel.from_pretrained(self.config.embed_model)
        self.embed_model.to(self.config.device).eval()
        self.generate_tokenizer = AutoTokenizer.from_pretrained(self.config.generate_model)
        self.generate_model = AutoModelForCausalLM.from_pretrained(self.config.generate_model)
        self.generate_model.to(self.config.device).eval()

    @property
    def loaded(self) -> bool:
        return self.embed_model is not None and self.generate_model is not None

    def dim(self) -> int:
        return int(self.embed_model.config.hidden_size)

    def embed(self, texts: list[str]) -> list[list[float]]:
        if not self.loaded:
            raise ServiceUnavailable("models not loaded")
        if len(texts) > self.config.max_batch:
            raise BatchTooLarge(f"batch {len(texts)} exceeds max {self.config.max_batch}")
        if not texts:
            return []
        with self._gate, torch.no_grad():
            enc = self.embed_tokenizer(
                texts, padding=True, truncation=True, max_length=256, return_tensors="pt"
            ).to(self.config.device)
            out = self.embed_model(
                input_ids=enc["input_ids"], attention_mask=enc["attention_mask"]
            )
            mask = enc["attention_mask"].unsqueeze(-1).to(out.last_hidden_state.dtype)
            summed = (out.last_hidden_state * mask).sum(dim=1)
            counts = mask.sum(dim=1).clamp(min=1e-9)
            pooled = summed / counts
            normed = torch.nn.functional.normalize(pooled, p=2, dim=1)
        return normed.cpu().tolist()

    def generate(self, prompt: str, samples: int, max_length: int, seed: int | None) -> list[str]:
        if not self.loaded:
            raise ServiceUnavailable("models not loaded")
        if samples <= 0:
            return []
        tok = self.generate_tokenizer
        pad_id = tok.pad_token_id if tok.pad_token_id is not None else tok.eos_token_id
        with self._gate, self._seed_lock, torch.no_grad():
            if seed is not None:
                torch.manual_seed(seed)
            enc = tok(prompt, return_tensors="pt", truncation=True, max_length=512)
            enc = {k: v.to(self.config.device) for k, v in enc.items()}
            out = self.generate_model.generate(
                **enc,
                do_sample=True,
                num_return_sequences=samples,
                max_new_tokens=max(1, max_length),
                temperature=self.config.temperature,
                top_k=self.config.top_k,
                pad_token_id=pad_id,
            )
        prompt_len = enc["input_ids"].shape[1]
        return [
            tok.decode(seq[prompt_len:], skip_special_tokens=True).strip()
            for seq in out
        ]


class EmbedIn(BaseModel):
    texts: list[str]


class GenerateIn(BaseModel):
    prompt: str
    samples: int
    max_length: int = 120
    seed: int | None = None


def create_app(config: SidecarConfig | None = None, preload: bool = True) -> FastAPI:
    config = config or SidecarConfig.from_env()
    host = ModelHost(config)
    app = FastAPI(title="scriptforge-sidecar", version="0.1.0")
    app.state.host = host

    if preload:
        host.load()

    @app.exception_handler(ServiceUnavailable)
    async def _unavailable(_req: Request, exc: ServiceUnavailable) -> JSONResponse:
        return JSONResponse(status_code=503, content={"error": str(exc)})

    @app.exception_handler(BatchTooLarge)
    async def _too_large(_req: Request, exc: BatchTooLarge) -> JSONResponse:
        return JSONResponse(status_code=413, content={"error": str(exc)})

    @app.get("/handshake")
    def handshake() -> dict:
        if not host.loaded:
            raise ServiceUnavailable("models not loaded")
        return {
            "embed_model": config.embed_model,
            "generate_model": config.generate_model,
            "dim": host.dim(),
            "max_batch": config.max_batch,
            "max_concurrency": config.max_concurrency,
        }

    @app.post("/embed")
    def embed(body: EmbedIn) -> dict:
        vectors = host.embed(body.texts)
        return {"vectors": vectors, "dim": host.dim()}

    @app.post("/generate")
    def generate(body: GenerateIn) -> dict:
        if not body.prompt:
            return JSONResponse(status_code=422, content={"error": "prompt is empty"})
        texts = host.generate(body.prompt, body.samples, body.max_length, body.seed)
        return {"texts": texts}

    return app


def main() -> None:
    import argparse

    import uvicorn

    parser = argparse.ArgumentParser(description="scriptforge provider sidecar")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8500)
    parser.add_argument("--embed-model", default=None)
    parser.add_argument("--generate-model", default=None)
    args = parser.parse_args()

    config = SidecarConfig.from_env()
    if args.embed_model:
        config.embed_model = args.embed_model
    if args.generate_model:
        config.generate_model = args.generate_model
    uvicorn.run(create_app(config), host=args.host, port=args.port)


if __name__ == "__main__":
    main()
