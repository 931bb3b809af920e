from __future__ import annotations

import pytest
import torch


def _build_tokenizer(path) -> None:
    from tokenizers import Tokenizer
    from tokenizers.models import WordLevel
    from tokenizers.pre_tokenizers import Whitespace
    from transformers import PreTrainedTokenizerFast

    words = (
        "identify your needs decide on budget car models you can afford "
        "describe steps of buying a the test drive go to dealership "
        "negotiate price sign contract 1 2 3 4 5 6 ."
    ).split()
    vocab = {"[PAD]": 0, "[UNK]": 1, "[EOS]": 2}
    for w in words:
        vocab.setdefault(w, len(vocab))
    core = Tokenizer(WordLevel(vocab, unk_token="[UNK]"))
    core.pre_tokenizer = Whitespace()
    fast = PreTrainedTokenizerFast(
        tokenizer_object=core, unk_token="[UNK]", pad_token="[PAD]", eos_token="[EOS]"
    )
    fast.save_pretrained(path)
    return len(vocab)


@pytest.fixture(scope="session")
def tiny_model_dirs(tmp_path_factory):
    """Small randomly initialized models saved locally: the provider
    contract (shapes, norms, determinism) does not depend on pretrained
    weights, and the sandbox has no model-hub access."""
    from transformers import BertConfig, BertModel, GPT2Config, GPT2LMHeadModel

    root = tmp_path_factory.mktemp("models")
    embed_dir, generate_dir = root / "embed", root / "generate"

    vocab_size = _build_tokenizer(embed_dir)
    torch.manual_seed(1)
    bert = BertModel(BertConfig(
        vocab_size=vocab_size, hidden_size=32, num_hidden_layers=2,
        num_attention_heads=2, intermediate_size=64,
        max_position_embeddings=128, pad_token_id=0,
    ))
    bert.save_pretrained(embed_dir)

    _build_tokenizer(generate_dir)
    torch.manual_seed(2)
    gpt = GPT2LMHeadModel(GPT2Config(
        vocab_size=vocab_size, n_embd=32, n_layer=2, n_head=2,
        n_positions=256, bos_token_id=2, eos_token_id=2,
    ))
    gpt.save_pretrained(generate_dir)
    return str(embed_dir), str(generate_dir)


@pytest.fixture(scope="session")
def sidecar_app(tiny_model_dirs):
    from scriptforge_sidecar.app import SidecarConfig, create_app

    embed_dir, generate_dir = tiny_model_dirs
    config = SidecarConfig(
        embed_model=embed_dir, generate_model=generate_dir, max_batch=8,
    )
    return create_app(config)


@pytest.fixture(scope="session")
def client(sidecar_app):
    from fastapi.testclient import TestClient

    with TestClient(sidecar_app) as c:
        yield c
