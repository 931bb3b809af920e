"""Informational latency probe: one mixed-initiative option set.

Times a single next-step round (default 5 sampled continuations) against
whatever models the sidecar is configured for, and reports it next to the
3-second interactive budget the workflow targets on a desktop GPU. Not a
CI gate; numbers depend entirely on local hardware and model choice.

    SIDECAR_EMBED_MODEL=... SIDECAR_GENERATE_MODEL=... python bench_latency.py
"""

from __future__ import annotations

import statistics
import time

from scriptforge_sidecar.app import ModelHost, SidecarConfig

BUDGET_SECONDS = 3.0
PROMPT = (
    "buying a car\n"
    "Buying a car takes research, budgeting, and paperwork.\n"
    "Describe steps of buying a car.\n"
    "1. Identify your needs 2."
)


def main(rounds: int = 5, samples: int = 5, max_length: int = 40) -> None:
    config = SidecarConfig.from_env()
    print(f"generate model: {config.generate_model}  device: {config.device}")
    host = ModelHost(config)
    started = time.perf_counter()
    host.load()
    print(f"load time: {time.perf_counter() - started:.1f}s")

    host.generate(PROMPT, samples=1, max_length=8, seed=0)  # warm up
    timings = []
    for i in range(rounds):
        t0 = time.perf_counter()
        texts = host.generate(PROMPT, samples=samples, max_length=max_length, seed=i)
        timings.append(time.perf_counter() - t0)
        print(f"  round {i + 1}: {timings[-1]:.2f}s  ({len(texts)} options)")

    worst = max(timings)
    print(f"median {statistics.median(timings):.2f}s  worst {worst:.2f}s  "
          f"budget {BUDGET_SECONDS:.1f}s  -> {'within' if worst < BUDGET_SECONDS else 'over'} budget")


if __name__ == "__main__":
    main()
