"""Benchmark the string-match kernel: compiled extension vs pure Python.

The match kernel dominates the suggestion filter chain (every generated
candidate is compared against every script event, prior suggestion, and
already-kept candidate), so this is the one hot loop worth compiling.

    python benchmarks/bench_gestalt.py [pairs]
"""

from __future__ import annotations

import difflib
import random
import sys
import time

from scriptforge.similarity import _gestalt_py

try:
    from scriptforge import _speedups
except ImportError:
    _speedups = None

WORDS = (
    "go to the car dealership take a test drive negotiate price sign contract "
    "check vehicle history report arrange financing with your bank drive home"
).split()


def make_pairs(n: int, words_per_text: int, seed: int) -> list[tuple[str, str]]:
    rng = random.Random(seed)
    def text() -> str:
        return " ".join(rng.choice(WORDS) for _ in range(words_per_text))
    return [(text(), text()) for _ in range(n)]


def bench(name: str, fn, pairs) -> float:
    start = time.perf_counter()
    total = 0
    for a, b in pairs:
        total += fn(a, b)
    elapsed = time.perf_counter() - start
    rate = len(pairs) / elapsed
    print(f"  {name:<22} {elapsed * 1e3:8.1f} ms   {rate:10.0f} pairs/s   (checksum {total})")
    return elapsed


def difflib_total(a: str, b: str) -> int:
    sm = difflib.SequenceMatcher(None, a, b, autojunk=False)
    return sum(bl.size for bl in sm.get_matching_blocks())


def main() -> None:
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 5000
    for words_per_text in (4, 8, 16):
        pairs = make_pairs(n, words_per_text, seed=1)
        avg_len = sum(len(a) for a, _ in pairs) / n
        print(f"{n} pairs, ~{avg_len:.0f} chars per text:")
        py = bench("pure python", _gestalt_py.match_total, pairs)
        bench("stdlib difflib", difflib_total, pairs)
        if _speedups is not None:
            c = bench("compiled extension", _speedups.match_total, pairs)
            print(f"  speedup over pure python: {py / c:.1f}x")
        else:
            print("  compiled extension not built (pip install -e . rebuilds it)")
        print()


if __name__ == "__main__":
    main()
