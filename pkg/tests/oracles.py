"""Independent reference implementations used as test oracles.

Deliberately written with different algorithms/code paths than the
production modules: naive quadratic block search for the match kernel,
Floyd-Warshall closure, iterative edge-removal reduction, and one-pass
recounts for the metrics. Slow is fine; independent is the point.
"""

from __future__ import annotations

import re
import zlib


# --- gestalt ratio ------------------------------------------------------------

def _ref_longest_block(a: str, b: str) -> tuple[int, int, int]:
    # max size, then leftmost in a, then leftmost in b (first found wins
    # under ascending i, ascending j scan)
    best_k, best_i, best_j = 0, 0, 0
    for i in range(len(a)):
        for j in range(len(b)):
            if a[i] == b[j]:
                k = 0
                while i + k < len(a) and j + k < len(b) and a[i + k] == b[j + k]:
                    k += 1
                if k > best_k:
                    best_k, best_i, best_j = k, i, j
    return best_k, best_i, best_j


def ref_match_total(a: str, b: str) -> int:
    k, i, j = _ref_longest_block(a, b)
    if k == 0:
        return 0
    return k + ref_match_total(a[:i], b[:j]) + ref_match_total(a[i + k :], b[j + k :])


def ref_gestalt_ratio(a: str, b: str) -> float:
    na = re.sub(r"\s+", " ", a.strip()).lower()
    nb = re.sub(r"\s+", " ", b.strip()).lower()
    total = len(na) + len(nb)
    if total == 0:
        return 1.0
    return 2.0 * ref_match_total(na, nb) / total


# --- trigram stub embedding (reimplemented from docs/providers.md) ---------------

def ref_trigram_embed(text: str, dim: int = 256) -> list[float]:
    normalized = re.sub(r"\s+", " ", text.strip()).lower()
    padded = " " + normalized + " "
    counts = [0.0] * dim
    for start in range(len(padded) - 2):
        window = padded[start : start + 3]
        counts[zlib.crc32(window.encode("utf-8")) % dim] += 1.0
    norm = sum(x * x for x in counts) ** 0.5
    if norm == 0.0:
        counts[0] = 1.0
        return counts
    return [x / norm for x in counts]


def ref_cosine(u: list[float], v: list[float]) -> float:
    dot = sum(x * y for x, y in zip(u, v))
    nu = sum(x * x for x in u) ** 0.5
    nv = sum(y * y for y in v) ** 0.5
    return dot / (nu * nv)


# --- order graphs ----------------------------------------------------------------

def fw_closure(nodes: list[str], edges: list[tuple[str, str]]) -> set[tuple[str, str]]:
    index = {n: i for i, n in enumerate(nodes)}
    n = len(nodes)
    reach = [[False] * n for _ in range(n)]
    for u, v in edges:
        reach[index[u]][index[v]] = True
    for k in range(n):
        for i in range(n):
            if reach[i][k]:
                row_i, row_k = reach[i], reach[k]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    return {(nodes[i], nodes[j]) for i in range(n) for j in range(n) if reach[i][j]}


def _reachable_without(edges: set[tuple[str, str]], drop: tuple[str, str], src: str, dst: str) -> bool:
    stack = [src]
    seen = set()
    while stack:
        u = stack.pop()
        if u == dst:
            return True
        if u in seen:
            continue
        seen.add(u)
        stack.extend(v for (x, v) in edges if x == u and (x, v) != drop)
    return False


def brute_reduction(edges: list[tuple[str, str]]) -> set[tuple[str, str]]:
    """Remove each edge in turn; keep it only if its endpoints become
    unreachable without it (unique result on DAGs)."""
    working = set(edges)
    for edge in sorted(set(edges)):
        if _reachable_without(working - {edge}, edge, edge[0], edge[1]):
            working.discard(edge)
    return working


# --- metric recounts ---------------------------------------------------------------

def recount_top_k(rows: list[dict], k: int) -> float:
    return sum(1 for r in rows if r["gold"] in list(r["predictions"])[:k]) / len(rows)


def recount_mrr(rows: list[dict], cutoff: int) -> float:
    total = 0.0
    for r in rows:
        preds = list(r["predictions"])
        if r["gold"] in preds and preds.index(r["gold"]) < cutoff:
            total += 1.0 / (preds.index(r["gold"]) + 1)
    return total / len(rows)


def recount_post_acceptance(rows: list[dict]) -> float:
    return sum(1 for r in rows if r["decision"] == "accepted") / len(rows)


def recount_mixed_acceptance(rows: list[dict]) -> float:
    return sum(1 for r in rows if r["outcome"] in ("accepted", "edited")) / len(rows)
