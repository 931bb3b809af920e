"""Pure-Python kernel for recursive longest-matching-block string similarity.

Total match length M between two strings is found by locating the longest
contiguous block the strings share (ties broken by the block that starts
leftmost in ``a``, then leftmost in ``b``), then recursing on the unmatched
segments to the left and to the right of the block. The compiled kernel in
``scriptforge._speedups`` implements the same contract and must return
identical values for all inputs.
"""

from __future__ import annotations


def match_total(a: str, b: str) -> int:
    """Return M, the summed length of all matched blocks between a and b."""
    if not a or not b:
        return 0
    b2j: dict[str, list[int]] = {}
    for j, ch in enumerate(b):
        b2j.setdefault(ch, []).append(j)

    total = 0
    stack = [(0, len(a), 0, len(b))]
    while stack:
        alo, ahi, blo, bhi = stack.pop()
        besti, bestj, bestsize = alo, blo, 0
        # j2len[j] = length of the longest common suffix of a[:i+1] and b[:j+1];
        # scanning i then j ascending makes the first maximal block found the
        # one starting leftmost in a, then leftmost in b.
        j2len: dict[int, int] = {}
        for i in range(alo, ahi):
            newj2len: dict[int, int] = {}
            for j in b2j.get(a[i], ()):
                if j < blo:
                    continue
                if j >= bhi:
                    break
                k = newj2len[j] = j2len.get(j - 1, 0) + 1
                if k > bestsize:
                    besti, bestj, bestsize = i - k + 1, j - k + 1, k
            j2len = newj2len
        if bestsize:
            total += bestsize
            if besti > alo and bestj > blo:
                stack.append((alo, besti, blo, bestj))
            if besti + bestsize < ahi and bestj + bestsize < bhi:
                stack.append((besti + bestsize, ahi, bestj + bestsize, bhi))
    return total
