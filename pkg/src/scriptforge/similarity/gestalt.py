"""Gestalt string similarity: ratio = 2M / (|a| + |b|).

M is the total length of matching characters found by recursively taking
the longest matching block (leftmost in ``a``, then leftmost in ``b``, on
ties) and recursing on the unmatched left and right segments.

Both inputs are normalized first: lowercased, runs of whitespace collapsed
to a single space, outer whitespace stripped. Two empty strings score 1.0.

The kernel is the compiled extension when available, otherwise the
pure-Python twin; set ``SCRIPTFORGE_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from scriptforge.similarity import _gestalt_py

if os.environ.get("SCRIPTFORGE_PURE_PYTHON") == "1":
    _kernel = _gestalt_py
else:
    try:
        from scriptforge import _speedups as _kernel  # type: ignore[no-redef]
    except ImportError:
        _kernel = _gestalt_py


def kernel_backend() -> str:
    """Name of the active match kernel: ``c`` or ``python``."""
    return "python" if _kernel is _gestalt_py else "c"


def normalize(text: str) -> str:
    """Lowercase, collapse whitespace runs to one space, strip the ends."""
    return " ".join(text.lower().split())


def match_total(a: str, b: str) -> int:
    """Total matched-block length between two already-normalized strings."""
    return _kernel.match_total(a, b)


def gestalt_ratio(a: str, b: str) -> float:
    """Similarity in [0, 1] between two texts after normalization."""
    na, nb = normalize(a), normalize(b)
    total = len(na) + len(nb)
    if total == 0:
        return 1.0
    return 2.0 * _kernel.match_total(na, nb) / total
