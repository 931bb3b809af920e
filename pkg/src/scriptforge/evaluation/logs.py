"""Line-delimited JSON log files for ranked records and suggestion decisions.

One JSON object per line. Ranked-record lines need ``gold`` and
``predictions``; suggestion-decision lines need ``decision`` (post-curation)
or ``outcome`` (mixed-initiative). Extra context fields are preserved but
ignored by the metric kernels.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Iterable

from scriptforge.errors import CorruptDocument
from scriptforge.evaluation import RankedRecord


def read_jsonl(path: str | Path) -> list[dict[str, Any]]:
    rows: list[dict[str, Any]] = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        try:
            row = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorruptDocument(f"bad JSON on line {lineno}: {exc}", location=f"{path}:{lineno}") from exc
        if not isinstance(row, dict):
            raise CorruptDocument(f"line {lineno} is not an object", location=f"{path}:{lineno}")
        rows.append(row)
    return rows


def write_jsonl(path: str | Path, rows: Iterable[dict[str, Any]]) -> None:
    text = "".join(json.dumps(row, sort_keys=True, ensure_ascii=False) + "\n" for row in rows)
    Path(path).write_text(text, encoding="utf-8")


def read_ranked_records(path: str | Path) -> list[RankedRecord]:
    return [RankedRecord.from_dict(row) for row in read_jsonl(path)]
