"""Script documents and the file-per-script workspace.

A ScriptDocument bundles the full script with its suggestion logs and link
decisions. Serialization is byte-stable (sorted keys, two-space indent,
trailing newline) so identical states produce identical files; unknown
fields survive a load/save round trip.
"""

from __future__ import annotations

import json
import re
import threading
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Iterator

from scriptforge.errors import (
    CorruptDocument,
    InvalidRequest,
    SchemaVersionMismatch,
    UnknownScript,
    VersionConflict,
)
from scriptforge.model import Script, validate_script
from scriptforge.ontology import Ontology

SCHEMA_VERSION = 1

_DOCUMENT_FIELDS = {
    "schema_version",
    "script",
    "code",
    "self_reported_time",
    "type_choices",
    "post_curation",
    "mixed_initiative",
    "link_decisions",
}


@dataclass
class ScriptDocument:
    script: Script
    code: str | None = None
    self_reported_time: str | None = None
    type_choices: list[dict[str, Any]] = field(default_factory=list)
    post_curation: list[dict[str, Any]] = field(default_factory=list)
    mixed_initiative: list[dict[str, Any]] = field(default_factory=list)
    link_decisions: list[dict[str, Any]] = field(default_factory=list)
    extras: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "schema_version": SCHEMA_VERSION,
            "script": self.script.to_dict(),
            "code": self.code,
            "self_reported_time": self.self_reported_time,
            "type_choices": self.type_choices,
            "post_curation": self.post_curation,
            "mixed_initiative": self.mixed_initiative,
            "link_decisions": self.link_decisions,
        }
        out.update(self.extras)
        return out

    @classmethod
    def from_dict(cls, raw: dict[str, Any]) -> "ScriptDocument":
        if "schema_version" not in raw:
            raise CorruptDocument("document has no schema_version", location="schema_version")
        version = raw["schema_version"]
        if version != SCHEMA_VERSION:
            raise SchemaVersionMismatch(
                f"document schema_version {version!r} not supported (expected {SCHEMA_VERSION})"
            )
        if "script" not in raw or not isinstance(raw["script"], dict):
            raise CorruptDocument("document has no script object", location="script")
        try:
            script = Script.from_dict(raw["script"])
        except (KeyError, TypeError, ValueError) as exc:
            raise CorruptDocument(f"bad script object: {exc}", location="script") from exc
        return cls(
            script=script,
            code=raw.get("code"),
            self_reported_time=raw.get("self_reported_time"),
            type_choices=list(raw.get("type_choices", [])),
            post_curation=list(raw.get("post_curation", [])),
            mixed_initiative=list(raw.get("mixed_initiative", [])),
            link_decisions=list(raw.get("link_decisions", [])),
            extras={k: v for k, v in raw.items() if k not in _DOCUMENT_FIELDS},
        )


def dumps_document(doc: ScriptDocument) -> str:
    return json.dumps(doc.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def save_script(doc: ScriptDocument, path: str | Path, ontology: Ontology | None = None) -> None:
    """Persist a document; refuses to write a script violating invariants."""
    problems = validate_script(doc.script, ontology)
    if problems:
        raise InvalidRequest(
            f"refusing to save invalid script {doc.script.id!r}", violations=problems
        )
    Path(path).write_text(dumps_document(doc), encoding="utf-8")


def load_script(path: str | Path, check_invariants: bool = True) -> ScriptDocument:
    text = Path(path).read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorruptDocument(
            f"not valid JSON: {exc.msg}", location=f"{path}:{exc.lineno}:{exc.colno}"
        ) from exc
    if not isinstance(raw, dict):
        raise CorruptDocument("document root must be an object", location=str(path))
    doc = ScriptDocument.from_dict(raw)
    if check_invariants:
        problems = validate_script(doc.script)
        if problems:
            raise CorruptDocument(
                "script violates invariants: " + "; ".join(problems), location=str(path)
            )
    return doc


def slugify(name: str) -> str:
    slug = re.sub(r"[^a-z0-9]+", "-", name.lower()).strip("-")
    return slug or "script"


class Workspace:
    """File-per-script storage with per-script write serialization."""

    def __init__(self, root: str | Path, ontology: Ontology | None = None) -> None:
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.ontology = ontology
        self._docs: dict[str, ScriptDocument] = {}
        self._locks: dict[str, threading.RLock] = {}
        self._guard = threading.Lock()

    def path_for(self, script_id: str) -> Path:
        return self.root / f"{script_id}.json"

    def _lock_for(self, script_id: str) -> threading.RLock:
        with self._guard:
            lock = self._locks.get(script_id)
            if lock is None:
                lock = self._locks[script_id] = threading.RLock()
            return lock

    def list_ids(self) -> list[str]:
        on_disk = {p.stem for p in self.root.glob("*.json")}
        return sorted(on_disk | set(self._docs))

    def exists(self, script_id: str) -> bool:
        return script_id in self._docs or self.path_for(script_id).exists()

    def create(self, name: str, description: str, created_at: str = "") -> ScriptDocument:
        base = slugify(name)
        with self._guard:
            script_id = base
            n = 1
            while script_id in self._docs or self.path_for(script_id).exists():
                n += 1
                script_id = f"{base}-{n}"
            doc = ScriptDocument(script=Script(id=script_id, name=name, description=description))
            if created_at:
                doc.extras["created_at"] = created_at
            self._docs[script_id] = doc
        save_script(doc, self.path_for(script_id), self.ontology)
        return doc

    def get(self, script_id: str) -> ScriptDocument:
        with self._lock_for(script_id):
            doc = self._docs.get(script_id)
            if doc is None:
                path = self.path_for(script_id)
                if not path.exists():
                    raise UnknownScript(f"no script {script_id!r} in workspace")
                doc = load_script(path)
                self._docs[script_id] = doc
            return doc

    def save(self, doc: ScriptDocument) -> None:
        save_script(doc, self.path_for(doc.script.id), self.ontology)

    @contextmanager
    def mutate(self, script_id: str, expected_version: int | None) -> Iterator[ScriptDocument]:
        """Serialize one mutation: check the expected version, run the body,
        persist on success. On failure the cached copy is dropped so the
        next reader sees the last persisted (pre-mutation) state."""
        lock = self._lock_for(script_id)
        with lock:
            doc = self.get(script_id)
            if expected_version is not None and doc.script.version != expected_version:
                raise VersionConflict(
                    f"script {script_id!r} is at version {doc.script.version}, "
                    f"request expected {expected_version}"
                )
            try:
                yield doc
            except Exception:
                self._docs.pop(script_id, None)
                raise
            self.save(doc)

    def add_document(self, doc: ScriptDocument) -> None:
        """Adopt an externally built document (fixture import)."""
        with self._guard:
            self._docs[doc.script.id] = doc
        self.save(doc)
