"""Persistence, the curation service API, and service configuration."""

from scriptforge.service.storage import (
    SCHEMA_VERSION,
    ScriptDocument,
    Workspace,
    dumps_document,
    load_script,
    save_script,
    slugify,
)

__all__ = [
    "SCHEMA_VERSION",
    "ScriptDocument",
    "Workspace",
    "dumps_document",
    "load_script",
    "save_script",
    "slugify",
]
