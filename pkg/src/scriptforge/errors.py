"""Structured errors shared across the engine.

Every error carries a stable machine-readable ``code`` so the service and
CLI can map failures to responses without string matching.
"""

from __future__ import annotations

from typing import Any, ClassVar


class ScriptForgeError(Exception):
    """Base class for all domain errors."""

    code: ClassVar[str] = "error"

    def __init__(self, message: str, **details: Any) -> None:
        super().__init__(message)
        self.message = message
        self.details = details

    def payload(self) -> dict[str, Any]:
        out: dict[str, Any] = {"code": self.code, "message": self.message}
        if self.details:
            out["details"] = self.details
        return out


# --- script model ---------------------------------------------------------

class UnknownEvent(ScriptForgeError):
    code = "unknown_event"


class UnknownVariable(ScriptForgeError):
    code = "unknown_variable"


class EmptyText(ScriptForgeError):
    code = "empty_text"


class CycleError(ScriptForgeError):
    """Adding an order relation would close a directed cycle.

    ``cycle`` lists event ids along the offending path; first == last.
    """

    code = "cycle"

    def __init__(self, message: str, cycle: list[str]) -> None:
        super().__init__(message, cycle=list(cycle))
        self.cycle = list(cycle)


class DuplicateRelation(ScriptForgeError):
    code = "duplicate_relation"


class SelfAnchor(ScriptForgeError):
    code = "self_anchor"


class RoleConstraintViolation(ScriptForgeError):
    """A role binding breaks an ontology constraint; ``constraint`` names it."""

    code = "role_constraint"

    def __init__(self, message: str, constraint: str, **details: Any) -> None:
        super().__init__(message, constraint=constraint, **details)
        self.constraint = constraint


# --- ontology -------------------------------------------------------------

class SchemaError(ScriptForgeError):
    """Document does not match the expected schema; ``path`` locates the field."""

    code = "schema_error"

    def __init__(self, message: str, path: str = "") -> None:
        super().__init__(message, path=path)
        self.path = path


class DanglingEntityType(ScriptForgeError):
    code = "dangling_entity_type"


class UnknownType(ScriptForgeError):
    code = "unknown_type"


# --- similarity / providers ------------------------------------------------

class DimensionMismatch(ScriptForgeError):
    code = "dimension_mismatch"


class ZeroVector(ScriptForgeError):
    code = "zero_vector"


class ProviderUnavailable(ScriptForgeError):
    code = "provider_unavailable"


class TranscriptMiss(ScriptForgeError):
    """A scripted generation provider got a prompt no transcript entry matches."""

    code = "transcript_miss"


# --- knowledge base --------------------------------------------------------

class DuplicateQid(ScriptForgeError):
    code = "duplicate_qid"


class MalformedRow(ScriptForgeError):
    def __init__(self, message: str, line: int) -> None:
        super().__init__(message, line=line)
        self.line = line

    code = "malformed_row"


class StaleCandidate(ScriptForgeError):
    code = "stale_candidate"


# --- evaluation ------------------------------------------------------------

class EmptyRecordSet(ScriptForgeError):
    code = "empty_record_set"


class EmptyLog(ScriptForgeError):
    code = "empty_log"


class NoVariables(ScriptForgeError):
    code = "no_variables"


# --- persistence / service --------------------------------------------------

class UnknownScript(ScriptForgeError):
    code = "unknown_script"


class SchemaVersionMismatch(ScriptForgeError):
    code = "schema_version_mismatch"


class CorruptDocument(ScriptForgeError):
    def __init__(self, message: str, location: str = "") -> None:
        super().__init__(message, location=location)
        self.location = location

    code = "corrupt_document"


class VersionConflict(ScriptForgeError):
    code = "version_conflict"


class InvalidRequest(ScriptForgeError):
    code = "invalid_request"
