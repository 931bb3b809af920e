"""Configurable event/entity ontology: type inventories, prose definitions
and templates, and role constraints.

The shipped project ontology lives at ``ontology/project.yaml``; any
document with the same schema can replace it. An ontology is immutable
after load and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

import yaml

from scriptforge.errors import DanglingEntityType, SchemaError, UnknownType

SCHEMA_TAG = "scriptforge-ontology/1"


@dataclass(frozen=True)
class EntityType:
    id: str
    name: str


@dataclass(frozen=True)
class Role:
    name: str
    entity_types: tuple[str, ...]


@dataclass(frozen=True)
class OntologyEventType:
    """An event type with the prose used for similarity scoring."""

    id: str
    name: str
    definition: str
    template: str
    roles: tuple[Role, ...]

    def role(self, name: str) -> Role | None:
        for r in self.roles:
            if r.name == name:
                return r
        return None


@dataclass(frozen=True)
class RoleCheck:
    ok: bool
    reason: str | None = None
    constraint: str | None = None
    allowed: tuple[str, ...] = ()


@dataclass(frozen=True)
class Ontology:
    version: str
    event_types: tuple[OntologyEventType, ...]
    entity_types: tuple[EntityType, ...]
    _events_by_id: Mapping[str, OntologyEventType] = field(repr=False, compare=False, default_factory=dict)
    _entities_by_id: Mapping[str, EntityType] = field(repr=False, compare=False, default_factory=dict)

    def has_event_type(self, type_id: str) -> bool:
        return type_id in self._events_by_id

    def has_entity_type(self, entity_type_id: str) -> bool:
        return entity_type_id in self._entities_by_id

    def event_type(self, type_id: str) -> OntologyEventType:
        try:
            return self._events_by_id[type_id]
        except KeyError:
            raise UnknownType(f"no event type {type_id!r} in ontology") from None

    def validate_role(self, type_id: str, role_name: str, entity_type_id: str) -> RoleCheck:
        """ok iff the role belongs to the type and the entity type is allowed."""
        etype = self.event_type(type_id)
        role = etype.role(role_name)
        if role is None:
            return RoleCheck(
                ok=False,
                reason=f"type {type_id} has no role {role_name!r}",
                constraint="no-such-role",
                allowed=tuple(r.name for r in etype.roles),
            )
        if entity_type_id not in role.entity_types:
            return RoleCheck(
                ok=False,
                reason=(
                    f"entity type {entity_type_id!r} not allowed in role {role_name!r} "
                    f"(allowed: {', '.join(role.entity_types)})"
                ),
                constraint="entity-type-not-allowed",
                allowed=role.entity_types,
            )
        return RoleCheck(ok=True)


def candidate_text(event_type: OntologyEventType) -> str:
    """Similarity target for an event type: definition, one space, template.

    A missing template degrades to the definition alone.
    """
    parts = [event_type.definition.strip(), event_type.template.strip()]
    return " ".join(p for p in parts if p)


def load_ontology(source: str | Path | dict[str, Any]) -> Ontology:
    """Load and fully validate an ontology document (path or parsed dict)."""
    if isinstance(source, (str, Path)):
        try:
            doc = yaml.safe_load(Path(source).read_text(encoding="utf-8"))
        except yaml.YAMLError as exc:
            raise SchemaError(f"unparseable ontology document: {exc}", path="") from exc
    else:
        doc = source
    if not isinstance(doc, dict):
        raise SchemaError("ontology document must be a mapping", path="")
    if doc.get("schema") != SCHEMA_TAG:
        raise SchemaError(
            f"expected schema {SCHEMA_TAG!r}, got {doc.get('schema')!r}", path="schema"
        )
    version = doc.get("version")
    if not isinstance(version, str) or not version:
        raise SchemaError("version must be a non-empty string", path="version")

    raw_entities = doc.get("entity_types")
    if not isinstance(raw_entities, list) or not raw_entities:
        raise SchemaError("entity_types must be a non-empty list", path="entity_types")
    entities: list[EntityType] = []
    seen_entity_ids: set[str] = set()
    for i, raw in enumerate(raw_entities):
        where = f"entity_types[{i}]"
        if not isinstance(raw, dict) or not raw.get("id"):
            raise SchemaError("entity type needs an id", path=where)
        if raw["id"] in seen_entity_ids:
            raise SchemaError(f"duplicate entity type id {raw['id']!r}", path=where)
        seen_entity_ids.add(raw["id"])
        entities.append(EntityType(id=str(raw["id"]), name=str(raw.get("name", raw["id"]))))

    raw_events = doc.get("event_types")
    if not isinstance(raw_events, list) or not raw_events:
        raise SchemaError("event_types must be a non-empty list", path="event_types")
    events: list[OntologyEventType] = []
    seen_event_ids: set[str] = set()
    for i, raw in enumerate(raw_events):
        where = f"event_types[{i}]"
        if not isinstance(raw, dict) or not raw.get("id"):
            raise SchemaError("event type needs an id", path=where)
        type_id = str(raw["id"])
        if type_id in seen_event_ids:
            raise SchemaError(f"duplicate event type id {type_id!r}", path=where)
        seen_event_ids.add(type_id)
        definition = str(raw.get("definition", "")).strip()
        if not definition:
            raise SchemaError(f"event type {type_id} needs a definition", path=f"{where}.definition")
        raw_roles = raw.get("roles")
        if not isinstance(raw_roles, list) or not raw_roles:
            raise SchemaError(f"event type {type_id} needs roles", path=f"{where}.roles")
        roles: list[Role] = []
        seen_roles: set[str] = set()
        for j, raw_role in enumerate(raw_roles):
            role_where = f"{where}.roles[{j}]"
            if not isinstance(raw_role, dict) or not raw_role.get("name"):
                raise SchemaError("role needs a name", path=role_where)
            role_name = str(raw_role["name"])
            if role_name in seen_roles:
                raise SchemaError(f"duplicate role {role_name!r} on {type_id}", path=role_where)
            seen_roles.add(role_name)
            allowed = raw_role.get("entity_types")
            if not isinstance(allowed, list) or not allowed:
                raise SchemaError(f"role {role_name!r} needs entity_types", path=role_where)
            for entity_id in allowed:
                if entity_id not in seen_entity_ids:
                    raise DanglingEntityType(
                        f"role {role_name!r} of {type_id} references unknown entity type {entity_id!r}"
                    )
            roles.append(Role(name=role_name, entity_types=tuple(str(e) for e in allowed)))
        events.append(
            OntologyEventType(
                id=type_id,
                name=str(raw.get("name", type_id)),
                definition=definition,
                template=str(raw.get("template", "")).strip(),
                roles=tuple(roles),
            )
        )

    return Ontology(
        version=version,
        event_types=tuple(events),
        entity_types=tuple(entities),
        _events_by_id={t.id: t for t in events},
        _entities_by_id={e.id: e for e in entities},
    )


def ontology_to_document(ontology: Ontology) -> dict[str, Any]:
    """Inverse of load: a dict that reloads to an equal ontology."""
    return {
        "schema": SCHEMA_TAG,
        "version": ontology.version,
        "entity_types": [{"id": e.id, "name": e.name} for e in ontology.entity_types],
        "event_types": [
            {
                "id": t.id,
                "name": t.name,
                "definition": t.definition,
                "template": t.template,
                "roles": [
                    {"name": r.name, "entity_types": list(r.entity_types)} for r in t.roles
                ],
            }
            for t in ontology.event_types
        ],
    }


def validate_role(ontology: Ontology, type_id: str, role_name: str, entity_type_id: str) -> RoleCheck:
    return ontology.validate_role(type_id, role_name, entity_type_id)
