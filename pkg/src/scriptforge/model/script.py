"""Core data model: a script is a set of events connected by a strict
partial temporal order and by shared arguments (reference variables).

Mutations go through ``Script`` methods, which keep the invariants:
unique ids, an acyclic order, referential integrity of every order
endpoint and role fill, and a version counter that increases by exactly
one per successful mutation. Failed mutations leave the script untouched.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Any, Iterable, Literal

from scriptforge.errors import (
    CycleError,
    DuplicateRelation,
    EmptyText,
    InvalidRequest,
    RoleConstraintViolation,
    SelfAnchor,
    UnknownEvent,
    UnknownType,
    UnknownVariable,
)
from scriptforge.model import order as order_ops

if TYPE_CHECKING:
    from scriptforge.ontology import Ontology


class Provenance(str, Enum):
    CURATOR = "curator"
    MACHINE_ACCEPTED = "machine_accepted"
    MACHINE_EDITED = "machine_edited"


@dataclass
class Event:
    """One sub-event: curator text, optional ontology type, provenance."""

    id: str
    text: str
    event_type: str | None = None
    provenance: Provenance = Provenance.CURATOR
    created_at: str = ""
    extras: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        out = {
            "id": self.id,
            "text": self.text,
            "event_type": self.event_type,
            "provenance": self.provenance.value,
            "created_at": self.created_at,
        }
        out.update(self.extras)
        return out

    @classmethod
    def from_dict(cls, raw: dict[str, Any]) -> "Event":
        known = {"id", "text", "event_type", "provenance", "created_at"}
        return cls(
            id=str(raw["id"]),
            text=str(raw["text"]),
            event_type=raw.get("event_type"),
            provenance=Provenance(raw.get("provenance", "curator")),
            created_at=str(raw.get("created_at", "")),
            extras={k: v for k, v in raw.items() if k not in known},
        )


@dataclass
class ReferenceVariable:
    """A named shared argument filling one role in each participating event."""

    id: str
    label: str
    entity_type: str
    kb_link: str | None = None
    participations: set[tuple[str, str]] = field(default_factory=set)
    extras: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        out = {
            "id": self.id,
            "label": self.label,
            "entity_type": self.entity_type,
            "kb_link": self.kb_link,
            "participations": [[e, r] for e, r in sorted(self.participations)],
        }
        out.update(self.extras)
        return out

    @classmethod
    def from_dict(cls, raw: dict[str, Any]) -> "ReferenceVariable":
        known = {"id", "label", "entity_type", "kb_link", "participations"}
        return cls(
            id=str(raw["id"]),
            label=str(raw["label"]),
            entity_type=str(raw["entity_type"]),
            kb_link=raw.get("kb_link"),
            participations={(str(e), str(r)) for e, r in raw.get("participations", [])},
            extras={k: v for k, v in raw.items() if k not in known},
        )


@dataclass(frozen=True)
class OrderRelation:
    before: str
    after: str

    def to_dict(self) -> dict[str, str]:
        return {"before": self.before, "after": self.after}


Direction = Literal["before", "after"]


@dataclass
class Script:
    """A named complex event under curation."""

    id: str
    name: str
    description: str = ""
    version: int = 1
    events: list[Event] = field(default_factory=list)
    variables: list[ReferenceVariable] = field(default_factory=list)
    order: list[OrderRelation] = field(default_factory=list)
    event_seq: int = 0
    variable_seq: int = 0
    extras: dict[str, Any] = field(default_factory=dict)

    # --- lookups ---------------------------------------------------------

    def event(self, event_id: str) -> Event:
        for ev in self.events:
            if ev.id == event_id:
                return ev
        raise UnknownEvent(f"no event {event_id!r} in script {self.id!r}")

    def variable(self, variable_id: str) -> ReferenceVariable:
        for var in self.variables:
            if var.id == variable_id:
                return var
        raise UnknownVariable(f"no variable {variable_id!r} in script {self.id!r}")

    def event_ids(self) -> list[str]:
        return [ev.id for ev in self.events]

    def event_labels(self) -> dict[str, str]:
        """Display labels E1, E2, ... by creation order."""
        return {ev.id: f"E{i + 1}" for i, ev in enumerate(self.events)}

    @property
    def edges(self) -> list[tuple[str, str]]:
        return [(rel.before, rel.after) for rel in self.order]

    def _bump(self) -> None:
        self.version += 1

    def touch(self) -> None:
        """Advance the version for a document-level mutation (e.g. a logged
        decision) that changes persisted state without editing the script body."""
        self._bump()

    # --- event CRUD ------------------------------------------------------

    def add_event(
        self,
        text: str,
        *,
        event_type: str | None = None,
        provenance: Provenance = Provenance.CURATOR,
        created_at: str = "",
        ontology: "Ontology | None" = None,
    ) -> Event:
        cleaned = text.strip()
        if not cleaned:
            raise EmptyText("event text is empty")
        if event_type is not None:
            if ontology is None:
                raise InvalidRequest("assigning an event type requires the ontology")
            if not ontology.has_event_type(event_type):
                raise UnknownType(f"no event type {event_type!r} in ontology")
        self.event_seq += 1
        ev = Event(
            id=f"e{self.event_seq}",
            text=cleaned,
            event_type=event_type,
            provenance=provenance,
            created_at=created_at,
        )
        self.events.append(ev)
        self._bump()
        return ev

    def remove_event(self, event_id: str) -> None:
        """Remove an event, cascading to its order relations and role fills."""
        ev = self.event(event_id)
        self.events.remove(ev)
        self.order = [rel for rel in self.order if event_id not in (rel.before, rel.after)]
        survivors = []
        for var in self.variables:
            var.participations = {(e, r) for e, r in var.participations if e != event_id}
            if var.participations:
                survivors.append(var)
        self.variables = survivors
        self._bump()

    def assign_event_type(self, event_id: str, type_id: str | None, ontology: "Ontology") -> Event:
        ev = self.event(event_id)
        if type_id is not None and not ontology.has_event_type(type_id):
            raise UnknownType(f"no event type {type_id!r} in ontology")
        # existing role fills must stay valid under the new type
        for var in self.variables:
            for e_id, role in var.participations:
                if e_id != event_id:
                    continue
                if type_id is None:
                    raise RoleConstraintViolation(
                        f"cannot clear type of {event_id!r}: role {role!r} is bound",
                        constraint="event-untyped",
                    )
                check = ontology.validate_role(type_id, role, var.entity_type)
                if not check.ok:
                    raise RoleConstraintViolation(
                        f"retyping {event_id!r} to {type_id!r} breaks binding "
                        f"{var.label!r} in role {role!r}: {check.reason}",
                        constraint=check.constraint or "role",
                    )
        ev.event_type = type_id
        self._bump()
        return ev

    # --- temporal order ---------------------------------------------------

    def add_before(self, before: str, after: str) -> None:
        """Record that ``before`` precedes ``after``; rejects cycles."""
        self.event(before)
        self.event(after)
        if before == after:
            raise CycleError(f"{before!r} cannot precede itself", cycle=[before, before])
        if any(rel.before == before and rel.after == after for rel in self.order):
            raise DuplicateRelation(f"relation {before!r} -> {after!r} already present")
        path = order_ops.find_path(self.edges, after, before)
        if path is not None:
            cycle = path + [after]
            raise CycleError(
                "adding {} -> {} closes cycle {}".format(before, after, " -> ".join(cycle)),
                cycle=cycle,
            )
        self.order.append(OrderRelation(before, after))
        self._bump()

    def anchor(self, selected: Iterable[str], pivot: str, direction: Direction) -> list[OrderRelation]:
        """Order every selected event before (or after) a single pivot.

        All-or-nothing: if any implied edge would close a cycle, nothing is
        added. Edges already present are skipped, not errors.
        """
        self.event(pivot)
        index = {ev.id: i for i, ev in enumerate(self.events)}
        chosen = sorted(set(selected), key=lambda e: index.get(e, len(index)))
        for event_id in chosen:
            self.event(event_id)
        if pivot in chosen:
            raise SelfAnchor(f"pivot {pivot!r} cannot be in the selected set")
        if direction not in ("before", "after"):
            raise InvalidRequest(f"direction must be 'before' or 'after', got {direction!r}")

        existing = {(rel.before, rel.after) for rel in self.order}
        if direction == "before":
            wanted = [(s, pivot) for s in chosen]
        else:
            wanted = [(pivot, s) for s in chosen]
        new_edges = [e for e in wanted if e not in existing]

        combined = self.edges + new_edges
        cycle = order_ops.find_cycle(self.event_ids(), combined)
        if cycle is not None:
            raise CycleError(
                "anchoring would close cycle " + " -> ".join(cycle),
                cycle=cycle,
            )
        added = [OrderRelation(u, v) for u, v in new_edges]
        self.order.extend(added)
        self._bump()
        return added

    def unordered_pairs(self) -> list[tuple[str, str]]:
        """Event pairs with no temporal path either way."""
        return order_ops.unordered_pairs(self.event_ids(), self.edges)

    # --- reference variables ----------------------------------------------

    def _check_binding(
        self, event_id: str, role: str, entity_type: str, ontology: "Ontology"
    ) -> None:
        ev = self.event(event_id)
        if ev.event_type is None:
            raise RoleConstraintViolation(
                f"event {event_id!r} has no type; roles are defined by the event type",
                constraint="event-untyped",
            )
        check = ontology.validate_role(ev.event_type, role, entity_type)
        if not check.ok:
            raise RoleConstraintViolation(
                f"role {role!r} on {event_id!r} ({ev.event_type}): {check.reason}",
                constraint=check.constraint or "role",
                allowed=list(check.allowed or ()),
            )
        for var in self.variables:
            if (event_id, role) in var.participations:
                raise RoleConstraintViolation(
                    f"role {role!r} of event {event_id!r} is already filled by {var.label!r}",
                    constraint="role-already-filled",
                )

    def create_variable(
        self,
        label: str,
        entity_type: str,
        bindings: Iterable[tuple[str, str]],
        ontology: "Ontology",
    ) -> ReferenceVariable:
        cleaned = label.strip()
        if not cleaned:
            raise EmptyText("variable label is empty")
        if not ontology.has_entity_type(entity_type):
            raise UnknownType(f"no entity type {entity_type!r} in ontology")
        binding_list = list(bindings)
        if not binding_list:
            raise InvalidRequest("a variable needs at least one participation")
        if len(set(binding_list)) != len(binding_list):
            raise InvalidRequest("duplicate (event, role) in bindings")
        for event_id, role in binding_list:
            self._check_binding(event_id, role, entity_type, ontology)
        self.variable_seq += 1
        var = ReferenceVariable(
            id=f"v{self.variable_seq}",
            label=cleaned,
            entity_type=entity_type,
            participations=set(binding_list),
        )
        self.variables.append(var)
        self._bump()
        return var

    def bind_variable(self, variable_id: str, event_id: str, role: str, ontology: "Ontology") -> None:
        var = self.variable(variable_id)
        if (event_id, role) in var.participations:
            raise InvalidRequest(f"{var.label!r} already fills role {role!r} of {event_id!r}")
        self._check_binding(event_id, role, var.entity_type, ontology)
        var.participations.add((event_id, role))
        self._bump()

    def unbind_variable(self, variable_id: str, event_id: str, role: str) -> bool:
        """Remove one participation; deletes the variable when it was the
        last one. Returns True if the variable was deleted."""
        var = self.variable(variable_id)
        if (event_id, role) not in var.participations:
            raise InvalidRequest(f"{var.label!r} does not fill role {role!r} of {event_id!r}")
        var.participations.discard((event_id, role))
        deleted = False
        if not var.participations:
            self.variables.remove(var)
            deleted = True
        self._bump()
        return deleted

    def set_kb_link(self, variable_id: str, qid: str | None) -> None:
        var = self.variable(variable_id)
        var.kb_link = qid
        self._bump()

    # --- serialization -----------------------------------------------------

    def to_dict(self) -> dict[str, Any]:
        out = {
            "id": self.id,
            "name": self.name,
            "description": self.description,
            "version": self.version,
            "event_seq": self.event_seq,
            "variable_seq": self.variable_seq,
            "events": [ev.to_dict() for ev in self.events],
            "variables": [var.to_dict() for var in self.variables],
            "order": [rel.to_dict() for rel in self.order],
        }
        out.update(self.extras)
        return out

    @classmethod
    def from_dict(cls, raw: dict[str, Any]) -> "Script":
        known = {
            "id", "name", "description", "version", "event_seq", "variable_seq",
            "events", "variables", "order",
        }
        return cls(
            id=str(raw["id"]),
            name=str(raw["name"]),
            description=str(raw.get("description", "")),
            version=int(raw.get("version", 1)),
            events=[Event.from_dict(e) for e in raw.get("events", [])],
            variables=[ReferenceVariable.from_dict(v) for v in raw.get("variables", [])],
            order=[OrderRelation(str(r["before"]), str(r["after"])) for r in raw.get("order", [])],
            event_seq=int(raw.get("event_seq", 0)),
            variable_seq=int(raw.get("variable_seq", 0)),
            extras={k: v for k, v in raw.items() if k not in known},
        )


def validate_script(script: Script, ontology: "Ontology | None" = None) -> list[str]:
    """Check every model invariant; returns human-readable violations."""
    problems: list[str] = []
    ids = script.event_ids()
    if len(set(ids)) != len(ids):
        problems.append("duplicate event ids")
    id_set = set(ids)

    seen_rel = set()
    for rel in script.order:
        if rel.before == rel.after:
            problems.append(f"self relation {rel.before} -> {rel.after}")
        if (rel.before, rel.after) in seen_rel:
            problems.append(f"duplicate relation {rel.before} -> {rel.after}")
        seen_rel.add((rel.before, rel.after))
        for endpoint in (rel.before, rel.after):
            if endpoint not in id_set:
                problems.append(f"order relation references missing event {endpoint!r}")

    cycle = order_ops.find_cycle(ids, [e for e in script.edges if e[0] in id_set and e[1] in id_set])
    if cycle is not None:
        problems.append("order contains cycle " + " -> ".join(cycle))

    for ev in script.events:
        if not ev.text.strip():
            problems.append(f"event {ev.id} has empty text")
        if ontology is not None and ev.event_type is not None and not ontology.has_event_type(ev.event_type):
            problems.append(f"event {ev.id} has unknown type {ev.event_type!r}")

    filled: set[tuple[str, str]] = set()
    for var in script.variables:
        if not var.participations:
            problems.append(f"variable {var.id} ({var.label}) has no participations")
        for event_id, role in sorted(var.participations):
            if event_id not in id_set:
                problems.append(f"variable {var.id} bound to missing event {event_id!r}")
                continue
            if (event_id, role) in filled:
                problems.append(f"role {role!r} of event {event_id} filled twice")
            filled.add((event_id, role))
            if ontology is not None:
                ev = script.event(event_id)
                if ev.event_type is None:
                    problems.append(f"variable {var.id} bound to untyped event {event_id}")
                elif ontology.has_event_type(ev.event_type):
                    check = ontology.validate_role(ev.event_type, role, var.entity_type)
                    if not check.ok:
                        problems.append(
                            f"variable {var.id} role {role!r} on event {event_id}: {check.reason}"
                        )
        if ontology is not None and not ontology.has_entity_type(var.entity_type):
            problems.append(f"variable {var.id} has unknown entity type {var.entity_type!r}")

    if script.version < 1:
        problems.append("version must be >= 1")
    return problems
