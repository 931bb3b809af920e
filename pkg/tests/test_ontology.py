from __future__ import annotations

import pytest

from scriptforge.errors import DanglingEntityType, SchemaError, UnknownType
from scriptforge.ontology import (
    OntologyEventType,
    Role,
    candidate_text,
    load_ontology,
    ontology_to_document,
)

from .conftest import ONTOLOGY_PATH

MINIMAL = {
    "schema": "scriptforge-ontology/1",
    "version": "t1",
    "entity_types": [{"id": "PER", "name": "person"}],
    "event_types": [
        {
            "id": "A.B",
            "name": "ab",
            "definition": "something happened",
            "template": "X did Y",
            "roles": [{"name": "Agent", "entity_types": ["PER"]}],
        }
    ],
}


def test_shipped_ontology_has_41_event_types(ontology):
    assert len(ontology.event_types) == 41
    assert ontology.has_event_type("Movement.Transportation")
    assert ontology.has_entity_type("PER")


def test_every_shipped_type_has_definition_and_roles(ontology):
    for t in ontology.event_types:
        assert t.definition.strip()
        assert t.roles


def test_dangling_entity_type_rejected():
    doc = {
        **MINIMAL,
        "event_types": [
            {
                "id": "A.B",
                "definition": "something",
                "roles": [{"name": "Agent", "entity_types": ["XYZ"]}],
            }
        ],
    }
    with pytest.raises(DanglingEntityType) as err:
        load_ontology(doc)
    assert "XYZ" in str(err.value)


def test_empty_event_types_rejected():
    with pytest.raises(SchemaError) as err:
        load_ontology({**MINIMAL, "event_types": []})
    assert err.value.path == "event_types"


def test_schema_tag_checked():
    with pytest.raises(SchemaError):
        load_ontology({**MINIMAL, "schema": "something-else/9"})


def test_duplicate_ids_rejected():
    doc = {**MINIMAL, "event_types": MINIMAL["event_types"] * 2}
    with pytest.raises(SchemaError):
        load_ontology(doc)


def test_candidate_text_fixture_example(ontology):
    t = ontology.event_type("Movement.Transportation")
    assert candidate_text(t) == (
        "Explicit mention of granting or allowing entry or exit from a location X transported Y"
    )


def test_candidate_text_missing_template_degrades_to_definition():
    t = OntologyEventType(
        id="X.Y", name="xy", definition="a definition", template="",
        roles=(Role("Agent", ("PER",)),),
    )
    assert candidate_text(t) == "a definition"


def test_candidate_text_trims_outer_whitespace():
    t = OntologyEventType(
        id="X.Y", name="xy", definition="  a definition  ", template="  a template  ",
        roles=(Role("Agent", ("PER",)),),
    )
    assert candidate_text(t) == "a definition a template"


def test_candidate_text_deterministic(ontology):
    first = [candidate_text(t) for t in ontology.event_types]
    second = [candidate_text(t) for t in ontology.event_types]
    assert first == second


def test_round_trip_load_serialize_load(ontology):
    doc = ontology_to_document(ontology)
    again = load_ontology(doc)
    assert again == ontology
    assert ontology_to_document(again) == doc


def test_validate_role_paths(ontology):
    assert ontology.validate_role("Movement.Transportation", "Transporter", "PER").ok
    check = ontology.validate_role("Movement.Transportation", "Transporter", "FAC")
    assert not check.ok and check.constraint == "entity-type-not-allowed"
    assert "PER" in check.allowed
    check = ontology.validate_role("Movement.Transportation", "NoSuchRole", "PER")
    assert not check.ok and check.constraint == "no-such-role"
    with pytest.raises(UnknownType):
        ontology.validate_role("No.Type", "Agent", "PER")


def test_validate_role_tolerates_arbitrary_strings(ontology):
    for weird in ("", " ", "ANY\x00THING", "🚗", "a" * 500):
        check = ontology.validate_role("Cognitive.Decide", weird, weird)
        assert not check.ok


def test_loads_from_path():
    ont = load_ontology(ONTOLOGY_PATH)
    assert len(ont.event_types) == 41
