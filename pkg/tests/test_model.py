from __future__ import annotations

import copy

import pytest

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
from scriptforge.model import Provenance, Script, export_graph, validate_script

from .conftest import make_script


def ids(script):
    return script.event_ids()


def test_add_event_assigns_sequential_ids_and_bumps_version():
    s = make_script()
    v0 = s.version
    e = s.add_event("go to a car dealership")
    assert e.id == "e1" and s.version == v0 + 1
    s.add_event("take a test drive")
    assert ids(s) == ["e1", "e2"]
    assert s.event_labels() == {"e1": "E1", "e2": "E2"}


def test_event_text_trimmed_and_empty_rejected():
    s = make_script()
    e = s.add_event("  negotiate the price  ")
    assert e.text == "negotiate the price"
    with pytest.raises(EmptyText):
        s.add_event("   \t ")


def test_event_ids_never_reused_after_removal():
    s = make_script(n_events=2)
    s.remove_event("e2")
    e = s.add_event("another step")
    assert e.id == "e3"


def test_add_before_single_edge():
    s = make_script(n_events=2)
    s.add_before("e1", "e2")
    assert s.edges == [("e1", "e2")]


def test_add_before_cycle_reports_path():
    s = make_script(n_events=3)
    s.add_before("e1", "e2")
    s.add_before("e2", "e3")
    with pytest.raises(CycleError) as err:
        s.add_before("e3", "e1")
    assert err.value.cycle == ["e1", "e2", "e3", "e1"]
    assert s.edges == [("e1", "e2"), ("e2", "e3")]  # untouched


def test_add_before_duplicate_is_error_not_noop():
    s = make_script(n_events=2)
    s.add_before("e1", "e2")
    with pytest.raises(DuplicateRelation):
        s.add_before("e1", "e2")


def test_add_before_self_edge_is_cycle():
    s = make_script(n_events=1)
    with pytest.raises(CycleError) as err:
        s.add_before("e1", "e1")
    assert err.value.cycle == ["e1", "e1"]


def test_add_before_unknown_event():
    s = make_script(n_events=1)
    with pytest.raises(UnknownEvent):
        s.add_before("e1", "e9")


def test_anchor_before_adds_edges_to_pivot():
    s = make_script(n_events=4)
    s.anchor({"e2", "e3"}, "e4", "before")
    assert set(s.edges) == {("e2", "e4"), ("e3", "e4")}


def test_anchor_after_adds_edges_from_pivot():
    s = make_script(n_events=3)
    s.anchor({"e2", "e3"}, "e1", "after")
    assert set(s.edges) == {("e1", "e2"), ("e1", "e3")}


def test_anchor_self_is_rejected():
    s = make_script(n_events=2)
    with pytest.raises(SelfAnchor):
        s.anchor({"e1"}, "e1", "before")


def test_anchor_skips_existing_edges():
    s = make_script(n_events=3)
    s.add_before("e2", "e3")
    added = s.anchor({"e1", "e2"}, "e3", "before")
    assert [(r.before, r.after) for r in added] == [("e1", "e3")]


def test_anchor_atomic_rollback_on_cycle():
    # one selected event would close a cycle: nothing at all is added
    s = make_script(n_events=4)
    s.add_before("e4", "e2")
    before_doc = copy.deepcopy(s.to_dict())
    with pytest.raises(CycleError):
        s.anchor({"e2", "e3"}, "e4", "before")
    assert s.to_dict() == before_doc


def test_anchor_does_not_order_selected_among_themselves():
    s = make_script(n_events=3)
    s.anchor({"e1", "e2"}, "e3", "before")
    assert ("e1", "e2") not in s.edges and ("e2", "e1") not in s.edges
    assert s.unordered_pairs() == [("e1", "e2")]


def test_remove_event_cascades():
    s = make_script(n_events=3)
    s.add_before("e1", "e2")
    s.add_before("e2", "e3")
    s.remove_event("e2")
    assert s.edges == []
    assert ids(s) == ["e1", "e3"]
    assert validate_script(s) == []


def test_unordered_pairs_in_creation_order():
    s = make_script(n_events=3)
    s.add_before("e1", "e2")
    s.add_before("e1", "e3")
    assert s.unordered_pairs() == [("e2", "e3")]


class TestVariables:
    def _typed_script(self, ontology):
        s = make_script()
        s.add_event("go to a car dealership", event_type="Movement.Transportation", ontology=ontology)
        s.add_event("take a test drive", event_type="Movement.Transportation", ontology=ontology)
        s.add_event("negotiate the price", event_type="Contact.Negotiate", ontology=ontology)
        return s

    def test_create_bind_and_cascade(self, ontology):
        s = self._typed_script(ontology)
        var = s.create_variable("buyer", "PER", [("e1", "PassengerArtifact")], ontology)
        assert var.id == "v1"
        s.bind_variable("v1", "e2", "PassengerArtifact", ontology)
        assert var.participations == {("e1", "PassengerArtifact"), ("e2", "PassengerArtifact")}
        s.remove_event("e2")
        assert var.participations == {("e1", "PassengerArtifact")}
        s.remove_event("e1")  # last participation gone: variable deleted
        with pytest.raises(UnknownVariable):
            s.variable("v1")

    def test_role_allows_fixture_entity_type(self, ontology):
        s = self._typed_script(ontology)
        var = s.create_variable("buyer", "PER", [("e3", "Participant")], ontology)
        assert ("e3", "Participant") in var.participations

    def test_role_rejects_disallowed_entity_type(self, ontology):
        s = self._typed_script(ontology)
        with pytest.raises(RoleConstraintViolation) as err:
            s.create_variable("dealership", "FAC", [("e1", "Transporter")], ontology)
        assert err.value.constraint == "entity-type-not-allowed"
        assert "PER" in err.value.details["allowed"]

    def test_unknown_role_name(self, ontology):
        s = self._typed_script(ontology)
        with pytest.raises(RoleConstraintViolation) as err:
            s.create_variable("buyer", "PER", [("e1", "Pilot")], ontology)
        assert err.value.constraint == "no-such-role"

    def test_role_filled_by_at_most_one_variable(self, ontology):
        s = self._typed_script(ontology)
        s.create_variable("buyer", "PER", [("e1", "Transporter")], ontology)
        with pytest.raises(RoleConstraintViolation) as err:
            s.create_variable("driver", "PER", [("e1", "Transporter")], ontology)
        assert err.value.constraint == "role-already-filled"

    def test_binding_untyped_event_rejected(self, ontology):
        s = make_script(n_events=1)
        with pytest.raises(RoleConstraintViolation) as err:
            s.create_variable("buyer", "PER", [("e1", "Transporter")], ontology)
        assert err.value.constraint == "event-untyped"

    def test_variable_needs_a_participation(self, ontology):
        s = self._typed_script(ontology)
        with pytest.raises(InvalidRequest):
            s.create_variable("buyer", "PER", [], ontology)

    def test_unbind_last_participation_deletes_variable(self, ontology):
        s = self._typed_script(ontology)
        s.create_variable("buyer", "PER", [("e1", "PassengerArtifact")], ontology)
        assert s.unbind_variable("v1", "e1", "PassengerArtifact") is True
        assert s.variables == []

    def test_unknown_entity_type(self, ontology):
        s = self._typed_script(ontology)
        with pytest.raises(UnknownType):
            s.create_variable("thing", "XYZ", [("e1", "PassengerArtifact")], ontology)

    def test_retype_breaking_binding_rejected(self, ontology):
        s = self._typed_script(ontology)
        s.create_variable("buyer", "PER", [("e1", "Transporter")], ontology)
        with pytest.raises(RoleConstraintViolation):
            s.assign_event_type("e1", "Cognitive.Decide", ontology)
        assert s.event("e1").event_type == "Movement.Transportation"


def test_assign_type_validates_against_ontology(ontology):
    s = make_script(n_events=1)
    with pytest.raises(UnknownType):
        s.assign_event_type("e1", "No.SuchType", ontology)
    s.assign_event_type("e1", "Cognitive.Decide", ontology)
    assert s.event("e1").event_type == "Cognitive.Decide"


def test_every_successful_mutation_bumps_version_failed_ones_do_not(ontology):
    s = make_script()
    versions = [s.version]
    s.add_event("one step here")
    versions.append(s.version)
    s.add_event("two steps here")
    versions.append(s.version)
    s.add_before("e1", "e2")
    versions.append(s.version)
    assert versions == [1, 2, 3, 4]
    with pytest.raises(DuplicateRelation):
        s.add_before("e1", "e2")
    with pytest.raises(CycleError):
        s.add_before("e2", "e1")
    assert s.version == 4


def test_export_graph_reduces_edges_and_annotates_args(ontology):
    s = make_script()
    for text, type_id in [
        ("go to a car dealership", "Movement.Transportation"),
        ("walk around looking at cars", "Cognitive.Inspection"),
        ("talk to a salesperson", "Contact.Contact"),
        ("take a test drive", "Movement.Transportation"),
    ]:
        s.add_event(text, event_type=type_id, ontology=ontology)
    # Fig-2 shape: e1 before both middle events, both before e4; redundant e1->e4
    s.add_before("e1", "e2")
    s.add_before("e1", "e3")
    s.anchor({"e2", "e3"}, "e4", "before")
    s.add_before("e1", "e4")  # transitively implied; must not be drawn
    s.create_variable("buyer", "PER", [("e1", "PassengerArtifact"), ("e4", "PassengerArtifact")], ontology)

    graph = export_graph(s)
    assert [n["label"] for n in graph["nodes"]] == ["E1", "E2", "E3", "E4"]
    assert {(e["before"], e["after"]) for e in graph["edges"]} == {
        ("e1", "e2"), ("e1", "e3"), ("e2", "e4"), ("e3", "e4"),
    }
    assert graph["unordered"] == [["e2", "e3"]]
    assert graph["nodes"][0]["args"] == [{"variable": "v1", "label": "buyer", "role": "PassengerArtifact"}]


def test_machine_provenance_round_trip():
    s = make_script()
    s.add_event("take a test drive", provenance=Provenance.MACHINE_ACCEPTED)
    restored = Script.from_dict(s.to_dict())
    assert restored.events[0].provenance is Provenance.MACHINE_ACCEPTED
    assert restored == s


def test_validate_script_reports_problems(ontology):
    s = make_script(n_events=2)
    s.add_before("e1", "e2")
    assert validate_script(s, ontology) == []
    # corrupt by hand: dangling order endpoint and a cycle
    raw = s.to_dict()
    raw["order"].append({"before": "e2", "after": "e1"})
    raw["order"].append({"before": "e9", "after": "e1"})
    broken = Script.from_dict(raw)
    problems = validate_script(broken, ontology)
    assert any("cycle" in p for p in problems)
    assert any("missing event 'e9'" in p for p in problems)
