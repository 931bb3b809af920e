from __future__ import annotations

import json
import threading
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from scriptforge.service.app import ServiceConfig, create_app
from scriptforge.service.storage import Workspace, load_script

from .conftest import FIXTURES, KB_PATH, ONTOLOGY_PATH, REPO_ROOT


@pytest.fixture()
def client(tmp_path):
    config = ServiceConfig(
        workspace=tmp_path / "ws",
        ontology_path=ONTOLOGY_PATH,
        kb_path=KB_PATH,
        provider="stub",
        transcript_path=FIXTURES / "transcripts" / "buying_a_car_postcuration.json",
        fixed_time="2026-02-10T12:00:00+00:00",
    )
    app = create_app(config)
    with TestClient(app) as c:
        yield c


def _create(client, name="buying a car", description="desc") -> tuple[str, int]:
    body = client.post("/scripts", json={"name": name, "description": description}).json()
    return body["id"], body["version"]


def _add_event(client, sid, version, text, event_type=None):
    r = client.post(f"/scripts/{sid}/events", json={
        "text": text, "event_type": event_type, "expected_version": version,
    })
    assert r.status_code == 200, r.text
    return r.json()["event"]["id"], r.json()["version"]


def test_healthz(client):
    assert client.get("/healthz").json()["status"] == "ok"


def test_create_and_list(client):
    sid, version = _create(client)
    assert sid == "buying-a-car" and version == 1
    assert [s["id"] for s in client.get("/scripts").json()] == [sid]
    assert client.get(f"/scripts/{sid}").json()["script"]["name"] == "buying a car"
    assert client.get("/scripts/nope").status_code == 404


def test_stale_version_conflicts(client):
    sid, version = _create(client)
    _add_event(client, sid, version, "a first step")
    r = client.post(f"/scripts/{sid}/events", json={
        "text": "stale write", "expected_version": version,
    })
    assert r.status_code == 409
    assert r.json()["error"]["code"] == "version_conflict"


def test_domain_errors_map_to_structured_payloads(client):
    sid, version = _create(client)
    e1, version = _add_event(client, sid, version, "one step")
    e2, version = _add_event(client, sid, version, "two step")
    r = client.post(f"/scripts/{sid}/order/before",
                    json={"before": e1, "after": e2, "expected_version": version})
    version = r.json()["version"]
    r = client.post(f"/scripts/{sid}/order/before",
                    json={"before": e2, "after": e1, "expected_version": version})
    assert r.status_code == 422
    assert r.json()["error"]["code"] == "cycle"
    assert r.json()["error"]["details"]["cycle"] == [e1, e2, e1]


def test_graph_endpoint_fig2_shape(client, ontology):
    sid, version = _create(client, name="shaped script")
    ids = []
    for text in ("go to a car dealership", "walk around looking at cars",
                 "talk to a salesperson", "take a test drive"):
        eid, version = _add_event(client, sid, version, text)
        ids.append(eid)
    r = client.post(f"/scripts/{sid}/order/before",
                    json={"before": ids[0], "after": ids[1], "expected_version": version})
    version = r.json()["version"]
    r = client.post(f"/scripts/{sid}/order/before",
                    json={"before": ids[0], "after": ids[2], "expected_version": version})
    version = r.json()["version"]
    r = client.post(f"/scripts/{sid}/order/anchor", json={
        "selected": [ids[1], ids[2]], "pivot": ids[3], "direction": "before",
        "expected_version": version,
    })
    version = r.json()["version"]

    graph = client.get(f"/scripts/{sid}/graph").json()
    assert [n["label"] for n in graph["nodes"]] == ["E1", "E2", "E3", "E4"]
    assert {(e["before"], e["after"]) for e in graph["edges"]} == {
        (ids[0], ids[1]), (ids[0], ids[2]), (ids[1], ids[3]), (ids[2], ids[3]),
    }
    pairs = client.get(f"/scripts/{sid}/order/unordered-pairs").json()["pairs"]
    assert pairs == [[ids[1], ids[2]]]


def test_anchor_cycle_is_atomic(client):
    sid, version = _create(client, name="atomic")
    ids = []
    for text in ("first step", "second step", "third step", "fourth step"):
        eid, version = _add_event(client, sid, version, text)
        ids.append(eid)
    r = client.post(f"/scripts/{sid}/order/before",
                    json={"before": ids[3], "after": ids[1], "expected_version": version})
    version = r.json()["version"]
    before = client.get(f"/scripts/{sid}").json()
    r = client.post(f"/scripts/{sid}/order/anchor", json={
        "selected": [ids[1], ids[2]], "pivot": ids[3], "direction": "before",
        "expected_version": version,
    })
    assert r.status_code == 422 and r.json()["error"]["code"] == "cycle"
    assert client.get(f"/scripts/{sid}").json() == before


def test_type_suggestions_and_choice_recording(client):
    sid, version = _create(client)
    eid, version = _add_event(client, sid, version, "go to a car dealership")
    shown = client.get(f"/scripts/{sid}/events/{eid}/suggest-types", params={"k": 3}).json()
    assert len(shown["suggestions"]) == 3
    assert [s["rank"] for s in shown["suggestions"]] == [1, 2, 3]
    r = client.post(f"/scripts/{sid}/events/{eid}/type", json={
        "type_id": "Movement.Transportation",
        "expected_version": version,
        "suggestions": shown["suggestions"],
    })
    assert r.status_code == 200
    doc = client.get(f"/scripts/{sid}").json()
    assert doc["script"]["events"][0]["event_type"] == "Movement.Transportation"
    [record] = doc["type_choices"]
    assert record["gold"] == "Movement.Transportation"
    assert record["predictions"] == [s["type_id"] for s in shown["suggestions"]]


def test_unknown_type_rejected(client):
    sid, version = _create(client)
    eid, version = _add_event(client, sid, version, "one step")
    r = client.post(f"/scripts/{sid}/events/{eid}/type", json={
        "type_id": "No.Such", "expected_version": version,
    })
    assert r.status_code == 404 and r.json()["error"]["code"] == "unknown_type"


def test_variables_links_and_stale_sets(client):
    sid, version = _create(client)
    eid, version = _add_event(client, sid, version, "go to a car dealership",
                              event_type="Movement.Transportation")
    r = client.post(f"/scripts/{sid}/variables", json={
        "label": "car dealership", "entity_type": "FAC",
        "bindings": [{"event_id": eid, "role": "Destination"}],
        "expected_version": version,
    })
    assert r.status_code == 200
    vid, version = r.json()["variable"]["id"], r.json()["version"]

    first = client.post(f"/scripts/{sid}/variables/{vid}/link-candidates").json()
    assert first["set_version"] == 1
    assert first["candidates"][0]["qid"] == "Q786803"
    assert len(first["candidates"]) <= 5

    second = client.post(f"/scripts/{sid}/variables/{vid}/link-candidates").json()
    assert second["set_version"] == 2

    r = client.post(f"/scripts/{sid}/variables/{vid}/link-decision", json={
        "set_version": first["set_version"], "qid": "Q786803", "expected_version": version,
    })
    assert r.status_code == 409 and r.json()["error"]["code"] == "stale_candidate"

    r = client.post(f"/scripts/{sid}/variables/{vid}/link-decision", json={
        "set_version": second["set_version"], "qid": "Q786803", "expected_version": version,
    })
    assert r.status_code == 200
    doc = client.get(f"/scripts/{sid}").json()
    assert doc["script"]["variables"][0]["kb_link"] == "Q786803"
    assert doc["link_decisions"][0]["qid"] == "Q786803"


def test_remove_event_cascades_over_http(client):
    sid, version = _create(client, name="cascade")
    e1, version = _add_event(client, sid, version, "go to a car dealership",
                             event_type="Movement.Transportation")
    e2, version = _add_event(client, sid, version, "take a test drive",
                             event_type="Movement.Transportation")
    r = client.post(f"/scripts/{sid}/order/before",
                    json={"before": e1, "after": e2, "expected_version": version})
    version = r.json()["version"]
    r = client.post(f"/scripts/{sid}/variables", json={
        "label": "buyer", "entity_type": "PER",
        "bindings": [{"event_id": e2, "role": "PassengerArtifact"}],
        "expected_version": version,
    })
    vid, version = r.json()["variable"]["id"], r.json()["version"]

    r = client.post(f"/scripts/{sid}/events/{e2}/remove", json={"expected_version": version})
    assert r.status_code == 200
    doc = client.get(f"/scripts/{sid}").json()
    assert [e["id"] for e in doc["script"]["events"]] == [e1]
    assert doc["script"]["order"] == []
    assert doc["script"]["variables"] == []  # last participation removed


def test_unbind_endpoint_deletes_emptied_variable(client):
    sid, version = _create(client, name="unbind")
    e1, version = _add_event(client, sid, version, "go to a car dealership",
                             event_type="Movement.Transportation")
    r = client.post(f"/scripts/{sid}/variables", json={
        "label": "buyer", "entity_type": "PER",
        "bindings": [{"event_id": e1, "role": "PassengerArtifact"}],
        "expected_version": version,
    })
    vid, version = r.json()["variable"]["id"], r.json()["version"]
    r = client.post(f"/scripts/{sid}/variables/{vid}/unbind", json={
        "event_id": e1, "role": "PassengerArtifact", "expected_version": version,
    })
    assert r.status_code == 200 and r.json()["variable_deleted"] is True
    assert client.get(f"/scripts/{sid}").json()["script"]["variables"] == []


def test_role_constraint_violation_payload(client):
    sid, version = _create(client)
    eid, version = _add_event(client, sid, version, "go to a car dealership",
                              event_type="Movement.Transportation")
    r = client.post(f"/scripts/{sid}/variables", json={
        "label": "dealership", "entity_type": "FAC",
        "bindings": [{"event_id": eid, "role": "Transporter"}],
        "expected_version": version,
    })
    assert r.status_code == 422
    error = r.json()["error"]
    assert error["code"] == "role_constraint"
    assert error["details"]["constraint"] == "entity-type-not-allowed"


def test_recommendation_flow_and_decisions(client):
    sid, version = _create(client, description="the running example")
    for text in ("Identify your needs", "Decide on your budget",
                 "Identify car models you can afford"):
        _, version = _add_event(client, sid, version, text)

    r = client.post(f"/scripts/{sid}/recommendations", json={"expected_version": version})
    assert r.status_code == 200
    body = r.json()
    version = body["version"]
    assert len(body["suggestions"]) == 12
    golden = json.loads((FIXTURES / "golden" / "filter_golden.json").read_text())
    assert [s["text"] for s in body["suggestions"]] == golden["kept"]

    sug = body["suggestions"][0]["id"]
    r = client.post(f"/scripts/{sid}/recommendations/{sug}/decision", json={
        "decision": "accepted", "expected_version": version,
    })
    assert r.status_code == 200
    version = r.json()["version"]
    assert r.json()["event"]["provenance"] == "machine_accepted"

    r = client.post(f"/scripts/{sid}/recommendations/{sug}/decision", json={
        "decision": "rejected", "expected_version": version,
    })
    assert r.status_code == 422  # already decided

    doc = client.get(f"/scripts/{sid}").json()
    assert doc["post_curation"][0]["decision"] == "accepted"
    assert doc["script"]["events"][-1]["text"] == doc["post_curation"][0]["text"]


def test_mixed_initiative_flow(tmp_path):
    config = ServiceConfig(
        workspace=tmp_path / "ws",
        ontology_path=ONTOLOGY_PATH,
        kb_path=KB_PATH,
        provider="stub",
        transcript_path=FIXTURES / "transcripts" / "buying_a_car_mixed.json",
        fixed_time="2026-02-10T12:00:00+00:00",
    )
    with TestClient(create_app(config)) as client:
        sid, version = _create(client)
        _, version = _add_event(client, sid, version, "Identify your needs")

        r = client.post(f"/scripts/{sid}/mixed-initiative/next",
                        json={"expected_version": version})
        assert r.status_code == 200
        set_one = r.json()
        version = set_one["version"]
        golden = json.loads((FIXTURES / "golden" / "mixed_golden.json").read_text())
        assert [o["text"] for o in set_one["options"]] == golden["options"]

        r = client.post(f"/scripts/{sid}/mixed-initiative/decision", json={
            "set_id": set_one["set_id"], "outcome": "accepted", "option_index": 0,
            "expected_version": version,
        })
        assert r.status_code == 200
        version = r.json()["version"]
        assert r.json()["event"]["provenance"] == "machine_accepted"

        # deciding the same (now superseded) set again is stale
        r = client.post(f"/scripts/{sid}/mixed-initiative/decision", json={
            "set_id": set_one["set_id"], "outcome": "accepted", "option_index": 0,
            "expected_version": version,
        })
        assert r.status_code == 409

        r = client.post(f"/scripts/{sid}/mixed-initiative/next",
                        json={"expected_version": version})
        set_two = r.json()
        version = set_two["version"]
        assert set_two["set_id"] == 2
        assert set_two["options"]  # next prompt matched the second transcript entry

        r = client.post(f"/scripts/{sid}/mixed-initiative/decision", json={
            "set_id": 2, "outcome": "edited", "option_index": 0,
            "edited_text": "Identify the car models you can actually afford",
            "expected_version": version,
        })
        version = r.json()["version"]
        assert r.json()["event"]["provenance"] == "machine_edited"

        doc = client.get(f"/scripts/{sid}").json()
        outcomes = [e["outcome"] for e in doc["mixed_initiative"]]
        assert outcomes == ["accepted", "edited"]


def test_report_endpoint(client):
    sid, version = _create(client, name="empty report")
    report = client.get(f"/scripts/{sid}/report").json()
    assert report["event_count"] == 0 and report["top1"] is None
    combined = client.get("/report").json()
    assert combined["reports"] and "non-linear path" in combined["table"]


def test_validate_endpoint(client):
    sid, version = _create(client, name="valid script")
    body = client.get(f"/scripts/{sid}/validate").json()
    assert body == {"valid": True, "violations": []}


def test_provider_unavailable_when_no_transcript(tmp_path):
    config = ServiceConfig(
        workspace=tmp_path / "ws",
        ontology_path=ONTOLOGY_PATH,
        kb_path=None,
        provider="stub",
    )
    with TestClient(create_app(config)) as client:
        sid, version = _create(client)
        _, version = _add_event(client, sid, version, "a lonely step")
        r = client.post(f"/scripts/{sid}/recommendations", json={"expected_version": version})
        assert r.status_code == 503
        assert r.json()["error"]["code"] == "provider_unavailable"
        r = client.post(f"/scripts/{sid}/variables/v1/link-candidates")
        assert r.status_code == 503


def test_concurrent_mutations_linearized_gap_free(tmp_path, ontology):
    ws = Workspace(tmp_path / "ws", ontology)
    doc = ws.create("concurrent script", "")
    sid = doc.script.id
    n_threads, per_thread = 8, 25
    conflicts = [0] * n_threads

    def worker(idx: int) -> None:
        for i in range(per_thread):
            while True:
                current = ws.get(sid).script.version
                try:
                    with ws.mutate(sid, expected_version=current) as d:
                        d.script.add_event(f"step from worker {idx} number {i}")
                    break
                except Exception:
                    conflicts[idx] += 1

    threads = [threading.Thread(target=worker, args=(t,)) for t in range(n_threads)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()

    final = ws.get(sid)
    total = n_threads * per_thread
    assert len(final.script.events) == total
    # one bump per successful mutation, no gaps
    assert final.script.version == 1 + total
    assert len({e.id for e in final.script.events}) == total


def test_persisted_file_matches_endpoint_payload(client, tmp_path):
    sid, version = _create(client, name="persist me")
    _add_event(client, sid, version, "one persistent step")
    doc = client.get(f"/scripts/{sid}").json()
    # the service's workspace file is the same document, byte-stable
    app_state = client.app.state.engine
    on_disk = load_script(app_state.store.path_for(sid))
    assert on_disk.to_dict() == doc
