"""Scripted end-to-end walkthrough of the curation API.

Drives one full curation pass (create, events, types, order, arguments,
links, recommendations) against a running test client with stub providers
and a frozen clock. Used both to generate the committed golden document
and to verify the service reproduces it byte-exactly.
"""

from __future__ import annotations

from pathlib import Path

FIXED_TIME = "2026-02-10T12:00:00+00:00"
SCRIPT_NAME = "buying a car"
SCRIPT_DESCRIPTION = (
    "Buying a car takes research, budgeting, and paperwork before the keys change hands."
)
STEP_TEXTS = (
    "Identify your needs",
    "Decide on your budget",
    "Identify car models you can afford",
)
STEP_TYPES = (
    "Cognitive.IdentifyCategorize",
    "Cognitive.Decide",
    "Cognitive.IdentifyCategorize",
)


def _ok(response):
    assert response.status_code == 200, f"{response.request.url}: {response.status_code} {response.text}"
    return response.json()


def run_walkthrough(client) -> str:
    """Execute the full pass; returns the script id."""
    created = _ok(client.post("/scripts", json={
        "name": SCRIPT_NAME, "description": SCRIPT_DESCRIPTION, "code": "CAR",
    }))
    sid = created["id"]
    version = created["version"]

    event_ids = []
    for text in STEP_TEXTS:
        body = _ok(client.post(f"/scripts/{sid}/events", json={
            "text": text, "expected_version": version,
        }))
        event_ids.append(body["event"]["id"])
        version = body["version"]

    for eid, type_id in zip(event_ids, STEP_TYPES):
        shown = _ok(client.get(f"/scripts/{sid}/events/{eid}/suggest-types", params={"k": 3}))
        body = _ok(client.post(f"/scripts/{sid}/events/{eid}/type", json={
            "type_id": type_id,
            "expected_version": version,
            "suggestions": shown["suggestions"],
        }))
        version = body["version"]

    body = _ok(client.post(f"/scripts/{sid}/order/before", json={
        "before": event_ids[0], "after": event_ids[1], "expected_version": version,
    }))
    version = body["version"]
    body = _ok(client.post(f"/scripts/{sid}/order/anchor", json={
        "selected": [event_ids[2]], "pivot": event_ids[1], "direction": "after",
        "expected_version": version,
    }))
    version = body["version"]

    body = _ok(client.post(f"/scripts/{sid}/variables", json={
        "label": "buyer",
        "entity_type": "PER",
        "bindings": [
            {"event_id": event_ids[0], "role": "Identifier"},
            {"event_id": event_ids[1], "role": "Decider"},
            {"event_id": event_ids[2], "role": "Identifier"},
        ],
        "expected_version": version,
    }))
    vid = body["variable"]["id"]
    version = body["version"]

    candidates = _ok(client.post(f"/scripts/{sid}/variables/{vid}/link-candidates"))
    body = _ok(client.post(f"/scripts/{sid}/variables/{vid}/link-decision", json={
        "set_version": candidates["set_version"],
        "qid": candidates["candidates"][0]["qid"],
        "expected_version": version,
    }))
    version = body["version"]

    recs = _ok(client.post(f"/scripts/{sid}/recommendations", json={"expected_version": version}))
    version = recs["version"]
    first, second = recs["suggestions"][0]["id"], recs["suggestions"][1]["id"]
    body = _ok(client.post(f"/scripts/{sid}/recommendations/{first}/decision", json={
        "decision": "accepted", "expected_version": version,
    }))
    version = body["version"]
    body = _ok(client.post(f"/scripts/{sid}/recommendations/{second}/decision", json={
        "decision": "rejected", "expected_version": version,
    }))
    return sid


def walkthrough_config(workspace: Path, repo_root: Path):
    from scriptforge.service.app import ServiceConfig

    return ServiceConfig(
        workspace=workspace,
        ontology_path=repo_root / "ontology" / "project.yaml",
        kb_path=repo_root / "fixtures" / "kb" / "wikidata_subset.tsv",
        provider="stub",
        transcript_path=repo_root / "fixtures" / "transcripts" / "buying_a_car_postcuration.json",
        fixed_time=FIXED_TIME,
    )
