from __future__ import annotations

import sys
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parents[1]
if str(REPO_ROOT) not in sys.path:
    sys.path.insert(0, str(REPO_ROOT))  # for tools.walkthrough

FIXTURES = REPO_ROOT / "fixtures"
ONTOLOGY_PATH = REPO_ROOT / "ontology" / "project.yaml"
KB_PATH = FIXTURES / "kb" / "wikidata_subset.tsv"

FIVE_SCRIPT_FILES = {
    "EVAC": FIXTURES / "scripts" / "evac.json",
    "FOOD": FIXTURES / "scripts" / "food.json",
    "JOB": FIXTURES / "scripts" / "job.json",
    "MED": FIXTURES / "scripts" / "med.json",
    "MERGER": FIXTURES / "scripts" / "merger.json",
}
CAR_SCRIPT_FILE = FIXTURES / "scripts" / "buying_a_car.json"


@pytest.fixture(scope="session")
def ontology():
    from scriptforge.ontology import load_ontology

    return load_ontology(ONTOLOGY_PATH)


@pytest.fixture(scope="session")
def embedder():
    from scriptforge.similarity import TrigramEmbedder

    return TrigramEmbedder()


@pytest.fixture(scope="session")
def kb_index():
    from scriptforge.linking import ingest_kb

    return ingest_kb(KB_PATH)


@pytest.fixture()
def car_script():
    from scriptforge.service.storage import load_script

    return load_script(CAR_SCRIPT_FILE).script


@pytest.fixture()
def five_documents():
    from scriptforge.service.storage import load_script

    return {code: load_script(path) for code, path in FIVE_SCRIPT_FILES.items()}


def make_script(ontology=None, n_events: int = 0, name: str = "test script"):
    """Bare script with n untyped events e1..eN."""
    from scriptforge.model import Script

    script = Script(id="s-test", name=name, description="a test script")
    for i in range(n_events):
        script.add_event(f"step number {i + 1}", created_at="2026-02-10T12:00:00+00:00")
    return script
