"""Regenerate committed fixtures and golden traces.

Run from the repository root:

    python tools/make_fixtures.py

Outputs are byte-stable; rerunning on an unchanged tree is a no-op. Golden
files freeze the behavior of the deterministic stub pipelines; regenerate
them only when a deliberate behavior change is made, and review the diff.
"""

from __future__ import annotations

import json
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(REPO / "src"))
sys.path.insert(0, str(REPO))

from scriptforge.linking import ingest_kb, rerank, search  # noqa: E402
from scriptforge.model import Provenance, Script  # noqa: E402
from scriptforge.ontology import load_ontology  # noqa: E402
from scriptforge.recommend import mixed_initiative_next, recommend_missing  # noqa: E402
from scriptforge.service.storage import ScriptDocument, dumps_document, save_script  # noqa: E402
from scriptforge.similarity import ScriptedGenerator, TrigramEmbedder, cosine  # noqa: E402
from scriptforge.suggest import suggest_types  # noqa: E402

FIXED_TIME = "2026-02-10T12:00:00+00:00"
ONTOLOGY = load_ontology(REPO / "ontology" / "project.yaml")
EMBEDDER = TrigramEmbedder()


# --- transcripts ------------------------------------------------------------

POSTCURATION_TRANSCRIPT = {
    "entries": [
        {
            "match": {"kind": "endswith", "value": " 4."},
            "continuations": [
                "Take a test drive 5. Negotiate the price 6. Sign the contract",
                "Go to a car dealership 5. Take a test drive",
                "buy",
                "Sign the papers!!!### 5. Drive home",
                "5. Arrange financing with your bank",
                "Decide on your budget 5. Check the vehicle history report",
                "Check the vehicle history reports",
                "7. skipped ahead",
                "Compare prices at other dealerships 5. Trade in your old car",
                "Get an insurance quote 5. Register the car with the motor vehicle department",
                "Schedule a mechanic inspection 5. Read the warranty terms",
                "Negotiate the price",
                "Pick up the license plates 5. Drive the car home",
                "Obtain a loan preapproval 5. Review the purchase agreement",
                "Inspect the car for damage",
            ],
        }
    ]
}

MIXED_TRANSCRIPT = {
    "entries": [
        {
            "match": {"kind": "endswith", "value": " 2."},
            "continuations": [
                "Decide on your budget 3. Identify car models you can afford",
                "Research car models online 3. Compare prices",
                "buy",
                "Decide on your budget",
                "Set a price range for the purchase",
            ],
        },
        {
            "match": {"kind": "endswith", "value": " 3."},
            "continuations": [
                "Identify car models you can afford 4. Take a test drive",
                "Visit local dealerships 4. Talk to a salesperson",
                "Identify your needs",
                "Talk to a salesperson about options",
                "",
            ],
        },
    ]
}


# --- the five sample scripts --------------------------------------------------
# (script id, code, name, description, self-reported time,
#  events [(text, type)], order edges by event index (1-based),
#  variables [(label, entity type, kb link or None, [(event index, role)])],
#  post-curation log [(text, accepted?)])

FIVE_SCRIPTS = [
    (
        "evac", "EVAC", "Planning and Managing an Evacuation",
        "Moving a population out of harm's way before and during a disaster, from the first alert to the all-clear.",
        "1.5 hrs",
        [
            ("monitor alerts about the approaching hazard", "Cognitive.Inspection"),
            ("assess the risk to the population", "Cognitive.Research"),
            ("decide to order an evacuation", "Cognitive.Decide"),
            ("plan evacuation routes", "Cognitive.Plan"),
            ("identify shelter locations", "Cognitive.IdentifyCategorize"),
            ("announce the evacuation order", "Contact.PublicStatementBroadcast"),
            ("notify emergency services", "Contact.RequestCommand"),
            ("direct staff to open the shelters", "Contact.RequestCommand"),
            ("arrange transportation for residents", "Movement.Transportation"),
            ("evacuate residents along the planned routes", "Movement.Transportation"),
            ("assist residents with special needs", "Movement.Transportation"),
            ("direct traffic away from the hazard area", "Control.ImpedeInterfereWith"),
            ("track the progress of the evacuation", "Cognitive.Inspection"),
            ("register evacuees at the shelters", "Cognitive.IdentifyCategorize"),
            ("monitor conditions until the hazard passes", "Cognitive.Inspection"),
            ("announce that it is safe to return", "Contact.PublicStatementBroadcast"),
        ],
        [(1, 2), (2, 3), (3, 4), (3, 5), (4, 6), (5, 6), (6, 7), (7, 8), (8, 9),
         (9, 10), (10, 11), (10, 12), (10, 13), (11, 14), (13, 15), (14, 15), (15, 16)],
        [
            ("evacuation manager", "PER", None, [
                (1, "Inspector"), (2, "Researcher"), (3, "Decider"), (4, "Planner"),
                (5, "Identifier"), (6, "Communicator"), (7, "Communicator"),
                (8, "Communicator"), (9, "Transporter"), (10, "Transporter"),
                (11, "Transporter"), (12, "Impeder"), (13, "Inspector"),
                (14, "Identifier"), (15, "Inspector"), (16, "Communicator"),
            ]),
            ("evacuee", "PER", "Q63247398", [
                (2, "Subject"), (6, "Recipient"), (9, "PassengerArtifact"),
                (10, "PassengerArtifact"), (11, "PassengerArtifact"), (12, "Target"),
                (13, "InspectedEntity"), (14, "IdentifiedObject"),
                (15, "InspectedEntity"), (16, "Recipient"),
            ]),
        ],
        [
            ("set up a public information hotline", True),
            ("coordinate with neighboring jurisdictions", True),
            ("stage fuel for the evacuation vehicles", True),
            ("schedule shifts for shelter staff", True),
            ("reassure residents about their pets", False),
            ("rehearse the evacuation with a drill", False),
            ("close schools in the affected area", False),
            ("distribute maps of the evacuation routes", False),
        ],
    ),
    (
        "food", "FOOD", "Ordering Food at a Restaurant",
        "A sit-down restaurant visit from arriving hungry to settling the bill.",
        "0.5 hr",
        [
            ("travel to the restaurant", "Movement.Transportation"),
            ("wait to be seated by the host", "Contact.Contact"),
            ("review the menu", "Cognitive.Inspection"),
            ("decide what to order", "Cognitive.Decide"),
            ("place an order with the waiter", "Contact.RequestCommand"),
            ("eat the food", "Life.Consume"),
            ("ask for the check", "Contact.RequestCommand"),
            ("pay the bill", "Transaction.TransferMoney"),
            ("leave a tip for the waiter", "Transaction.Donation"),
        ],
        [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (7, 9)],
        [
            ("diner", "PER", None, [
                (1, "PassengerArtifact"), (2, "Participant"), (4, "Decider"),
                (5, "Communicator"), (6, "Consumer"), (7, "Communicator"),
                (8, "Giver"), (9, "Giver"),
            ]),
            ("waiter", "PER", "Q157195", [
                (5, "Recipient"), (7, "Recipient"), (8, "Recipient"), (9, "Recipient"),
            ]),
            ("restaurant", "FAC", "Q11707", [(1, "Destination"), (2, "Place")]),
            ("menu", "INF", "Q6501349", [(3, "InspectedEntity"), (4, "Option")]),
            ("food", "COM", None, [(5, "Topic"), (6, "ConsumedThing")]),
        ],
        [
            ("make a reservation in advance", True),
            ("ask about the daily specials", True),
            ("order drinks before the meal", True),
            ("check the bill for mistakes", False),
            ("take leftovers home in a box", False),
            ("thank the host on the way out", False),
            ("share dishes with the table", False),
            ("ask for dietary accommodations", False),
            ("order dessert after the main course", False),
            ("split the bill with companions", False),
            ("provide feedback about the meal", False),
            ("wash your hands before eating", False),
        ],
    ),
    (
        "job", "JOB", "Finding and Starting a New Job",
        "The search for new employment, from polishing a resume through the first day.",
        "1 hr",
        [
            ("update your resume", "ArtifactExistence.ManufactureAssemble"),
            ("search for open positions", "Cognitive.Research"),
            ("notify your network that you are looking for a job", "Contact.PublicStatementBroadcast"),
            ("research companies of interest", "Cognitive.Research"),
            ("write a cover letter", "ArtifactExistence.ManufactureAssemble"),
            ("submit job applications", "Contact.RequestCommand"),
            ("prepare for interviews", "Cognitive.Plan"),
            ("attend the interview", "Contact.Contact"),
            ("send a thank you note", "Contact.Contact"),
            ("receive a job offer", "Contact.Contact"),
            ("negotiate the salary", "Contact.Negotiate"),
            ("accept the offer", "Cognitive.Decide"),
            ("sign the employment contract", "Contact.Negotiate"),
            ("give notice at your current job", "Personnel.EndPosition"),
            ("attend onboarding training", "Cognitive.TeachingTrainingLearning"),
            ("start the new position", "Personnel.StartPosition"),
        ],
        [(1, 2), (1, 3), (2, 4), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9),
         (9, 10), (10, 11), (11, 12), (12, 13), (13, 14), (14, 15), (15, 16)],
        [
            ("job seeker", "PER", "Q703534", [
                (1, "Manufacturer"), (2, "Researcher"), (3, "Communicator"),
                (4, "Researcher"), (5, "Manufacturer"), (6, "Communicator"),
                (7, "Planner"), (8, "Participant"), (9, "Participant"),
                (10, "Participant"), (11, "Participant"), (12, "Decider"),
                (13, "Participant"), (14, "Employee"), (15, "Learner"),
                (16, "Employee"),
            ]),
            ("employer", "ORG", "Q3053337", [
                (4, "Subject"), (6, "Recipient"), (8, "Counterparty"),
                (10, "Counterparty"), (11, "Counterparty"), (13, "Counterparty"),
                (15, "Teacher"), (16, "PlaceOfEmployment"),
            ]),
        ],
        [
            ("build a portfolio of work samples", False),
            ("practice common interview questions", False),
            ("set up job alerts on hiring sites", False),
            ("follow up on submitted applications", False),
            ("ask for letters of recommendation", False),
            ("review the benefits package", False),
            ("take a skills assessment", False),
            ("attend a career fair", False),
            ("update your professional profiles", False),
            ("research typical salaries for the role", False),
            ("plan your commute to the new office", False),
        ],
    ),
    (
        "med", "MED", "Obtaining Medical Treatment",
        "Getting care for an illness, from noticing symptoms to completing treatment.",
        "0.5 hr",
        [
            ("notice symptoms of an illness", "Cognitive.IdentifyCategorize"),
            ("schedule an appointment with a doctor", "Contact.RequestCommand"),
            ("travel to the clinic", "Movement.Transportation"),
            ("receive a diagnosis from the doctor", "Medical.Diagnosis"),
            ("undergo the prescribed treatment", "Medical.Intervention"),
        ],
        [(1, 2), (2, 3), (3, 4), (4, 5)],
        [
            ("patient", "PER", "Q181600", [
                (1, "Identifier"), (2, "Communicator"), (3, "PassengerArtifact"),
                (4, "Patient"), (5, "Patient"),
            ]),
            ("doctor", "PER", "Q39631", [
                (2, "Recipient"), (4, "Treater"), (5, "Treater"),
            ]),
            ("clinic", "FAC", "Q1774898", [
                (3, "Destination"), (4, "Place"), (5, "Place"),
            ]),
        ],
        [
            ("check your insurance coverage", True),
            ("write down your symptoms beforehand", True),
            ("pick up the prescription at the pharmacy", True),
            ("schedule a follow-up appointment", True),
            ("ask about side effects of the treatment", True),
            ("bring your medical history to the visit", False),
            ("arrange time off work for the appointment", False),
            ("get a second opinion on the diagnosis", False),
            ("complete the intake paperwork", False),
            ("fast before the blood test", False),
            ("arrange a ride home after the procedure", False),
            ("pay the copay at the front desk", False),
        ],
    ),
    (
        "merger", "MERGER", "Corporate Merger or Acquisition",
        "One company acquiring another, from target screening to post-close integration.",
        "2.5 hrs",
        [
            ("identify an acquisition target", "Cognitive.IdentifyCategorize"),
            ("sign a confidentiality agreement", "Contact.Negotiate"),
            ("conduct due diligence on the target", "Cognitive.Research"),
            ("value the target company", "Cognitive.Research"),
            ("negotiate the terms of the deal", "Contact.Negotiate"),
            ("secure financing for the acquisition", "Transaction.TransferMoney"),
            ("draft the merger agreement", "ArtifactExistence.ManufactureAssemble"),
            ("obtain board approval", "Cognitive.Decide"),
            ("announce the merger publicly", "Contact.PublicStatementBroadcast"),
            ("obtain regulatory approval", "Cognitive.Inspection"),
            ("close the transaction", "Transaction.ExchangeBuySell"),
            ("execute the integration plan", "Cognitive.Plan"),
        ],
        [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 10),
         (10, 11), (11, 12)],
        [
            ("acquirer", "ORG", "Q783794", [
                (1, "Identifier"), (2, "Participant"), (3, "Researcher"),
                (5, "Participant"), (6, "Recipient"), (7, "Manufacturer"),
                (8, "Decider"), (9, "Communicator"), (11, "Buyer"), (12, "Planner"),
            ]),
            ("target company", "ORG", None, [
                (1, "IdentifiedObject"), (2, "Counterparty"), (3, "Subject"),
                (4, "Subject"), (5, "Counterparty"), (10, "InspectedEntity"),
                (11, "Seller"),
            ]),
            ("investment bank", "ORG", "Q319845", [
                (2, "Mediator"), (4, "Researcher"), (5, "Mediator"), (6, "Giver"),
            ]),
        ],
        [
            ("retain outside legal counsel", True),
            ("notify major shareholders privately", True),
            ("prepare a press release for the close", False),
            ("set up a virtual data room", False),
            ("plan the employee retention packages", False),
            ("brief the antitrust regulators early", False),
            ("agree on the breakup fee", False),
            ("audit the target's pension liabilities", False),
            ("align the two brand strategies", False),
            ("schedule the shareholder vote", False),
            ("select the integration steering committee", False),
            ("negotiate executive employment terms", False),
        ],
    ),
]

BUYING_A_CAR = (
    "buying-a-car", "CAR", "buying a car",
    "Buying a car takes research, budgeting, and paperwork before the keys change hands.",
    None,
    [
        ("Identify your needs", "Cognitive.IdentifyCategorize"),
        ("Decide on your budget", "Cognitive.Decide"),
        ("Identify car models you can afford", "Cognitive.IdentifyCategorize"),
    ],
    [(1, 2), (2, 3)],
    [],
    [],
)


def build_document(spec) -> ScriptDocument:
    sid, code, name, description, time_spent, events, edges, variables, post_log = spec
    script = Script(id=sid, name=name, description=description)
    ids = []
    for text, type_id in events:
        ev = script.add_event(text, event_type=type_id, created_at=FIXED_TIME, ontology=ONTOLOGY)
        ids.append(ev.id)
    for u, v in edges:
        script.add_before(ids[u - 1], ids[v - 1])
    for label, entity_type, kb_link, bindings in variables:
        var = script.create_variable(
            label, entity_type, [(ids[i - 1], role) for i, role in bindings], ONTOLOGY
        )
        if kb_link:
            script.set_kb_link(var.id, kb_link)

    doc = ScriptDocument(script=script, code=code, self_reported_time=time_spent)
    for ev in script.events:
        suggestions = suggest_types(ev.text, ONTOLOGY, EMBEDDER, k=5)
        doc.type_choices.append({
            "event": ev.id,
            "text": ev.text,
            "gold": ev.event_type,
            "predictions": [s.type_id for s in suggestions],
        })
    for i, (text, accepted) in enumerate(post_log, start=1):
        doc.post_curation.append({
            "batch": 1,
            "id": f"g{i}",
            "text": text,
            "decision": "accepted" if accepted else "rejected",
            "edited_text": None,
        })
    return doc


def write_json(path: Path, payload) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n", encoding="utf-8")


def main() -> None:
    fixtures = REPO / "fixtures"

    write_json(fixtures / "transcripts" / "buying_a_car_postcuration.json", POSTCURATION_TRANSCRIPT)
    write_json(fixtures / "transcripts" / "buying_a_car_mixed.json", MIXED_TRANSCRIPT)

    # script documents
    docs = {}
    for spec in [*FIVE_SCRIPTS, BUYING_A_CAR]:
        doc = build_document(spec)
        docs[doc.script.id] = doc
        save_script(doc, fixtures / "scripts" / f"{doc.script.id.replace('-', '_')}.json", ONTOLOGY)

    # golden: stub type rankings for all events of the five scripts
    rankings = []
    for sid, *_ in FIVE_SCRIPTS:
        doc = docs[sid]
        for ev in doc.script.events:
            suggestions = suggest_types(ev.text, ONTOLOGY, EMBEDDER, k=5)
            rankings.append({
                "script": sid,
                "event": ev.id,
                "text": ev.text,
                "gold": ev.event_type,
                "ranking": [{"type_id": s.type_id, "score": s.score} for s in suggestions],
            })
    assert len(rankings) == 58, f"expected 58 events, got {len(rankings)}"
    write_json(fixtures / "golden" / "type_rankings.json", rankings)

    # golden: post-curation filter chain on the buying-a-car transcript
    generator = ScriptedGenerator.from_file(fixtures / "transcripts" / "buying_a_car_postcuration.json")
    car = docs["buying-a-car"]
    suggestions, report = recommend_missing(car.script, generator, samples=15)
    write_json(fixtures / "golden" / "filter_golden.json", {
        "kept": [s.text for s in suggestions],
        "report": report.to_dict(),
    })

    # golden: first mixed-initiative option set for the one-step prefix
    mixed_gen = ScriptedGenerator.from_file(fixtures / "transcripts" / "buying_a_car_mixed.json")
    prefix = Script(id="car-prefix", name=car.script.name, description=car.script.description)
    prefix.add_event("Identify your needs", created_at=FIXED_TIME)
    options, mixed_report = mixed_initiative_next(prefix, mixed_gen)
    write_json(fixtures / "golden" / "mixed_golden.json", {
        "options": [o.text for o in options],
        "report": mixed_report.to_dict(),
    })

    # golden: retrieval and rerank traces
    kb = ingest_kb(fixtures / "kb" / "wikidata_subset.tsv")
    traces = {}
    for query in ("automobile", "car dealership", "buyer"):
        hits = search(kb, query, limit=5)
        reranked = rerank(query, hits, EMBEDDER)
        traces[query] = [
            {"qid": c.entry.qid, "retrieval_score": c.retrieval_score,
             "rerank_score": c.rerank_score, "rank": c.rank}
            for c in reranked
        ]
    write_json(fixtures / "golden" / "search_rerank.json", traces)

    # golden: stub embedding cosine pair
    pair = cosine(EMBEDDER.embed_one("buy the car"), EMBEDDER.embed_one("purchase the car"))
    write_json(fixtures / "golden" / "stub_cosine.json", {"buy the car|purchase the car": pair})

    # synthetic decision logs (counts chosen to mirror the documented rates)
    mixed_rows = []
    for i in range(105):
        accepted = i % 21 < 10
        mixed_rows.append({
            "set": i + 1,
            "outcome": "accepted" if accepted else "rejected_all",
            "chosen_index": 0 if accepted else None,
        })
    assert sum(1 for r in mixed_rows if r["outcome"] == "accepted") == 50
    post_rows = [
        {"id": f"g{i + 1}", "text": f"suggested step {i + 1}",
         "decision": "accepted" if i < 9 else "rejected"}
        for i in range(40)
    ]
    logs_dir = fixtures / "logs"
    logs_dir.mkdir(parents=True, exist_ok=True)
    (logs_dir / "mixed_initiative_105.jsonl").write_text(
        "".join(json.dumps(r, sort_keys=True) + "\n" for r in mixed_rows), encoding="utf-8")
    (logs_dir / "post_curation_40.jsonl").write_text(
        "".join(json.dumps(r, sort_keys=True) + "\n" for r in post_rows), encoding="utf-8")

    # golden: report table over the five scripts
    from scriptforge.evaluation import RankedRecord
    from scriptforge.evaluation.report import render_report_table, script_report
    reports = []
    for sid, *_ in FIVE_SCRIPTS:
        doc = docs[sid]
        records = [RankedRecord.from_dict(r) for r in doc.type_choices]
        reports.append(script_report(doc.script, records, doc.post_curation,
                                     code=doc.code, self_reported_time=doc.self_reported_time))
    (fixtures / "golden" / "report_table.txt").write_text(render_report_table(reports), encoding="utf-8")

    # golden: end-to-end walkthrough document
    from fastapi.testclient import TestClient
    from scriptforge.service.app import create_app
    from tools.walkthrough import run_walkthrough, walkthrough_config

    with tempfile.TemporaryDirectory() as tmp:
        config = walkthrough_config(Path(tmp), REPO)
        app = create_app(config)
        with TestClient(app) as client:
            sid = run_walkthrough(client)
        golden_bytes = (Path(tmp) / f"{sid}.json").read_text(encoding="utf-8")
    (fixtures / "golden" / "walkthrough_document.json").write_text(golden_bytes, encoding="utf-8")

    print("fixtures written under", fixtures)


if __name__ == "__main__":
    main()
