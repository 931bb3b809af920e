"""HTTP curation service: scripts, suggestions, links, recommendations.

Thin adapters over the core modules. Every mutation carries the client's
``expected_version``; per-script locks linearize writes, so observed
version numbers are gap-free. Generated artifacts that the curator reacts
to later (link-candidate sets, recommendation batches, next-step option
sets) are version-stamped, and decisions referencing a superseded stamp
are rejected as stale.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Literal

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from scriptforge.errors import (
    InvalidRequest,
    ProviderUnavailable,
    ScriptForgeError,
    StaleCandidate,
)
from scriptforge.evaluation.report import render_report_table, script_report
from scriptforge.evaluation import RankedRecord
from scriptforge.linking import CandidateSet, KBIndex, decide_link, ingest_kb, rerank, search
from scriptforge.model import Provenance, export_graph, validate_script
from scriptforge.ontology import Ontology, load_ontology
from scriptforge.recommend import (
    DEFAULT_MAX_LENGTH,
    DEFAULT_MIXED_OPTIONS,
    DEFAULT_MIXED_SAMPLES,
    DEFAULT_POST_CURATION_SAMPLES,
    EventSuggestion,
    SuggestionDecision,
    mixed_initiative_next,
    recommend_missing,
)
from scriptforge.service.storage import ScriptDocument, Workspace
from scriptforge.similarity import (
    EmbeddingProvider,
    GenerationProvider,
    RemoteEmbeddingProvider,
    RemoteGenerationProvider,
    ScriptedGenerator,
    TrigramEmbedder,
)
from scriptforge.suggest import CandidateEmbeddingCache, TypeSuggestion, record_choice, suggest_types

_STATUS_BY_CODE = {
    "unknown_script": 404,
    "unknown_event": 404,
    "unknown_variable": 404,
    "unknown_type": 404,
    "version_conflict": 409,
    "stale_candidate": 409,
    "provider_unavailable": 503,
    "transcript_miss": 503,
    "schema_version_mismatch": 400,
    "corrupt_document": 400,
}


class _NoGenerator:
    """Placeholder when no generation backend is configured."""

    identity = "none"

    def generate(self, prompt: str, samples: int, max_length: int) -> list[str]:
        raise ProviderUnavailable("no generation provider configured")


@dataclass
class ServiceConfig:
    workspace: Path
    ontology_path: Path
    kb_path: Path | None = None
    provider: Literal["stub", "remote"] = "stub"
    transcript_path: Path | None = None
    embed_url: str | None = None
    generate_url: str | None = None
    embed_dim: int = 256
    seed: int | None = None
    fixed_time: str | None = None
    post_curation_samples: int = DEFAULT_POST_CURATION_SAMPLES
    mixed_options: int = DEFAULT_MIXED_OPTIONS
    mixed_samples: int = DEFAULT_MIXED_SAMPLES
    max_length: int = DEFAULT_MAX_LENGTH
    near_dup_threshold: float = 0.8
    candidate_limit: int = 5


def build_providers(config: ServiceConfig) -> tuple[EmbeddingProvider, GenerationProvider]:
    if config.provider == "remote":
        if not config.embed_url or not config.generate_url:
            raise InvalidRequest("remote provider needs embed_url and generate_url")
        return (
            RemoteEmbeddingProvider(config.embed_url),
            RemoteGenerationProvider(config.generate_url, seed=config.seed),
        )
    embedder = TrigramEmbedder(dim=config.embed_dim)
    if config.transcript_path:
        generator: GenerationProvider = ScriptedGenerator.from_file(config.transcript_path)
    else:
        generator = _NoGenerator()
    return embedder, generator


@dataclass
class _ScriptScratch:
    """Per-script machine-generated state the curator reacts to."""

    link_sets: dict[str, CandidateSet] = field(default_factory=dict)
    link_set_seq: int = 0
    rec_batch: dict[str, EventSuggestion] = field(default_factory=dict)
    rec_batch_order: list[str] = field(default_factory=list)
    rec_batch_seq: int = 0
    option_set: list[EventSuggestion] | None = None
    option_set_seq: int = 0


class ServiceState:
    def __init__(self, config: ServiceConfig) -> None:
        self.config = config
        self.ontology: Ontology = load_ontology(config.ontology_path)
        self.kb: KBIndex | None = ingest_kb(config.kb_path) if config.kb_path else None
        self.embedder, self.generator = build_providers(config)
        self.store = Workspace(config.workspace, ontology=self.ontology)
        self.cache = CandidateEmbeddingCache()
        self._scratch: dict[str, _ScriptScratch] = {}
        self._scratch_guard = threading.Lock()

    def now(self) -> str:
        if self.config.fixed_time:
            return self.config.fixed_time
        from datetime import datetime, timezone

        return datetime.now(timezone.utc).isoformat(timespec="seconds")

    def scratch(self, script_id: str) -> _ScriptScratch:
        with self._scratch_guard:
            sc = self._scratch.get(script_id)
            if sc is None:
                sc = self._scratch[script_id] = _ScriptScratch()
            return sc

    def suggest_for_text(self, text: str, k: int) -> list[TypeSuggestion]:
        return suggest_types(text, self.ontology, self.embedder, k=k, cache=self.cache)


# --- request bodies ---------------------------------------------------------

class CreateScriptIn(BaseModel):
    name: str
    description: str = ""
    code: str | None = None


class AddEventIn(BaseModel):
    text: str
    event_type: str | None = None
    expected_version: int


class RemoveEventIn(BaseModel):
    expected_version: int


class SuggestionIn(BaseModel):
    type_id: str
    score: float
    rank: int


class AssignTypeIn(BaseModel):
    type_id: str | None
    expected_version: int
    suggestions: list[SuggestionIn] | None = None


class OrderBeforeIn(BaseModel):
    before: str
    after: str
    expected_version: int


class AnchorIn(BaseModel):
    selected: list[str]
    pivot: str
    direction: Literal["before", "after"]
    expected_version: int


class BindingIn(BaseModel):
    event_id: str
    role: str


class CreateVariableIn(BaseModel):
    label: str
    entity_type: str
    bindings: list[BindingIn]
    expected_version: int


class BindIn(BaseModel):
    event_id: str
    role: str
    expected_version: int


class LinkDecisionIn(BaseModel):
    set_version: int
    qid: str | None
    expected_version: int


class RecommendIn(BaseModel):
    expected_version: int
    samples: int | None = None


class RecommendationDecisionIn(BaseModel):
    decision: Literal["accepted", "rejected", "edited"]
    edited_text: str | None = None
    expected_version: int


class MixedNextIn(BaseModel):
    expected_version: int


class MixedDecisionIn(BaseModel):
    set_id: int
    outcome: Literal["accepted", "edited", "rejected_all"]
    option_index: int | None = None
    edited_text: str | None = None
    typed_text: str | None = None
    expected_version: int


def _doc_payload(doc: ScriptDocument) -> dict[str, Any]:
    return doc.to_dict()


def _summary(doc: ScriptDocument) -> dict[str, Any]:
    return {
        "id": doc.script.id,
        "name": doc.script.name,
        "description": doc.script.description,
        "version": doc.script.version,
        "events": len(doc.script.events),
        "variables": len(doc.script.variables),
    }


def create_app(config: ServiceConfig) -> FastAPI:
    state = ServiceState(config)
    app = FastAPI(title="scriptforge", version="0.1.0")
    app.state.engine = state

    from fastapi.middleware.cors import CORSMiddleware

    # the web UI is typically served from a different origin than the API
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(ScriptForgeError)
    async def _domain_error(_request: Request, exc: ScriptForgeError) -> JSONResponse:
        status = _STATUS_BY_CODE.get(exc.code, 422)
        return JSONResponse(status_code=status, content={"error": exc.payload()})

    @app.get("/healthz")
    def healthz() -> dict[str, str]:
        return {"status": "ok", "provider": state.config.provider}

    @app.get("/ontology")
    def get_ontology() -> dict[str, Any]:
        ont = state.ontology
        return {
            "version": ont.version,
            "entity_types": [{"id": e.id, "name": e.name} for e in ont.entity_types],
            "event_types": [
                {
                    "id": t.id,
                    "name": t.name,
                    "definition": t.definition,
                    "roles": [
                        {"name": r.name, "entity_types": list(r.entity_types)}
                        for r in t.roles
                    ],
                }
                for t in ont.event_types
            ],
        }

    # --- scripts ------------------------------------------------------------

    @app.post("/scripts")
    def create_script(body: CreateScriptIn) -> dict[str, Any]:
        doc = state.store.create(body.name, body.description, created_at=state.now())
        if body.code:
            doc.code = body.code
            state.store.save(doc)
        return _summary(doc)

    @app.get("/scripts")
    def list_scripts() -> list[dict[str, Any]]:
        return [_summary(state.store.get(sid)) for sid in state.store.list_ids()]

    @app.get("/scripts/{sid}")
    def get_script(sid: str) -> dict[str, Any]:
        return _doc_payload(state.store.get(sid))

    @app.get("/scripts/{sid}/validate")
    def validate(sid: str) -> dict[str, Any]:
        doc = state.store.get(sid)
        problems = validate_script(doc.script, state.ontology)
        return {"valid": not problems, "violations": problems}

    # --- events ---------------------------------------------------------------

    @app.post("/scripts/{sid}/events")
    def add_event(sid: str, body: AddEventIn) -> dict[str, Any]:
        with state.store.mutate(sid, body.expected_version) as doc:
            ev = doc.script.add_event(
                body.text,
                event_type=body.event_type,
                created_at=state.now(),
                ontology=state.ontology,
            )
        return {"event": ev.to_dict(), "version": doc.script.version}

    @app.post("/scripts/{sid}/events/{eid}/remove")
    def remove_event(sid: str, eid: str, body: RemoveEventIn) -> dict[str, Any]:
        with state.store.mutate(sid, body.expected_version) as doc:
            doc.script.remove_event(eid)
        return {"version": doc.script.version}

    @app.get("/scripts/{sid}/events/{eid}/suggest-types")
    def suggest_event_types(sid: str, eid: str, k: int = Query(default=3, ge=1)) -> dict[str, Any]:
        doc = state.store.get(sid)
        ev = doc.script.event(eid)
        suggestions = state.suggest_for_text(ev.text, k)
        return {
            "event": eid,
            "suggestions": [
                {"type_id": s.type_id, "score": s.score, "rank": s.rank} for s in suggestions
            ],
        }

    @app.post("/scripts/{sid}/events/{eid}/type")
    def assign_type(sid: str, eid: str, body: AssignTypeIn) -> dict[str, Any]:
        with state.store.mutate(sid, body.expected_version) as doc:
            ev = doc.script.assign_event_type(eid, body.type_id, state.ontology)
            if body.suggestions is not None and body.type_id is not None:
                shown = [
                    TypeSuggestion(type_id=s.type_id, score=s.score, rank=s.rank)
                    for s in body.suggestions
                ]
                record = record_choice(eid, ev.text, shown, body.type_id, state.ontology)
                doc.type_choices.append(record.to_dict())
        return {"event": ev.to_dict(), "version": doc.script.version}

    # --- order ---------------------------------------------------------------

    @app.post("/scripts/{sid}/order/before")
    def order_before(sid: str, body: OrderBeforeIn) -> dict[str, Any]:
        with state.store.mutate(sid, body.expected_version) as doc:
            doc.script.add_before(body.before, body.after)
        return {"version": doc.script.version}

    @app.post("/scripts/{sid}/order/anchor")
    def order_anchor(sid: str, body: AnchorIn) -> dict[str, Any]:
        with state.store.mutate(sid, body.expected_version) as doc:
            added = doc.script.anchor(body.selected, body.pivot, body.direction)
        return {
            "added": [rel.to_dict() for rel in added],
            "version": doc.script.version,
        }

    @app.get("/scripts/{sid}/order/unordered-pairs")
    def get_unordered(sid: str) -> dict[str, Any]:
        doc = state.store.get(sid)
        return {"pairs": [[a, b] for a, b in doc.script.unordered_pairs()]}

    @app.get("/scripts/{sid}/graph")
    def get_graph(sid: str) -> dict[str, Any]:
        return export_graph(state.store.get(sid).script)

    # --- variables -------------------------------------------------------------

    @app.post("/scripts/{sid}/variables")
    def create_variable(sid: str, body: CreateVariableIn) -> dict[str, Any]:
        with state.store.mutate(sid, body.expected_version) as doc:
            var = doc.script.create_variable(
                body.label,
                body.entity_type,
                [(b.event_id, b.role) for b in body.bindings],
                state.ontology,
            )
        return {"variable": var.to_dict(), "version": doc.script.version}

    @app.post("/scripts/{sid}/variables/{vid}/bind")
    def bind_variable(sid: str, vid: str, body: BindIn) -> dict[str, Any]:
        with state.store.mutate(sid, body.expected_version) as doc:
            doc.script.bind_variable(vid, body.event_id, body.role, state.ontology)
        return {"version": doc.script.version}

    @app.post("/scripts/{sid}/variables/{vid}/unbind")
    def unbind_variable(sid: str, vid: str, body: BindIn) -> dict[str, Any]:
        with state.store.mutate(sid, body.expected_version) as doc:
            deleted = doc.script.unbind_variable(vid, body.event_id, body.role)
        return {"variable_deleted": deleted, "version": doc.script.version}

    # --- knowledge-base linking -------------------------------------------------

    @app.post("/scripts/{sid}/variables/{vid}/link-candidates")
    def link_candidates(sid: str, vid: str) -> dict[str, Any]:
        if state.kb is None:
            raise ProviderUnavailable("no knowledge base configured")
        doc = state.store.get(sid)
        var = doc.script.variable(vid)
        scratch = state.scratch(sid)
        hits = search(state.kb, var.label, limit=state.config.candidate_limit)
        candidates = rerank(var.label, hits, state.embedder) if hits else []
        scratch.link_set_seq += 1
        cset = CandidateSet(
            variable_id=vid,
            label=var.label,
            version=scratch.link_set_seq,
            candidates=tuple(candidates),
        )
        scratch.link_sets[vid] = cset
        return {
            "variable": vid,
            "label": var.label,
            "set_version": cset.version,
            "candidates": [
                {
                    "qid": c.entry.qid,
                    "label": c.entry.label,
                    "description": c.entry.description,
                    "retrieval_score": c.retrieval_score,
                    "rerank_score": c.rerank_score,
                    "rank": c.rank,
                }
                for c in cset.candidates
            ],
        }

    @app.post("/scripts/{sid}/variables/{vid}/link-decision")
    def link_decision(sid: str, vid: str, body: LinkDecisionIn) -> dict[str, Any]:
        scratch = state.scratch(sid)
        cset = scratch.link_sets.get(vid)
        if cset is None:
            raise StaleCandidate(f"no candidate set published for variable {vid!r}")
        with state.store.mutate(sid, body.expected_version) as doc:
            decision = decide_link(cset, body.set_version, body.qid)
            doc.script.set_kb_link(vid, decision.qid)
            doc.link_decisions.append(decision.to_dict())
        return {"qid": decision.qid, "version": doc.script.version}

    # --- recommendations ---------------------------------------------------------

    @app.post("/scripts/{sid}/recommendations")
    def recommendations(sid: str, body: RecommendIn) -> dict[str, Any]:
        scratch = state.scratch(sid)
        with state.store.mutate(sid, body.expected_version) as doc:
            prior = [e["text"] for e in doc.post_curation]
            suggestions, report = recommend_missing(
                doc.script,
                state.generator,
                samples=body.samples or state.config.post_curation_samples,
                max_length=state.config.max_length,
                prior_suggestions=prior,
                threshold=state.config.near_dup_threshold,
            )
            scratch.rec_batch_seq += 1
            scratch.rec_batch = {s.id: s for s in suggestions}
            scratch.rec_batch_order = [s.id for s in suggestions]
        return {
            "batch": scratch.rec_batch_seq,
            "suggestions": [s.to_dict() for s in suggestions],
            "report": report.to_dict(),
            "version": doc.script.version,
        }

    @app.post("/scripts/{sid}/recommendations/{sug_id}/decision")
    def recommendation_decision(sid: str, sug_id: str, body: RecommendationDecisionIn) -> dict[str, Any]:
        scratch = state.scratch(sid)
        suggestion = scratch.rec_batch.get(sug_id)
        if suggestion is None:
            raise StaleCandidate(f"no pending suggestion {sug_id!r}; regenerate recommendations")
        if suggestion.decision is not SuggestionDecision.PENDING:
            raise InvalidRequest(f"suggestion {sug_id!r} already decided")
        added_event = None
        with state.store.mutate(sid, body.expected_version) as doc:
            suggestion.decide(SuggestionDecision(body.decision), body.edited_text)
            if suggestion.decision is SuggestionDecision.ACCEPTED:
                added_event = doc.script.add_event(
                    suggestion.text,
                    provenance=Provenance.MACHINE_ACCEPTED,
                    created_at=state.now(),
                )
            elif suggestion.decision is SuggestionDecision.EDITED:
                added_event = doc.script.add_event(
                    suggestion.final_text,
                    provenance=Provenance.MACHINE_EDITED,
                    created_at=state.now(),
                )
            else:
                doc.script.touch()  # a recorded decision mutates the persisted document
            doc.post_curation.append(
                {
                    "batch": scratch.rec_batch_seq,
                    "id": suggestion.id,
                    "text": suggestion.text,
                    "decision": suggestion.decision.value,
                    "edited_text": suggestion.edited_text,
                }
            )
        return {
            "event": added_event.to_dict() if added_event else None,
            "version": doc.script.version,
        }

    # --- mixed-initiative ----------------------------------------------------------

    @app.post("/scripts/{sid}/mixed-initiative/next")
    def mixed_next(sid: str, body: MixedNextIn) -> dict[str, Any]:
        scratch = state.scratch(sid)
        with state.store.mutate(sid, body.expected_version) as doc:
            prior = [e["final_text"] for e in doc.mixed_initiative if e.get("final_text")]
            options, report = mixed_initiative_next(
                doc.script,
                state.generator,
                options_per_set=state.config.mixed_options,
                samples=state.config.mixed_samples,
                max_length=state.config.max_length,
                prior_suggestions=prior,
                threshold=state.config.near_dup_threshold,
            )
            doc.script.touch()  # publishing a set advances the session
            scratch.option_set_seq += 1
            scratch.option_set = options
        return {
            "set_id": scratch.option_set_seq,
            "options": [o.to_dict() for o in options],
            "report": report.to_dict(),
            "version": doc.script.version,
        }

    @app.post("/scripts/{sid}/mixed-initiative/decision")
    def mixed_decision(sid: str, body: MixedDecisionIn) -> dict[str, Any]:
        scratch = state.scratch(sid)
        if scratch.option_set is None or body.set_id != scratch.option_set_seq:
            raise StaleCandidate(
                f"option set {body.set_id} is not the current set for {sid!r}"
            )
        options = scratch.option_set
        added_event = None
        with state.store.mutate(sid, body.expected_version) as doc:
            final_text: str | None = None
            if body.outcome in ("accepted", "edited"):
                if body.option_index is None or not 0 <= body.option_index < len(options):
                    raise InvalidRequest("option_index out of range")
                option = options[body.option_index]
                if body.outcome == "accepted":
                    option.decide(SuggestionDecision.ACCEPTED)
                    final_text = option.text
                    added_event = doc.script.add_event(
                        final_text, provenance=Provenance.MACHINE_ACCEPTED, created_at=state.now()
                    )
                else:
                    option.decide(SuggestionDecision.EDITED, body.edited_text)
                    final_text = option.final_text
                    added_event = doc.script.add_event(
                        final_text, provenance=Provenance.MACHINE_EDITED, created_at=state.now()
                    )
            else:
                if body.typed_text:
                    final_text = body.typed_text.strip()
                    added_event = doc.script.add_event(
                        final_text, provenance=Provenance.CURATOR, created_at=state.now()
                    )
                else:
                    doc.script.touch()
            doc.mixed_initiative.append(
                {
                    "set": body.set_id,
                    "options": [o.text for o in options],
                    "outcome": body.outcome,
                    "chosen_index": body.option_index,
                    "final_text": final_text,
                }
            )
            scratch.option_set = None
        return {
            "event": added_event.to_dict() if added_event else None,
            "version": doc.script.version,
        }

    # --- reports --------------------------------------------------------------------

    @app.get("/scripts/{sid}/report")
    def get_report(sid: str) -> dict[str, Any]:
        doc = state.store.get(sid)
        records = [RankedRecord.from_dict(r) for r in doc.type_choices]
        report = script_report(
            doc.script,
            records,
            doc.post_curation,
            code=doc.code,
            self_reported_time=doc.self_reported_time,
        )
        return report.to_dict()

    @app.get("/report")
    def get_report_all() -> dict[str, Any]:
        reports = []
        for sid in state.store.list_ids():
            doc = state.store.get(sid)
            records = [RankedRecord.from_dict(r) for r in doc.type_choices]
            reports.append(
                script_report(
                    doc.script,
                    records,
                    doc.post_curation,
                    code=doc.code,
                    self_reported_time=doc.self_reported_time,
                )
            )
        return {
            "reports": [r.to_dict() for r in reports],
            "table": render_report_table(reports) if reports else "",
        }

    return app
