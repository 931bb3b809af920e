"""Batch command line: validate scripts, produce reports, run the
suggestion pipelines offline, and start the curation service.

Commands print JSON (or a fixed-shape table for ``report``) on stdout;
failures print a machine-readable error object on stderr and exit 1;
usage errors exit 2.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from scriptforge.errors import InvalidRequest, ScriptForgeError
from scriptforge.evaluation import RankedRecord
from scriptforge.evaluation.report import render_report_table, script_report
from scriptforge.linking import ingest_kb, rerank, search
from scriptforge.model import export_graph, validate_script
from scriptforge.ontology import load_ontology
from scriptforge.recommend import recommend_missing
from scriptforge.service.app import ServiceConfig, build_providers
from scriptforge.service.storage import load_script

DEFAULT_ONTOLOGY = Path("ontology/project.yaml")
DEFAULT_KB = Path("fixtures/kb/wikidata_subset.tsv")


def _fail(exc: ScriptForgeError) -> None:
    click.echo(json.dumps({"error": exc.payload()}, sort_keys=True), err=True)
    sys.exit(1)


def _dump(payload: object) -> None:
    click.echo(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False))


class Context:
    def __init__(self, ontology: Path, kb: Path | None, provider: str,
                 transcript: Path | None, embed_url: str | None,
                 generate_url: str | None, seed: int | None) -> None:
        self.ontology_path = ontology
        self.kb_path = kb
        self.provider = provider
        self.transcript = transcript
        self.embed_url = embed_url
        self.generate_url = generate_url
        self.seed = seed
        self._ontology = None

    @property
    def ontology(self):
        if self._ontology is None:
            self._ontology = load_ontology(self.ontology_path)
        return self._ontology

    def providers(self):
        config = ServiceConfig(
            workspace=Path("."),
            ontology_path=self.ontology_path,
            kb_path=self.kb_path,
            provider=self.provider,  # type: ignore[arg-type]
            transcript_path=self.transcript,
            embed_url=self.embed_url,
            generate_url=self.generate_url,
            seed=self.seed,
        )
        return build_providers(config)


@click.group()
@click.option("--ontology", type=click.Path(path_type=Path), default=DEFAULT_ONTOLOGY,
              show_default=True, help="Ontology document.")
@click.option("--kb", type=click.Path(path_type=Path), default=None,
              help=f"Knowledge-base fixture (default: {DEFAULT_KB} when present).")
@click.option("--provider", type=click.Choice(["stub", "remote"]), default="stub",
              show_default=True, help="Embedding/generation backend.")
@click.option("--transcript", type=click.Path(path_type=Path), default=None,
              help="Canned generation transcript for the stub provider.")
@click.option("--embed-url", default=None, help="Remote /embed base URL.")
@click.option("--generate-url", default=None, help="Remote /generate base URL.")
@click.option("--seed", type=int, default=None, help="Seed forwarded to remote generation.")
@click.pass_context
def main(ctx: click.Context, ontology: Path, kb: Path | None, provider: str,
         transcript: Path | None, embed_url: str | None, generate_url: str | None,
         seed: int | None) -> None:
    """Interactive script curation: batch tools and service."""
    if kb is None and DEFAULT_KB.exists():
        kb = DEFAULT_KB
    ctx.obj = Context(ontology, kb, provider, transcript, embed_url, generate_url, seed)


@main.command()
@click.argument("scripts", nargs=-1, required=True, type=click.Path(path_type=Path))
@click.pass_obj
def validate(ctx: Context, scripts: tuple[Path, ...]) -> None:
    """Check model invariants of script documents."""
    failed = False
    results = {}
    for path in scripts:
        try:
            doc = load_script(path, check_invariants=False)
        except ScriptForgeError as exc:
            _fail(exc)
            return
        problems = validate_script(doc.script, ctx.ontology)
        results[str(path)] = {"valid": not problems, "violations": problems}
        failed = failed or bool(problems)
    _dump(results)
    sys.exit(1 if failed else 0)


@main.command()
@click.argument("inputs", nargs=-1, required=True, type=click.Path(path_type=Path))
@click.pass_obj
def report(ctx: Context, inputs: tuple[Path, ...]) -> None:
    """Characteristics table for script documents; .jsonl decision or
    ranked-record logs are summarized below the table."""
    from scriptforge.evaluation import acceptance_rate, edited_set_count, mrr, top_k_accuracy
    from scriptforge.evaluation.logs import read_jsonl

    try:
        reports = []
        log_lines = []
        for path in inputs:
            if path.suffix == ".jsonl":
                rows = read_jsonl(path)
                if rows and "outcome" in rows[0]:
                    rate = acceptance_rate(rows, "mixed_initiative")
                    log_lines.append(
                        f"{path}: {len(rows)} mixed-initiative sets, acceptance "
                        f"{rate:.3f}, {edited_set_count(rows)} edited"
                    )
                elif rows and "decision" in rows[0]:
                    rate = acceptance_rate(rows, "post_curation")
                    log_lines.append(
                        f"{path}: {len(rows)} suggestions offered, acceptance {rate:.3f}"
                    )
                else:
                    records = [RankedRecord.from_dict(r) for r in rows]
                    log_lines.append(
                        f"{path}: {len(records)} ranked records, top-1/3/5 "
                        f"{top_k_accuracy(records, 1):.3f}/{top_k_accuracy(records, 3):.3f}/"
                        f"{top_k_accuracy(records, 5):.3f}, mrr@3 {mrr(records, 3):.3f}"
                    )
            else:
                doc = load_script(path)
                records = [RankedRecord.from_dict(r) for r in doc.type_choices]
                reports.append(
                    script_report(doc.script, records, doc.post_curation,
                                  code=doc.code, self_reported_time=doc.self_reported_time)
                )
        if reports:
            click.echo(render_report_table(reports), nl=False)
        for line in log_lines:
            click.echo(line)
    except ScriptForgeError as exc:
        _fail(exc)


@main.command("suggest-types")
@click.argument("script", type=click.Path(path_type=Path))
@click.option("--k", type=int, default=3, show_default=True)
@click.pass_obj
def suggest_types_cmd(ctx: Context, script: Path, k: int) -> None:
    """Rank ontology event types for every event of a script."""
    from scriptforge.suggest import suggest_types

    try:
        doc = load_script(script)
        embedder, _ = ctx.providers()
        out = []
        for ev in doc.script.events:
            suggestions = suggest_types(ev.text, ctx.ontology, embedder, k=k)
            out.append({
                "event": ev.id,
                "text": ev.text,
                "suggestions": [
                    {"type_id": s.type_id, "score": s.score, "rank": s.rank}
                    for s in suggestions
                ],
            })
        _dump(out)
    except ScriptForgeError as exc:
        _fail(exc)


@main.command()
@click.argument("script", type=click.Path(path_type=Path))
@click.option("--limit", type=int, default=5, show_default=True)
@click.pass_obj
def link(ctx: Context, script: Path, limit: int) -> None:
    """Retrieve and rerank knowledge-base candidates for each variable."""
    try:
        if ctx.kb_path is None:
            raise InvalidRequest("no knowledge base configured (--kb)")
        doc = load_script(script)
        index = ingest_kb(ctx.kb_path)
        embedder, _ = ctx.providers()
        out = []
        for var in doc.script.variables:
            hits = search(index, var.label, limit=limit)
            candidates = rerank(var.label, hits, embedder) if hits else []
            out.append({
                "variable": var.id,
                "label": var.label,
                "current_link": var.kb_link,
                "candidates": [
                    {
                        "qid": c.entry.qid,
                        "label": c.entry.label,
                        "description": c.entry.description,
                        "retrieval_score": c.retrieval_score,
                        "rerank_score": c.rerank_score,
                        "rank": c.rank,
                    }
                    for c in candidates
                ],
            })
        _dump(out)
    except ScriptForgeError as exc:
        _fail(exc)


@main.command()
@click.argument("script", type=click.Path(path_type=Path))
@click.option("--samples", type=int, default=15, show_default=True)
@click.pass_obj
def recommend(ctx: Context, script: Path, samples: int) -> None:
    """Suggest possibly overlooked events for a finished script."""
    try:
        doc = load_script(script)
        _, generator = ctx.providers()
        prior = [e["text"] for e in doc.post_curation]
        suggestions, rep = recommend_missing(
            doc.script, generator, samples=samples, prior_suggestions=prior
        )
        _dump({
            "suggestions": [s.to_dict() for s in suggestions],
            "report": rep.to_dict(),
        })
    except ScriptForgeError as exc:
        _fail(exc)


@main.command("export-graph")
@click.argument("script", type=click.Path(path_type=Path))
@click.pass_obj
def export_graph_cmd(ctx: Context, script: Path) -> None:
    """Graph document (reduced edges, argument annotations) for display."""
    try:
        doc = load_script(script)
        _dump(export_graph(doc.script))
    except ScriptForgeError as exc:
        _fail(exc)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8400, show_default=True)
@click.option("--workspace", type=click.Path(path_type=Path), default=Path("workspace"),
              show_default=True, help="Directory holding one JSON file per script.")
@click.option("--fixed-time", default=None, help="Freeze timestamps (for reproducible demos).")
@click.pass_obj
def serve(ctx: Context, host: str, port: int, workspace: Path, fixed_time: str | None) -> None:
    """Run the curation service consumed by the web UI."""
    import uvicorn

    from scriptforge.service.app import create_app

    config = ServiceConfig(
        workspace=workspace,
        ontology_path=ctx.ontology_path,
        kb_path=ctx.kb_path,
        provider=ctx.provider,  # type: ignore[arg-type]
        transcript_path=ctx.transcript,
        embed_url=ctx.embed_url,
        generate_url=ctx.generate_url,
        seed=ctx.seed,
        fixed_time=fixed_time,
    )
    uvicorn.run(create_app(config), host=host, port=port)


if __name__ == "__main__":
    main()
