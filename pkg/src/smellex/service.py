"""HTTP facade over the bootstrap engine (backs the review UI).

The only mutating inputs are hypothesized patterns, judgments, and cycle
advance; pattern acceptance is always computed server-side from the
judgments and threshold, so no client can bypass the validation loop
(threshold exemption requires the explicit exempt list on advance).
Mutations accept a client-supplied request id and are idempotent under
retry; every mutation is validated and persisted before the response
goes out.  GETs never mutate state.

Advance chains straight into the next cycle so the review loop always
has fresh extracts.
"""

from __future__ import annotations

from typing import Any

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from .bootstrap import BootstrapEngine, ValidationJudgment
from .errors import (
    BootstrapError,
    PatternSyntaxError,
    SmellexError,
)
from .keywords import keyword_scan
from .lexicon import Extract
from .pattern_dsl import (
    PatternRecord,
    capture_class_map,
    parse_pattern,
    render_pattern,
)


class PatternPost(BaseModel):
    source: str
    kind: str = "identification"
    approach: str | None = None
    request_id: str | None = None


class JudgmentPost(BaseModel):
    pattern_id: str
    doc_id: str
    sent_index: int
    label: str
    judge: str
    timestamp: str = ""
    request_id: str | None = None


class AdvancePost(BaseModel):
    exempt_pattern_ids: list[str] = []
    auto_start: bool = True
    request_id: str | None = None


class PreviewPost(BaseModel):
    source: str
    page: int = 0
    page_size: int = 25


def _extract_dict(extract: Extract) -> dict:
    labels = list(extract.span_labels)
    if len(labels) < len(extract.spans):
        labels += ["match"] + ["capture"] * (len(extract.spans) - len(labels) - 1)
    return {
        "doc_id": extract.doc_id,
        "sent_index": extract.sent_index,
        "text": extract.text,
        "source": extract.source,
        "spans": [list(span) for span in extract.spans],
        "span_labels": labels[: len(extract.spans)],
    }


def _candidate_view(engine: BootstrapEngine, record: PatternRecord) -> dict:
    sample = engine.sample_for(record.id)
    judged = {
        (j.doc_id, j.sent_index): j.label for j in engine.judgments_for(record.id)
    }
    extracts = []
    for e in sample:
        d = _extract_dict(e)
        d["judgment"] = judged.get(e.key)
        extracts.append(d)
    return {
        "pattern_id": record.id,
        "source": record.source,
        "canonical": render_pattern(record.ast),
        "kind": record.kind,
        "approach": record.approach,
        "status": record.status,
        "decision": engine.decision(record.id),
        "tallies": engine.tallies(record.id),
        "precision": engine.precision(record.id),
        "exempt": record.exempt,
        "capture_classes": {
            str(k): v for k, v in capture_class_map(record.ast).items()
        },
        "extracts": extracts,
    }


def _idempotent(engine: BootstrapEngine, request_id: str | None, fn):
    if request_id:
        cached = engine.request_log.get(request_id)
        if cached is not None:
            return cached
    result = fn()
    if request_id:
        engine.request_log[request_id] = result
    return result


def create_app(engine: BootstrapEngine) -> FastAPI:
    app = FastAPI(title="smellex review service")

    @app.get("/api/cycle")
    def get_cycle() -> dict:
        draft = None
        if engine.draft is not None:
            draft = {
                "cycle": engine.draft.cycle,
                "lexicon_entries": engine.draft.lexicon_entries,
                "new_unseen_extracts": engine.draft.new_unseen_extracts,
                "hypothesized_patterns": engine.draft.hypothesized_patterns,
                "sifted": engine.draft.sifted,
            }
        return {
            "cycle": engine.cycle,
            "phase": engine.phase,
            "draft": draft,
            "history": [rec.to_dict() for rec in engine.cycles],
        }

    @app.get("/api/extracts")
    def get_extracts(sift: bool = False, page: int = 0, page_size: int = 25) -> dict:
        items = engine.current_extracts
        if sift:
            items = [
                e
                for e in items
                if keyword_scan(
                    engine.harvesting.sentence(e.doc_id, e.sent_index), engine.keywords
                )
            ]
        total = len(items)
        window = items[page * page_size : (page + 1) * page_size]
        return {
            "extracts": [_extract_dict(e) for e in window],
            "page": page,
            "page_size": page_size,
            "total": total,
            "sift": sift,
        }

    @app.post("/api/patterns")
    def post_pattern(body: PatternPost) -> dict:
        def apply() -> dict:
            try:
                record = engine.hypothesize(body.source, body.kind, body.approach)
            except PatternSyntaxError as err:
                raise HTTPException(
                    status_code=400,
                    detail={"message": err.args[0], "column": err.column},
                )
            except BootstrapError as err:
                raise HTTPException(status_code=409, detail=str(err))
            except SmellexError as err:
                raise HTTPException(status_code=400, detail=str(err))
            return _candidate_view(engine, record)

        return _idempotent(engine, body.request_id, apply)

    @app.get("/api/candidates")
    def get_candidates() -> list:
        return [_candidate_view(engine, rec) for rec in engine.current_candidates()]

    @app.post("/api/patterns/preview")
    def preview_pattern(body: PreviewPost) -> dict:
        """Parse a draft pattern and show its matches on the extract page.

        Pure compute: nothing is persisted, so composing is free to poll.
        """
        from .matcher import CompiledPattern, match_sentence as _match
        from .matcher.program import compile_pattern
        from .pattern_dsl import capture_complement_class

        try:
            ast = parse_pattern(body.source)
            program = compile_pattern(ast, engine.groups)
        except PatternSyntaxError as err:
            raise HTTPException(
                status_code=400,
                detail={"message": err.args[0], "column": err.column},
            )
        except SmellexError as err:
            raise HTTPException(status_code=400, detail=str(err))
        classes = {c.index: capture_complement_class(c) for c in ast.captures()}
        compiled = CompiledPattern("draft", program, classes)
        window = engine.current_extracts[
            body.page * body.page_size : (body.page + 1) * body.page_size
        ]
        previews = []
        for extract in window:
            sentence = engine.harvesting.sentence(extract.doc_id, extract.sent_index)
            matches = _match(compiled, sentence)
            if not matches:
                continue
            match = matches[0]
            spans = [list(match.span)] + [list(c.span) for c in match.captures]
            labels = ["match"] + [
                classes.get(c.index) or "capture" for c in match.captures
            ]
            previews.append(
                {
                    "doc_id": extract.doc_id,
                    "sent_index": extract.sent_index,
                    "text": extract.text,
                    "source": "preview",
                    "spans": spans,
                    "span_labels": labels,
                }
            )
        return {
            "canonical": render_pattern(ast),
            "match_count": len(previews),
            "matches": previews,
        }

    @app.post("/api/judgments")
    def post_judgment(body: JudgmentPost) -> dict:
        if body.pattern_id not in engine.patterns:
            raise HTTPException(
                status_code=404, detail="unknown pattern %r" % body.pattern_id
            )

        def apply() -> dict:
            try:
                judgment = ValidationJudgment(
                    body.pattern_id,
                    body.doc_id,
                    body.sent_index,
                    body.label,
                    body.judge,
                    body.timestamp,
                )
                engine.judge(judgment, strict=True)
            except SmellexError as err:
                raise HTTPException(status_code=400, detail=str(err))
            return {
                "pattern_id": body.pattern_id,
                "tallies": engine.tallies(body.pattern_id),
                "precision": engine.precision(body.pattern_id),
                "decision": engine.decision(body.pattern_id),
            }

        return _idempotent(engine, body.request_id, apply)

    @app.post("/api/cycle/advance")
    def post_advance(body: AdvancePost) -> dict:
        def apply() -> dict:
            if engine.phase != "review":
                raise HTTPException(status_code=409, detail="no cycle in progress")
            blocking = [
                pid
                for pid in engine.blocking_candidates()
                if pid not in body.exempt_pattern_ids
            ]
            if blocking:
                raise HTTPException(
                    status_code=409,
                    detail={
                        "message": "candidates still need judgments",
                        "blocking": blocking,
                    },
                )
            try:
                record, extracts = engine.advance(
                    body.exempt_pattern_ids, auto_start=body.auto_start
                )
            except BootstrapError as err:
                raise HTTPException(status_code=409, detail=str(err))
            return {
                "finalized": record.to_dict(),
                "cycle": engine.cycle,
                "phase": engine.phase,
                "new_unseen_extracts": None if extracts is None else len(extracts),
            }

        return _idempotent(engine, body.request_id, apply)

    @app.get("/api/metrics")
    def get_metrics() -> dict:
        growth = [
            {"cycle": rec.cycle, "lexicon_entries": rec.lexicon_entries}
            for rec in engine.cycles
        ]
        growth.append({"cycle": engine.cycle, "lexicon_entries": len(engine.lexicon)})
        metrics: dict[str, Any] = {
            "lexicon_growth": growth,
            "identification_patterns": len(engine.identification_set()),
            "extraction_patterns": len(engine.extraction_set()),
            "pr_curve": None,
            "kappa": None,
            "baseline": None,
        }
        metrics.update(_gold_metrics(engine))
        return metrics

    return app


def _gold_metrics(engine: BootstrapEngine) -> dict:
    """PR curve, baseline and kappa matrix when an evaluation set is wired in."""
    from . import corpus as corpus_mod
    from . import evaluation

    config = engine.config
    gold_path = getattr(config, "gold_path", None)
    eval_path = getattr(config, "evaluation_path", None)
    if not gold_path or not eval_path:
        return {}
    eval_corpus = corpus_mod.load_tagged(eval_path)
    annotations = evaluation.load_gold(gold_path, eval_corpus)
    gold = evaluation.gold_positive(annotations)
    scored = [
        rec
        for rec in engine.identification_set()
        if rec.estimated_precision is not None
    ]
    cutoffs = [i / 20 for i in range(21)]
    points = evaluation.pr_curve(scored, gold, eval_corpus, cutoffs, engine.groups)
    baseline_set = evaluation.keyword_baseline(eval_corpus, engine.keywords)
    b_precision, b_recall = evaluation.precision_recall(
        baseline_set, gold, eval_corpus.universe()
    )
    return {
        "pr_curve": [
            {
                "cutoff": p.cutoff,
                "precision": p.precision,
                "recall": p.recall,
                "active_patterns": p.active_patterns,
            }
            for p in points
        ],
        "baseline": {"precision": b_precision, "recall": b_recall},
        "kappa": evaluation.kappa_matrix(annotations, eval_corpus),
    }


def serve(
    state_dir, port: int = 8000, host: str = "127.0.0.1", ui_dir=None
) -> None:
    """Load the state directory and serve the review API.

    With ui_dir, the built review UI is mounted at / alongside the API.
    """
    import uvicorn

    engine = BootstrapEngine.load(state_dir)
    app = create_app(engine)
    if ui_dir is not None:
        from starlette.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")
    uvicorn.run(app, host=host, port=port)
