"""Command-line entry point for headless operation of every pipeline stage.

Exit codes: 0 success, 1 operational error (missing/malformed files,
state violations), 2 usage error.  Data goes to stdout, diagnostics to
stderr.  ``--seed`` controls all randomness, so identical invocations
produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from . import corpus as corpus_mod
from . import evaluation
from .bootstrap import BootstrapConfig, BootstrapEngine
from .errors import SmellexError
from .keywords import load_default_keywords, load_keywords
from .lexicon import DEFAULT_SEED_ENTRIES, LexiconEntry, Single, default_synonym_groups, load_groups
from .matcher import match_corpus, write_matches
from .pattern_dsl import load_patterns


def _fmt(value) -> str:
    if value is None:
        return "NA"
    if isinstance(value, float):
        return "%.6f" % value
    return str(value)


def _emit_rows(rows: list[dict], columns: list[str], fmt: str, out) -> None:
    if fmt == "json":
        json.dump(rows, out, indent=2)
        out.write("\n")
    else:
        out.write("\t".join(columns) + "\n")
        for row in rows:
            out.write("\t".join(_fmt(row.get(col)) for col in columns) + "\n")


def _load_groups_arg(args):
    if getattr(args, "groups", None):
        return load_groups(args.groups)
    return default_synonym_groups(_load_keywords_arg(args))


def _load_keywords_arg(args):
    if getattr(args, "keywords", None):
        return load_keywords(args.keywords)
    return load_default_keywords()


def _open_out(args):
    path = getattr(args, "output", None)
    if path and path != "-":
        return open(path, "w", encoding="utf-8")
    return sys.stdout


# ---------------------------------------------------------------------------
# subcommands

def cmd_ingest(args) -> int:
    if args.plain:
        corpus = corpus_mod.load_plain(args.input, args.name)
    else:
        corpus = corpus_mod.load_tagged(args.input, args.name)
    out = _open_out(args)
    corpus_mod.write_tagged(corpus, out)
    if out is not sys.stdout:
        out.close()
    print(
        "ingested %d documents, %d sentences"
        % (len(corpus), corpus.sentence_count),
        file=sys.stderr,
    )
    return 0


def cmd_split(args) -> int:
    corpus = corpus_mod.load_tagged(args.input)
    sizes = tuple(int(x) for x in args.sizes.split(","))
    if len(sizes) != 3:
        raise SmellexError("--sizes needs three comma-separated counts")
    parts = corpus_mod.split_corpus(corpus, sizes, args.seed)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    rows = []
    for part in parts:
        path = outdir / ("%s.tsv" % part.role)
        corpus_mod.save_tagged(part, path)
        rows.append(
            {"role": part.role, "documents": len(part), "path": str(path)}
        )
    _emit_rows(rows, ["role", "documents", "path"], args.format, sys.stdout)
    return 0


def cmd_match(args) -> int:
    records = load_patterns(args.patterns)
    if args.canonicalize:
        from .pattern_dsl import write_patterns

        out = _open_out(args)
        write_patterns(records, out)
        if out is not sys.stdout:
            out.close()
        return 0
    if not args.corpus:
        raise SmellexError("--corpus is required unless --canonicalize is given")
    corpus = corpus_mod.load_tagged(args.corpus)
    groups = _load_groups_arg(args)
    engine = None
    if args.engine:
        from . import matcher

        engine = matcher.get_engine(args.engine)
    matches = match_corpus(records, corpus, groups, engine)
    out = _open_out(args)
    if args.format == "json":
        json.dump(
            [
                {
                    "pattern_id": m.pattern_id,
                    "doc_id": m.doc_id,
                    "sent_index": m.sent_index,
                    "span": list(m.span),
                    "captures": [
                        {"index": c.index, "span": list(c.span), "text": c.text}
                        for c in m.captures
                    ],
                }
                for m in matches
            ],
            out,
            indent=2,
        )
        out.write("\n")
    else:
        write_matches(matches, out)
    if out is not sys.stdout:
        out.close()
    return 0


def _parse_seed_entries(specs):
    if not specs:
        return DEFAULT_SEED_ENTRIES
    entries = []
    for spec in specs:
        lemma, _, pos = spec.partition(":")
        if not pos:
            raise SmellexError("seed entries are written lemma:POS, got %r" % spec)
        entries.append(LexiconEntry(Single(lemma.lower(), pos)))
    return entries


def cmd_cycle_start(args) -> int:
    state_dir = Path(args.state_dir)
    if (state_dir / "config.json").exists():
        engine = BootstrapEngine.load(state_dir)
    else:
        if not args.harvesting or not args.validation:
            raise SmellexError(
                "new state directory needs --harvesting and --validation corpora"
            )
        config = BootstrapConfig(
            approach=args.approach,
            validation_sample_size=args.sample_size,
            acceptance_threshold=args.threshold,
            sift_with_keywords=args.sift,
            seed=args.seed,
            evaluation_path=args.evaluation,
            gold_path=args.gold,
        )
        engine = BootstrapEngine.create(
            state_dir,
            config,
            corpus_mod.load_tagged(args.harvesting),
            corpus_mod.load_tagged(args.validation),
            groups=load_groups(args.groups) if args.groups else None,
            keywords=_load_keywords_arg(args),
            seed_entries=_parse_seed_entries(args.seed_entry),
        )
    extracts, draft = engine.start_cycle()
    rows = [
        {
            "doc_id": e.doc_id,
            "sent_index": e.sent_index,
            "source": e.source,
            "text": e.text,
        }
        for e in extracts
    ]
    if args.format == "json":
        json.dump(
            {
                "cycle": draft.cycle,
                "lexicon_entries": draft.lexicon_entries,
                "new_unseen_extracts": draft.new_unseen_extracts,
                "sifted": draft.sifted,
                "extracts": rows,
            },
            sys.stdout,
            indent=2,
        )
        sys.stdout.write("\n")
    else:
        print(
            "cycle %d: %d lexicon entries, %d new extracts%s"
            % (
                draft.cycle,
                draft.lexicon_entries,
                draft.new_unseen_extracts,
                " (sifted)" if draft.sifted else "",
            ),
            file=sys.stderr,
        )
        _emit_rows(rows, ["doc_id", "sent_index", "source", "text"], "tsv", sys.stdout)
    return 0


def cmd_cycle_status(args) -> int:
    engine = BootstrapEngine.load(args.state_dir)
    candidates = []
    for rec in engine.current_candidates():
        candidates.append(
            {
                "pattern_id": rec.id,
                "kind": rec.kind,
                "approach": rec.approach,
                "source": rec.source,
                "status": rec.status,
                "decision": engine.decision(rec.id),
                "tallies": engine.tallies(rec.id),
                "precision": engine.precision(rec.id),
                "sample": [
                    {
                        "doc_id": e.doc_id,
                        "sent_index": e.sent_index,
                        "text": e.text,
                        "spans": [list(s) for s in e.spans],
                    }
                    for e in engine.sample_for(rec.id)
                ],
            }
        )
    status = {
        "cycle": engine.cycle,
        "phase": engine.phase,
        "lexicon_entries": len(engine.lexicon),
        "new_unseen_extracts": (
            engine.draft.new_unseen_extracts if engine.draft else None
        ),
        "candidates": candidates,
        "history": [rec.to_dict() for rec in engine.cycles],
    }
    if args.format == "json":
        json.dump(status, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        print("cycle\t%d" % status["cycle"])
        print("phase\t%s" % status["phase"])
        print("lexicon_entries\t%d" % status["lexicon_entries"])
        for cand in candidates:
            print(
                "candidate\t%s\t%s\t%s\t%s\t%s"
                % (
                    cand["pattern_id"],
                    cand["kind"],
                    cand["decision"],
                    _fmt(cand["precision"]),
                    cand["source"],
                )
            )
    return 0


def cmd_cycle_advance(args) -> int:
    engine = BootstrapEngine.load(args.state_dir)
    if args.patterns:
        with open(args.patterns, encoding="utf-8") as fh:
            engine.register_pattern_file(fh)
    if args.judgments:
        with open(args.judgments, encoding="utf-8") as fh:
            applied, skipped = engine.apply_judgment_file(fh)
            if skipped:
                print(
                    "%d judgment(s) outside validation samples skipped" % skipped,
                    file=sys.stderr,
                )
    exempt = [x for x in (args.exempt or "").split(",") if x]
    record = engine.finalize_cycle(None, exempt)
    if args.format == "json":
        json.dump(record.to_dict(), sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        print(record.to_row())
    return 0


def cmd_serve(args) -> int:
    from .service import serve

    serve(args.state_dir, port=args.port, host=args.host, ui_dir=args.ui)
    return 0


def cmd_eval_kappa(args) -> int:
    if args.gold:
        corpus = corpus_mod.load_tagged(args.corpus)
        annotations = evaluation.load_gold(args.gold, corpus)
        rows = evaluation.kappa_matrix(annotations, corpus, args.mode)
        _emit_rows(
            rows,
            ["doc_id", "annotator_a", "annotator_b", "n", "kappa", "band"],
            args.format,
            sys.stdout,
        )
        return 0
    labels_a = Path(args.a).read_text(encoding="utf-8").split()
    labels_b = Path(args.b).read_text(encoding="utf-8").split()
    kappa, band = evaluation.cohens_kappa(labels_a, labels_b)
    if args.format == "json":
        json.dump({"kappa": kappa, "band": band}, sys.stdout)
        sys.stdout.write("\n")
    else:
        print("%.6f\t%s" % (kappa, band))
    return 0


def cmd_eval_pr(args) -> int:
    records = load_patterns(args.patterns)
    corpus = corpus_mod.load_tagged(args.corpus)
    annotations = evaluation.load_gold(args.gold, corpus)
    gold = evaluation.gold_positive(annotations, args.mode)
    groups = _load_groups_arg(args)
    cutoffs = [float(x) for x in args.cutoffs.split(",")]
    points = evaluation.pr_curve(records, gold, corpus, cutoffs, groups)
    rows = [
        {
            "cutoff": p.cutoff,
            "precision": p.precision,
            "recall": p.recall,
            "active_patterns": p.active_patterns,
        }
        for p in points
    ]
    _emit_rows(
        rows, ["cutoff", "precision", "recall", "active_patterns"], args.format, sys.stdout
    )
    return 0


def cmd_eval_baseline(args) -> int:
    corpus = corpus_mod.load_tagged(args.corpus)
    annotations = evaluation.load_gold(args.gold, corpus)
    gold = evaluation.gold_positive(annotations, args.mode)
    kw = _load_keywords_arg(args)
    predicted = evaluation.keyword_baseline(corpus, kw, expand=not args.no_expand)
    precision, recall = evaluation.precision_recall(predicted, gold, corpus.universe())
    rows = [
        {
            "predictor": "keywords",
            "predicted": len(predicted),
            "precision": precision,
            "recall": recall,
        }
    ]
    _emit_rows(
        rows, ["predictor", "predicted", "precision", "recall"], args.format, sys.stdout
    )
    return 0


def _prediction_set(spec: str, corpus, gold_args) -> set:
    if spec == "keywords":
        return evaluation.keyword_baseline(corpus, _load_keywords_arg(gold_args))
    records = load_patterns(spec)
    return evaluation.predict_sentences(records, corpus, _load_groups_arg(gold_args))


def cmd_eval_significance(args) -> int:
    corpus = corpus_mod.load_tagged(args.corpus)
    annotations = evaluation.load_gold(args.gold, corpus)
    gold = evaluation.gold_positive(annotations, args.mode)
    universe = corpus.universe()
    pred_a = _prediction_set(args.a, corpus, args)
    pred_b = _prediction_set(args.b, corpus, args)
    if args.method == "mcnemar":
        b, c, p = evaluation.mcnemar_exact(pred_a, pred_b, gold, universe)
        rows = [{"method": "mcnemar", "b": b, "c": c, "p_value": p}]
        _emit_rows(rows, ["method", "b", "c", "p_value"], args.format, sys.stdout)
    else:
        diff, p = evaluation.bootstrap_recall_test(
            pred_a, pred_b, gold, universe, n_resamples=args.resamples, seed=args.seed
        )
        rows = [
            {
                "method": "bootstrap",
                "recall_difference": diff,
                "p_value": p,
                "resamples": args.resamples,
            }
        ]
        _emit_rows(
            rows,
            ["method", "recall_difference", "p_value", "resamples"],
            args.format,
            sys.stdout,
        )
    return 0


# ---------------------------------------------------------------------------
# parser

def _add_format(p) -> None:
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smellex",
        description="Pattern-based detection of smell experiences in literary text",
    )
    parser.add_argument("--version", action="version", version="smellex %s" % __version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="read a corpus and emit canonical tagged TSV")
    p.add_argument("input")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--plain", action="store_true", help="naive plain-text ingestion")
    p.add_argument("--name")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("split", help="split a corpus into harvesting/validation/evaluation")
    p.add_argument("input")
    p.add_argument("--sizes", required=True, help="h,v,e document counts")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--outdir", required=True)
    _add_format(p)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("match", help="run a pattern file over a corpus")
    p.add_argument("--patterns", required=True)
    p.add_argument("--corpus")
    p.add_argument("--groups")
    p.add_argument("--keywords")
    p.add_argument("--engine", choices=("python", "cython"))
    p.add_argument(
        "--canonicalize",
        action="store_true",
        help="parse-validate the pattern file and emit canonical DSL instead of matching",
    )
    p.add_argument("-o", "--output", default="-")
    _add_format(p)
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("cycle", help="bootstrap cycle operations")
    cyc = p.add_subparsers(dest="cycle_command", required=True)

    p = cyc.add_parser("start", help="start the next cycle (initializes new state dirs)")
    p.add_argument("--state-dir", required=True)
    p.add_argument("--harvesting")
    p.add_argument("--validation")
    p.add_argument("--evaluation")
    p.add_argument("--gold")
    p.add_argument("--approach", choices=("adj_noun", "verb_noun"), default="adj_noun")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threshold", type=float, default=0.7)
    p.add_argument("--sample-size", type=int, default=10)
    p.add_argument("--sift", action="store_true")
    p.add_argument("--groups")
    p.add_argument("--keywords")
    p.add_argument(
        "--seed-entry",
        action="append",
        help="seed lexicon entry as lemma:POS (default aroma:NOUN)",
    )
    _add_format(p)
    p.set_defaults(func=cmd_cycle_start)

    p = cyc.add_parser("status", help="report cycle phase and candidates")
    p.add_argument("--state-dir", required=True)
    _add_format(p)
    p.set_defaults(func=cmd_cycle_status)

    p = cyc.add_parser("advance", help="apply patterns/judgments and finalize the cycle")
    p.add_argument("--state-dir", required=True)
    p.add_argument("--patterns", help="pattern file (id, kind, approach, DSL)")
    p.add_argument("--judgments", help="judgment file (pattern_id, doc_id, sent_index, label, judge)")
    p.add_argument("--exempt", help="comma-separated pattern ids exempt from the threshold")
    _add_format(p)
    p.set_defaults(func=cmd_cycle_advance)

    p = sub.add_parser("validate", help="validation loop service")
    val = p.add_subparsers(dest="validate_command", required=True)
    p = val.add_parser("serve", help="serve the review API over HTTP")
    p.add_argument("--state-dir", required=True)
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--ui", help="directory with the built review UI to mount at /")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("eval", help="evaluation harness")
    ev = p.add_subparsers(dest="eval_command", required=True)

    p = ev.add_parser("kappa", help="Cohen's kappa from label files or a gold file")
    p.add_argument("--a", help="label file, one label per line")
    p.add_argument("--b", help="label file, one label per line")
    p.add_argument("--gold", help="gold span file (pairwise matrix mode)")
    p.add_argument("--corpus")
    p.add_argument("--mode", choices=("experience", "description"), default="experience")
    _add_format(p)
    p.set_defaults(func=cmd_eval_kappa)

    p = ev.add_parser("pr", help="precision-recall curve over precision cutoffs")
    p.add_argument("--patterns", required=True, help="pattern file with estimated precisions")
    p.add_argument("--gold", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--cutoffs", default=",".join(str(i / 20) for i in range(21)))
    p.add_argument("--groups")
    p.add_argument("--keywords")
    p.add_argument("--mode", choices=("experience", "description"), default="experience")
    _add_format(p)
    p.set_defaults(func=cmd_eval_pr)

    p = ev.add_parser("baseline", help="keyword-scan baseline precision/recall")
    p.add_argument("--gold", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--keywords")
    p.add_argument("--no-expand", action="store_true", help="disable inflection expansion")
    p.add_argument("--mode", choices=("experience", "description"), default="experience")
    _add_format(p)
    p.set_defaults(func=cmd_eval_baseline)

    p = ev.add_parser("significance", help="paired significance of two predictors")
    p.add_argument("--a", required=True, help="pattern file or the literal 'keywords'")
    p.add_argument("--b", required=True, help="pattern file or the literal 'keywords'")
    p.add_argument("--gold", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--groups")
    p.add_argument("--keywords")
    p.add_argument("--method", choices=("mcnemar", "bootstrap"), default="mcnemar")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--resamples", type=int, default=1000)
    p.add_argument("--mode", choices=("experience", "description"), default="experience")
    _add_format(p)
    p.set_defaults(func=cmd_eval_significance)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args) or 0
    except (SmellexError, OSError) as err:
        print("smellex: error: %s" % err, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
