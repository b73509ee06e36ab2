"""Iterative bootstrapping engine.

One cycle runs: feature retrieval from the harvesting corpus (optionally
sifted down to keyword-bearing sentences), human pattern hypotheses, a
validation loop that samples each pattern on the validation corpus and
collects tp/fp/unknown judgments, acceptance at an estimated-precision
threshold, then complement harvesting by the accepted extraction
patterns to grow the lexicon.  Every accepted pattern joins the
identification set; accepted extraction patterns form a subset of it.

The engine is a single-writer state machine.  All mutations take the
engine lock, persist before returning, and are replayable: validation
sampling is seeded, so the same corpora, judgments and seed reproduce
identical cycle records byte for byte.

State directory layout: ``config.json``, ``state.json``,
``harvesting.tsv``/``validation.tsv`` (corpus copies), ``groups.tsv``,
``lexicon.tsv``, ``ledger.tsv``, ``patterns.tsv``, ``judgments.tsv``,
``cycles.tsv``, ``extracts.tsv``.  A headless judgment file is TSV
``pattern_id, doc_id, sent_index, label, judge``.
"""

from __future__ import annotations

import dataclasses
import json
import threading
from dataclasses import dataclass, field
from pathlib import Path
from random import Random
from typing import Iterable, Mapping, TextIO

from . import corpus as corpus_mod
from .corpus import Corpus, ROLE_HARVESTING, ROLE_VALIDATION
from .errors import BootstrapError, CorpusError
from .keywords import KeywordLexicon, keyword_scan, load_default_keywords
from .lexicon import (
    DEFAULT_SEED_ENTRIES,
    Extract,
    ExtractLedger,
    Lexicon,
    LexiconEntry,
    Pair,
    SynonymGroup,
    default_synonym_groups,
    find_feature_extracts,
    read_groups,
    read_ledger,
    read_lexicon,
    write_groups,
    write_ledger,
    write_lexicon,
)
from .matcher import CompiledPattern, compile_record, match_sentence
from .pattern_dsl import (
    PatternRecord,
    make_record,
    read_patterns,
    write_patterns,
)

JUDGMENT_LABELS = ("tp", "fp", "unknown")

PHASE_IDLE = "idle"
PHASE_REVIEW = "review"

# complement order inside a Pair, per approach
_PAIR_SLOTS = {"adj_noun": ("adj", "noun"), "verb_noun": ("noun", "verb")}


@dataclass
class BootstrapConfig:
    approach: str = "adj_noun"
    validation_sample_size: int = 10
    acceptance_threshold: float = 0.7
    sift_with_keywords: bool = False
    seed: int = 0
    unknown_in_denominator: bool = False
    # optional evaluation wiring, used by the metrics endpoint
    evaluation_path: str | None = None
    gold_path: str | None = None

    def __post_init__(self):
        if self.approach not in _PAIR_SLOTS:
            raise BootstrapError("unknown approach %r" % self.approach)
        if not 0.0 < self.acceptance_threshold <= 1.0:
            raise BootstrapError(
                "acceptance threshold must be in (0, 1], got %r"
                % self.acceptance_threshold
            )
        if self.validation_sample_size < 1:
            raise BootstrapError("validation sample size must be >= 1")

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "BootstrapConfig":
        fields = {f.name for f in dataclasses.fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in fields})


@dataclass(frozen=True)
class ValidationJudgment:
    pattern_id: str
    doc_id: str
    sent_index: int
    label: str
    judge: str
    timestamp: str = ""

    def __post_init__(self):
        if self.label not in JUDGMENT_LABELS:
            raise BootstrapError(
                "judgment label must be one of %s, got %r"
                % ("/".join(JUDGMENT_LABELS), self.label)
            )

    @property
    def extract_key(self) -> tuple[str, int]:
        return (self.doc_id, self.sent_index)


@dataclass
class CycleRecord:
    cycle: int
    lexicon_entries: int
    new_unseen_extracts: int
    hypothesized_patterns: int = 0
    new_identification_patterns: int = 0
    new_extraction_patterns: int = 0
    sifted: bool = False
    exempt_patterns: tuple[str, ...] = ()

    def validate(self) -> None:
        if not (
            self.new_extraction_patterns
            <= self.new_identification_patterns
            <= self.hypothesized_patterns
        ):
            raise BootstrapError(
                "cycle %d: pattern counts must satisfy "
                "extraction <= identification <= hypothesized (got %d/%d/%d)"
                % (
                    self.cycle,
                    self.new_extraction_patterns,
                    self.new_identification_patterns,
                    self.hypothesized_patterns,
                )
            )

    def to_row(self) -> str:
        return "\t".join(
            (
                str(self.cycle),
                str(self.lexicon_entries),
                str(self.new_unseen_extracts),
                str(self.hypothesized_patterns),
                str(self.new_identification_patterns),
                str(self.new_extraction_patterns),
                "1" if self.sifted else "0",
                ",".join(self.exempt_patterns) or "_",
            )
        )

    @classmethod
    def from_row(cls, row: str) -> "CycleRecord":
        cols = row.rstrip("\n").split("\t")
        if len(cols) != 8:
            raise CorpusError("bad cycle row %r" % row)
        return cls(
            cycle=int(cols[0]),
            lexicon_entries=int(cols[1]),
            new_unseen_extracts=int(cols[2]),
            hypothesized_patterns=int(cols[3]),
            new_identification_patterns=int(cols[4]),
            new_extraction_patterns=int(cols[5]),
            sifted=cols[6] == "1",
            exempt_patterns=tuple(cols[7].split(",")) if cols[7] != "_" else (),
        )

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["exempt_patterns"] = list(self.exempt_patterns)
        return d


def estimate_precision(
    judgments: Iterable[ValidationJudgment], unknown_in_denominator: bool = False
) -> float | None:
    """tp / (tp + fp); unknowns abstain unless configured otherwise.

    Returns None when the denominator is empty (undecidable).
    """
    judgments = list(judgments)
    pids = {j.pattern_id for j in judgments}
    if len(pids) > 1:
        raise BootstrapError(
            "judgments must reference a single pattern, got %s" % sorted(pids)
        )
    tp = sum(1 for j in judgments if j.label == "tp")
    fp = sum(1 for j in judgments if j.label == "fp")
    unk = sum(1 for j in judgments if j.label == "unknown")
    denom = tp + fp + (unk if unknown_in_denominator else 0)
    if denom == 0:
        return None
    return tp / denom


class BootstrapEngine:
    """Single-writer orchestrator for the bootstrap cycles."""

    def __init__(
        self,
        config: BootstrapConfig,
        harvesting: Corpus,
        validation: Corpus,
        groups: Mapping[str, SynonymGroup],
        lexicon: Lexicon,
        ledger: ExtractLedger,
        keywords: KeywordLexicon,
        state_dir: Path | None = None,
    ):
        self.config = config
        self.harvesting = harvesting.with_role(ROLE_HARVESTING)
        self.validation = validation.with_role(ROLE_VALIDATION)
        self.groups = dict(groups)
        self.lexicon = lexicon
        self.ledger = ledger
        self.keywords = keywords
        self.state_dir = Path(state_dir) if state_dir is not None else None

        self.cycle = 0
        self.phase = PHASE_IDLE
        self.draft: CycleRecord | None = None
        self.current_extracts: list[Extract] = []
        self.patterns: dict[str, PatternRecord] = {}
        self.samples: dict[str, list[Extract]] = {}
        self.judgments: dict[tuple, ValidationJudgment] = {}
        self.cycles: list[CycleRecord] = []
        self._pattern_seq = 0
        self._lock = threading.RLock()
        self.request_log: dict[str, dict] = {}

    # -- construction ------------------------------------------------------

    @classmethod
    def create(
        cls,
        state_dir: str | Path | None,
        config: BootstrapConfig,
        harvesting: Corpus,
        validation: Corpus,
        groups: Mapping[str, SynonymGroup] | None = None,
        keywords: KeywordLexicon | None = None,
        seed_entries: Iterable[LexiconEntry] = DEFAULT_SEED_ENTRIES,
    ) -> "BootstrapEngine":
        keywords = keywords or load_default_keywords()
        if groups is None:
            groups = default_synonym_groups(keywords)
        lexicon = Lexicon(groups, seed_entries)
        engine = cls(
            config,
            harvesting,
            validation,
            groups,
            lexicon,
            ExtractLedger(),
            keywords,
            state_dir,
        )
        if engine.state_dir is not None:
            engine.state_dir.mkdir(parents=True, exist_ok=True)
            corpus_mod.save_tagged(engine.harvesting, engine.state_dir / "harvesting.tsv")
            corpus_mod.save_tagged(engine.validation, engine.state_dir / "validation.tsv")
            with open(engine.state_dir / "groups.tsv", "w", encoding="utf-8") as fh:
                write_groups(engine.groups, fh)
            with open(engine.state_dir / "keywords.tsv", "w", encoding="utf-8") as fh:
                from .keywords import write_keywords

                write_keywords(keywords, fh)
            engine._persist()
        return engine

    @classmethod
    def load(cls, state_dir: str | Path) -> "BootstrapEngine":
        state_dir = Path(state_dir)
        if not (state_dir / "config.json").exists():
            raise BootstrapError(
                "%s is not a bootstrap state directory (missing config.json)"
                % state_dir
            )
        try:
            config = BootstrapConfig.from_dict(
                json.loads((state_dir / "config.json").read_text())
            )
            state = json.loads((state_dir / "state.json").read_text())
            harvesting = corpus_mod.load_tagged(state_dir / "harvesting.tsv")
            validation = corpus_mod.load_tagged(state_dir / "validation.tsv")
            with open(state_dir / "groups.tsv", encoding="utf-8") as fh:
                groups = read_groups(fh)
            from .keywords import load_keywords

            keywords = load_keywords(state_dir / "keywords.tsv")
            with open(state_dir / "lexicon.tsv", encoding="utf-8") as fh:
                lexicon = read_lexicon(fh, groups)
            with open(state_dir / "ledger.tsv", encoding="utf-8") as fh:
                ledger = read_ledger(fh)
        except (OSError, ValueError, KeyError) as err:
            raise BootstrapError("corrupt state directory %s: %s" % (state_dir, err))

        engine = cls(
            config, harvesting, validation, groups, lexicon, ledger, keywords, state_dir
        )
        engine.cycle = state["cycle"]
        engine.phase = state["phase"]
        engine._pattern_seq = state["pattern_seq"]
        if state.get("draft") is not None:
            d = state["draft"]
            engine.draft = CycleRecord(
                cycle=d["cycle"],
                lexicon_entries=d["lexicon_entries"],
                new_unseen_extracts=d["new_unseen_extracts"],
                hypothesized_patterns=d["hypothesized_patterns"],
                sifted=d["sifted"],
            )
        patterns_path = state_dir / "patterns.tsv"
        if patterns_path.exists():
            for rec in read_patterns(open(patterns_path, encoding="utf-8")):
                engine.patterns[rec.id] = rec
        cycles_path = state_dir / "cycles.tsv"
        if cycles_path.exists():
            with open(cycles_path, encoding="utf-8") as fh:
                engine.cycles = [
                    CycleRecord.from_row(line)
                    for line in fh
                    if line.strip() and not line.startswith("#")
                ]
        judgments_path = state_dir / "judgments.tsv"
        if judgments_path.exists():
            with open(judgments_path, encoding="utf-8") as fh:
                for j in read_judgments(fh):
                    engine.judgments[
                        (j.pattern_id, j.doc_id, j.sent_index, j.judge)
                    ] = j
        extracts_path = state_dir / "extracts.tsv"
        if extracts_path.exists():
            engine.current_extracts = engine._read_extracts(extracts_path)
        # validation samples are deterministic, so they are recomputed
        # rather than persisted
        for rec in engine.patterns.values():
            if rec.origin_cycle == engine.cycle and engine.phase == PHASE_REVIEW:
                engine.samples[rec.id] = engine.sample_validation(rec)
        return engine

    # -- persistence -------------------------------------------------------

    def _read_extracts(self, path: Path) -> list[Extract]:
        out = []
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                if not line.strip():
                    continue
                doc_id, sent_index, source, spans, labels = line.rstrip("\n").split("\t")
                span_tuple = tuple(
                    tuple(int(x) for x in s.split(":")) for s in spans.split(",") if s
                )
                label_tuple = tuple(x for x in labels.split(",") if x)
                sentence = self.harvesting.sentence(doc_id, int(sent_index))
                out.append(
                    Extract(
                        doc_id, int(sent_index), sentence.text, source,
                        span_tuple, label_tuple,
                    )
                )
        return out

    def _persist(self) -> None:
        if self.state_dir is None:
            return
        sd = self.state_dir
        (sd / "config.json").write_text(json.dumps(self.config.to_dict(), indent=2))
        draft = None
        if self.draft is not None:
            draft = {
                "cycle": self.draft.cycle,
                "lexicon_entries": self.draft.lexicon_entries,
                "new_unseen_extracts": self.draft.new_unseen_extracts,
                "hypothesized_patterns": self.draft.hypothesized_patterns,
                "sifted": self.draft.sifted,
            }
        (sd / "state.json").write_text(
            json.dumps(
                {
                    "cycle": self.cycle,
                    "phase": self.phase,
                    "pattern_seq": self._pattern_seq,
                    "draft": draft,
                },
                indent=2,
            )
        )
        with open(sd / "lexicon.tsv", "w", encoding="utf-8") as fh:
            write_lexicon(self.lexicon, fh)
        with open(sd / "ledger.tsv", "w", encoding="utf-8") as fh:
            write_ledger(self.ledger, fh)
        with open(sd / "patterns.tsv", "w", encoding="utf-8") as fh:
            write_patterns(
                sorted(self.patterns.values(), key=lambda r: (r.origin_cycle or 0, r.id)),
                fh,
                extended=True,
            )
        with open(sd / "judgments.tsv", "w", encoding="utf-8") as fh:
            write_judgments(sorted(self.judgments.values(), key=_judgment_key), fh)
        with open(sd / "cycles.tsv", "w", encoding="utf-8") as fh:
            for rec in self.cycles:
                fh.write(rec.to_row() + "\n")
        with open(sd / "extracts.tsv", "w", encoding="utf-8") as fh:
            for e in self.current_extracts:
                spans = ",".join("%d:%d" % span for span in e.spans)
                labels = ",".join(e.span_labels)
                fh.write(
                    "%s\t%d\t%s\t%s\t%s\n"
                    % (e.doc_id, e.sent_index, e.source, spans, labels)
                )

    # -- cycle phases ------------------------------------------------------

    def start_cycle(self) -> tuple[list[Extract], CycleRecord]:
        """Retrieve this cycle's new extracts and open the review phase."""
        with self._lock:
            if self.phase != PHASE_IDLE:
                raise BootstrapError("cycle %d is already in progress" % self.cycle)
            if len(self.lexicon) == 0:
                raise BootstrapError("cannot start a cycle with an empty lexicon")
            lexicon_count = len(self.lexicon)
            extracts = find_feature_extracts(self.lexicon, self.harvesting, self.ledger)
            if self.config.sift_with_keywords:
                extracts = [
                    e
                    for e in extracts
                    if keyword_scan(
                        self.harvesting.sentence(e.doc_id, e.sent_index), self.keywords
                    )
                ]
            self.current_extracts = extracts
            self.draft = CycleRecord(
                cycle=self.cycle,
                lexicon_entries=lexicon_count,
                new_unseen_extracts=len(extracts),
                sifted=self.config.sift_with_keywords,
            )
            self.phase = PHASE_REVIEW
            self._persist()
            return list(extracts), self.draft

    def hypothesize(
        self,
        source: str,
        kind: str,
        approach: str | None = None,
        pattern_id: str | None = None,
    ) -> PatternRecord:
        """Register a human-hypothesized pattern and sample its validation set."""
        with self._lock:
            if self.phase != PHASE_REVIEW:
                raise BootstrapError("no cycle in progress; start one first")
            if pattern_id is None:
                pattern_id = "p%d" % self._pattern_seq
                self._pattern_seq += 1
            elif pattern_id in self.patterns:
                raise BootstrapError("pattern id %r already exists" % pattern_id)
            record = make_record(
                pattern_id,
                source,
                kind,
                approach if approach is not None else self.config.approach,
                origin_cycle=self.cycle,
            )
            sample = self.sample_validation(record)
            if not sample:
                # no validation coverage: the pattern is removed outright
                record = dataclasses.replace(record, status="removed")
            self.patterns[record.id] = record
            self.samples[record.id] = sample
            self.draft.hypothesized_patterns += 1
            self._persist()
            return record

    def sample_validation(
        self, record: PatternRecord, n: int | None = None
    ) -> list[Extract]:
        """Deterministically sample distinct matched sentences for review."""
        compiled = compile_record(record, self.groups)
        hits = []
        for sentence in self.validation.sentences():
            matches = match_sentence(compiled, sentence)
            if matches:
                hits.append((sentence, matches[0]))
        n = self.config.validation_sample_size if n is None else n
        if len(hits) > n:
            rng = Random("%d:%s" % (self.config.seed, record.id))
            picked = sorted(rng.sample(range(len(hits)), n))
            hits = [hits[i] for i in picked]
        out = []
        for sentence, match in hits:
            spans = (match.span,) + tuple(c.span for c in match.captures)
            labels = ("match",) + tuple(
                compiled.capture_classes.get(c.index) or "capture"
                for c in match.captures
            )
            out.append(
                Extract(
                    sentence.doc_id,
                    sentence.sent_index,
                    sentence.text,
                    "pattern:%s" % record.id,
                    spans,
                    labels,
                )
            )
        return out

    def sample_for(self, pattern_id: str) -> list[Extract]:
        return list(self.samples.get(pattern_id, ()))

    def judge(self, judgment: ValidationJudgment, strict: bool = True) -> bool:
        """Record one judgment; at most one per (pattern, extract, judge)."""
        with self._lock:
            record = self.patterns.get(judgment.pattern_id)
            if record is None:
                raise BootstrapError("unknown pattern %r" % judgment.pattern_id)
            sample_keys = {e.key for e in self.samples.get(judgment.pattern_id, ())}
            if judgment.extract_key not in sample_keys:
                if strict:
                    raise BootstrapError(
                        "extract %r is not in the validation sample of %s"
                        % (judgment.extract_key, judgment.pattern_id)
                    )
                return False
            key = (judgment.pattern_id, judgment.doc_id, judgment.sent_index, judgment.judge)
            self.judgments[key] = judgment
            self._persist()
            return True

    def judgments_for(self, pattern_id: str) -> list[ValidationJudgment]:
        return [j for j in self.judgments.values() if j.pattern_id == pattern_id]

    def tallies(self, pattern_id: str) -> dict[str, int]:
        counts = {"tp": 0, "fp": 0, "unknown": 0}
        for j in self.judgments_for(pattern_id):
            counts[j.label] += 1
        return counts

    def precision(self, pattern_id: str) -> float | None:
        return estimate_precision(
            self.judgments_for(pattern_id), self.config.unknown_in_denominator
        )

    def decision(self, pattern_id: str) -> str:
        """Live decision state for a candidate."""
        record = self.patterns[pattern_id]
        if record.status == "removed":
            return "removed"
        if record.status != "hypothesized":
            return record.status
        p = self.precision(pattern_id)
        if p is None:
            return "awaiting-judgments"
        if p >= self.config.acceptance_threshold:
            return "accept-eligible"
        return "below-threshold"

    def current_candidates(self) -> list[PatternRecord]:
        return sorted(
            (r for r in self.patterns.values() if r.origin_cycle == self.cycle),
            key=lambda r: r.id,
        )

    def blocking_candidates(self) -> list[str]:
        """Candidates that still block cycle advance (no judgments yet)."""
        return [
            r.id
            for r in self.current_candidates()
            if r.status == "hypothesized" and self.precision(r.id) is None
        ]

    # -- finalization ------------------------------------------------------

    def _decide(self, record: PatternRecord, exempt: set[str]) -> PatternRecord:
        if record.status in ("removed",):
            return record
        p = self.precision(record.id)
        if record.id in exempt:
            return dataclasses.replace(
                record, status="validated", exempt=True, estimated_precision=p
            )
        if p is None:
            return record
        status = (
            "validated" if p >= self.config.acceptance_threshold else "rejected"
        )
        return dataclasses.replace(record, status=status, estimated_precision=p)

    def finalize_cycle(
        self,
        accepted_ids: Iterable[str] | None = None,
        exempt_ids: Iterable[str] = (),
    ) -> CycleRecord:
        """Close the cycle: accept patterns, harvest complements, record stats.

        With accepted_ids=None every validated (or exempt) candidate is
        accepted.  Passing an id whose pattern did not validate raises.
        """
        with self._lock:
            if self.phase != PHASE_REVIEW:
                raise BootstrapError("no cycle in progress")
            exempt = set(exempt_ids)
            unknown_exempt = exempt - {r.id for r in self.current_candidates()}
            if unknown_exempt:
                raise BootstrapError(
                    "exempt ids not in this cycle: %s" % sorted(unknown_exempt)
                )
            decided = {
                r.id: self._decide(r, exempt) for r in self.current_candidates()
            }
            if accepted_ids is None:
                accepted = [r for r in decided.values() if r.status == "validated"]
                undecided = [
                    r.id for r in decided.values() if r.status == "hypothesized"
                ]
                if undecided:
                    raise BootstrapError(
                        "cannot advance: candidates without judgments: %s"
                        % sorted(undecided)
                    )
            else:
                accepted = []
                for pid in accepted_ids:
                    rec = decided.get(pid)
                    if rec is None:
                        raise BootstrapError("pattern %r is not in this cycle" % pid)
                    if rec.status != "validated":
                        raise BootstrapError(
                            "cannot accept pattern %r with status %r"
                            % (pid, rec.status)
                        )
                    accepted.append(rec)
            self.patterns.update(decided)

            new_pairs = []
            for rec in accepted:
                if rec.kind != "extraction":
                    continue
                new_pairs.extend(self._harvest_pairs(rec))
            self.lexicon.add_entries(new_pairs)

            record = dataclasses.replace(
                self.draft,
                new_identification_patterns=len(accepted),
                new_extraction_patterns=sum(
                    1 for r in accepted if r.kind == "extraction"
                ),
                exempt_patterns=tuple(sorted(r.id for r in accepted if r.exempt)),
            )
            record.validate()
            self.cycles.append(record)
            self.cycle += 1
            self.phase = PHASE_IDLE
            self.draft = None
            self.current_extracts = []
            self._persist()
            return record

    def _harvest_pairs(self, record: PatternRecord) -> list[LexiconEntry]:
        compiled = compile_record(record, self.groups)
        a_class, b_class = _PAIR_SLOTS[record.approach]
        out = []
        for sentence in self.harvesting.sentences():
            for match in match_sentence(compiled, sentence):
                texts = {
                    compiled.capture_classes.get(c.index): c.text.lower()
                    for c in match.captures
                }
                if a_class in texts and b_class in texts:
                    out.append(
                        LexiconEntry(
                            Pair(record.approach, texts[a_class], texts[b_class]),
                            origin_cycle=record.origin_cycle or 0,
                            origin_pattern=record.id,
                        )
                    )
        return out

    def advance(
        self, exempt_ids: Iterable[str] = (), auto_start: bool = False
    ) -> tuple[CycleRecord, list[Extract] | None]:
        """Finalize the current cycle; optionally chain into the next one."""
        with self._lock:
            record = self.finalize_cycle(None, exempt_ids)
            extracts = None
            if auto_start:
                extracts, _ = self.start_cycle()
            return record, extracts

    # -- accepted pattern sets ---------------------------------------------

    def identification_set(self) -> list[PatternRecord]:
        return sorted(
            (r for r in self.patterns.values() if r.status == "validated"),
            key=lambda r: r.id,
        )

    def extraction_set(self) -> list[PatternRecord]:
        return [r for r in self.identification_set() if r.kind == "extraction"]

    # -- headless input ----------------------------------------------------

    def register_pattern_file(self, fh: TextIO) -> list[PatternRecord]:
        out = []
        for rec in read_patterns(fh):
            out.append(
                self.hypothesize(rec.source, rec.kind, rec.approach, pattern_id=rec.id)
            )
        return out

    def apply_judgment_file(self, fh: TextIO) -> tuple[int, int]:
        """Apply a headless judgment file; returns (applied, skipped)."""
        applied = skipped = 0
        for j in read_judgments(fh):
            if j.pattern_id not in self.patterns:
                raise BootstrapError("unknown pattern %r in judgment file" % j.pattern_id)
            if self.judge(j, strict=False):
                applied += 1
            else:
                skipped += 1
        return applied, skipped


def _judgment_key(j: ValidationJudgment):
    return (j.pattern_id, j.doc_id, j.sent_index, j.judge)


def read_judgments(fh: TextIO) -> list[ValidationJudgment]:
    out = []
    for lineno, raw in enumerate(fh, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) not in (5, 6):
            raise CorpusError(
                "judgment line %d: expected 5 or 6 columns, got %d"
                % (lineno, len(cols))
            )
        timestamp = cols[5] if len(cols) == 6 else ""
        out.append(
            ValidationJudgment(cols[0], cols[1], int(cols[2]), cols[3], cols[4], timestamp)
        )
    return out


def write_judgments(judgments: Iterable[ValidationJudgment], fh: TextIO) -> None:
    for j in judgments:
        row = [j.pattern_id, j.doc_id, str(j.sent_index), j.label, j.judge]
        if j.timestamp:
            row.append(j.timestamp)
        fh.write("\t".join(row) + "\n")
