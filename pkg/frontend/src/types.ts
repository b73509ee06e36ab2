/** Wire types mirroring the review service's JSON API. */

export type JudgmentLabel = "tp" | "fp" | "unknown";

export interface ExtractView {
  doc_id: string;
  sent_index: number;
  text: string;
  source: string;
  /** Token-index spans; offsets come from the server, never recomputed here. */
  spans: [number, number][];
  span_labels: string[];
  judgment?: JudgmentLabel | null;
}

export interface Tallies {
  tp: number;
  fp: number;
  unknown: number;
}

export interface CandidateView {
  pattern_id: string;
  source: string;
  canonical: string;
  kind: "identification" | "extraction";
  approach: string;
  status: string;
  decision: string;
  tallies: Tallies;
  precision: number | null;
  exempt: boolean;
  capture_classes: Record<string, string | null>;
  extracts: ExtractView[];
}

export interface CycleRecordRow {
  cycle: number;
  lexicon_entries: number;
  new_unseen_extracts: number;
  hypothesized_patterns: number;
  new_identification_patterns: number;
  new_extraction_patterns: number;
  sifted: boolean;
  exempt_patterns: string[];
}

export interface CycleDraft {
  cycle: number;
  lexicon_entries: number;
  new_unseen_extracts: number;
  hypothesized_patterns: number;
  sifted: boolean;
}

export interface CycleInfo {
  cycle: number;
  phase: "idle" | "review";
  draft: CycleDraft | null;
  history: CycleRecordRow[];
}

export interface ExtractPage {
  extracts: ExtractView[];
  page: number;
  page_size: number;
  total: number;
  sift: boolean;
}

export interface JudgmentBody {
  pattern_id: string;
  doc_id: string;
  sent_index: number;
  label: JudgmentLabel;
  judge: string;
  request_id: string;
}

export interface JudgmentAck {
  pattern_id: string;
  tallies: Tallies;
  precision: number | null;
  decision: string;
}

export interface AdvanceResult {
  finalized: CycleRecordRow;
  cycle: number;
  phase: string;
  new_unseen_extracts: number | null;
}

export interface PrPointView {
  cutoff: number;
  precision: number | null;
  recall: number;
  active_patterns: number;
}

export interface KappaRow {
  doc_id: string;
  annotator_a: string;
  annotator_b: string;
  n: number;
  kappa: number;
  band: string;
}

export interface Metrics {
  lexicon_growth: { cycle: number; lexicon_entries: number }[];
  identification_patterns: number;
  extraction_patterns: number;
  pr_curve: PrPointView[] | null;
  kappa: KappaRow[] | null;
  baseline: { precision: number | null; recall: number } | null;
}

export interface PreviewResult {
  canonical: string;
  match_count: number;
  matches: ExtractView[];
}

export interface ParseDiagnostic {
  message: string;
  column: number;
}
