/** Typed client for the review service.
 *
 * Every mutation carries a request id derived deterministically from its
 * payload, so a retried or double-fired action hits the server's
 * idempotency cache and replaying a captured network log reproduces the
 * same server state.
 */

import type {
  AdvanceResult,
  CandidateView,
  CycleInfo,
  ExtractPage,
  JudgmentAck,
  JudgmentBody,
  JudgmentLabel,
  Metrics,
  ParseDiagnostic,
  PreviewResult,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: unknown,
  ) {
    super(typeof detail === "string" ? detail : JSON.stringify(detail));
  }

  /** Parser diagnostics arrive as {message, column}. */
  get diagnostic(): ParseDiagnostic | null {
    const d = this.detail as Record<string, unknown> | null;
    if (d && typeof d === "object" && typeof d.column === "number") {
      return { message: String(d.message), column: d.column };
    }
    return null;
  }

  get blocking(): string[] | null {
    const d = this.detail as Record<string, unknown> | null;
    if (d && typeof d === "object" && Array.isArray(d.blocking)) {
      return d.blocking.map(String);
    }
    return null;
  }
}

export function judgmentRequestId(j: Omit<JudgmentBody, "request_id">): string {
  return `j:${j.pattern_id}:${j.doc_id}:${j.sent_index}:${j.judge}:${j.label}`;
}

export function patternRequestId(source: string, kind: string, approach?: string): string {
  return `p:${kind}:${approach ?? ""}:${source}`;
}

export function advanceRequestId(cycle: number, exempt: string[]): string {
  return `adv:${cycle}:${[...exempt].sort().join(",")}`;
}

export class ApiClient {
  constructor(
    private base: string = "",
    private fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await this.fetchFn(this.base + path, init);
    const body = res.status === 204 ? null : await res.json();
    if (!res.ok) {
      throw new ApiError(res.status, (body as { detail?: unknown })?.detail ?? body);
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  cycle(): Promise<CycleInfo> {
    return this.request("/api/cycle");
  }

  extracts(page = 0, sift = false, pageSize = 25): Promise<ExtractPage> {
    const params = new URLSearchParams({
      page: String(page),
      sift: String(sift),
      page_size: String(pageSize),
    });
    return this.request(`/api/extracts?${params}`);
  }

  candidates(): Promise<CandidateView[]> {
    return this.request("/api/candidates");
  }

  submitPattern(source: string, kind: string, approach?: string): Promise<CandidateView> {
    return this.post("/api/patterns", {
      source,
      kind,
      approach: approach ?? null,
      request_id: patternRequestId(source, kind, approach),
    });
  }

  submitJudgment(body: JudgmentBody): Promise<JudgmentAck> {
    return this.post("/api/judgments", body);
  }

  advance(cycle: number, exempt: string[] = [], autoStart = true): Promise<AdvanceResult> {
    return this.post("/api/cycle/advance", {
      exempt_pattern_ids: exempt,
      auto_start: autoStart,
      request_id: advanceRequestId(cycle, exempt),
    });
  }

  metrics(): Promise<Metrics> {
    return this.request("/api/metrics");
  }

  preview(source: string, page = 0): Promise<PreviewResult> {
    return this.post("/api/patterns/preview", { source, page });
  }
}

export function makeJudgment(
  pattern_id: string,
  doc_id: string,
  sent_index: number,
  label: JudgmentLabel,
  judge: string,
): JudgmentBody {
  const partial = { pattern_id, doc_id, sent_index, label, judge };
  return { ...partial, request_id: judgmentRequestId(partial) };
}
