/** Offline-tolerant judgment queue.
 *
 * Judgments enqueue locally and flush in order. A network failure keeps
 * everything queued for the next flush (request ids make the retry
 * idempotent); a server rejection (4xx) is surfaced to the listener and
 * dropped without losing the judgments queued behind it.
 */

import { ApiClient, ApiError } from "./api.js";
import type { JudgmentAck, JudgmentBody } from "./types.js";

export type QueueEvent =
  | { type: "ack"; body: JudgmentBody; ack: JudgmentAck }
  | { type: "rejected"; body: JudgmentBody; status: number; detail: unknown }
  | { type: "offline"; pending: number };

export type QueueListener = (event: QueueEvent) => void;

export class JudgmentQueue {
  private pending: JudgmentBody[] = [];
  private inflight: Promise<void> | null = null;

  constructor(
    private api: ApiClient,
    private listener: QueueListener = () => {},
  ) {}

  get size(): number {
    return this.pending.length;
  }

  snapshot(): JudgmentBody[] {
    return [...this.pending];
  }

  /** Queue a judgment; an already-queued action with the same request id
   * is replaced rather than duplicated (double-click safety). */
  enqueue(body: JudgmentBody): void {
    const existing = this.pending.findIndex(
      (p) => p.request_id === body.request_id,
    );
    if (existing >= 0) {
      this.pending[existing] = body;
    } else {
      this.pending.push(body);
    }
  }

  flush(): Promise<void> {
    if (!this.inflight) {
      this.inflight = this.drain().finally(() => {
        this.inflight = null;
      });
    }
    return this.inflight;
  }

  private async drain(): Promise<void> {
    while (this.pending.length > 0) {
      const body = this.pending[0];
      try {
        const ack = await this.api.submitJudgment(body);
        this.pending.shift();
        this.listener({ type: "ack", body, ack });
      } catch (err) {
        if (err instanceof ApiError && err.status < 500) {
          this.pending.shift();
          this.listener({
            type: "rejected",
            body,
            status: err.status,
            detail: err.detail,
          });
        } else {
          // network trouble: keep the whole queue for a later flush
          this.listener({ type: "offline", pending: this.pending.length });
          return;
        }
      }
    }
  }
}
