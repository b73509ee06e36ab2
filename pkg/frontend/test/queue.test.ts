import { describe, expect, it } from "vitest";

import { ApiClient, makeJudgment } from "../src/api.js";
import { JudgmentQueue, type QueueEvent } from "../src/queue.js";
import { FakeServer, sampleExtracts } from "./fake_server.js";

async function candidateOn(server: FakeServer) {
  const api = new ApiClient("", server.fetch);
  return { api, candidate: await api.submitPattern("_aroma_", "identification") };
}

describe("JudgmentQueue", () => {
  it("replaces queued entries with the same request id (double-click)", async () => {
    const server = new FakeServer(() => sampleExtracts(3));
    const { api, candidate } = await candidateOn(server);
    const queue = new JudgmentQueue(api);
    const body = makeJudgment(candidate.pattern_id, "v0", 0, "tp", "ann");
    queue.enqueue(body);
    queue.enqueue(body);
    expect(queue.size).toBe(1);
    await queue.flush();
    expect(server.tallies(candidate.pattern_id)).toEqual({ tp: 1, fp: 0, unknown: 0 });
  });

  it("keeps everything queued across network failures and retries", async () => {
    const server = new FakeServer(() => sampleExtracts(3));
    let offlineCalls = 2;
    const flaky: typeof server.fetch = (url, init) => {
      if ((init?.method ?? "GET") === "POST" && url.includes("judgments") && offlineCalls > 0) {
        offlineCalls -= 1;
        return Promise.reject(new TypeError("network down"));
      }
      return server.fetch(url, init);
    };
    const events: QueueEvent[] = [];
    const api = new ApiClient("", flaky);
    const candidate = await api.submitPattern("_aroma_", "identification");
    const queue = new JudgmentQueue(api, (e) => events.push(e));
    queue.enqueue(makeJudgment(candidate.pattern_id, "v0", 0, "tp", "ann"));
    queue.enqueue(makeJudgment(candidate.pattern_id, "v0", 1, "fp", "ann"));

    await queue.flush(); // first judgment hits the outage
    expect(queue.size).toBe(2);
    expect(events.at(-1)).toEqual({ type: "offline", pending: 2 });

    await queue.flush(); // still down once more
    expect(queue.size).toBe(2);

    await queue.flush(); // back online: both deliver in order
    expect(queue.size).toBe(0);
    expect(server.tallies(candidate.pattern_id)).toEqual({ tp: 1, fp: 1, unknown: 0 });
  });

  it("surfaces rejections inline without losing the rest of the queue", async () => {
    const server = new FakeServer(() => sampleExtracts(2));
    const { api, candidate } = await candidateOn(server);
    const events: QueueEvent[] = [];
    const queue = new JudgmentQueue(api, (e) => events.push(e));
    queue.enqueue(makeJudgment(candidate.pattern_id, "nowhere", 99, "tp", "ann"));
    queue.enqueue(makeJudgment(candidate.pattern_id, "v0", 1, "tp", "ann"));
    await queue.flush();
    expect(queue.size).toBe(0);
    expect(events[0].type).toBe("rejected");
    expect(events[1].type).toBe("ack");
    expect(server.tallies(candidate.pattern_id)).toEqual({ tp: 1, fp: 0, unknown: 0 });
  });
});
