/** Replaying a captured network log must reproduce identical server
 * state: every mutation the client emits carries a deterministic
 * request id, so the log is a faithful, idempotent transcript. */

import { describe, expect, it } from "vitest";

import { ApiClient, makeJudgment } from "../src/api.js";
import { JudgmentQueue } from "../src/queue.js";
import { FakeServer, sampleExtracts } from "./fake_server.js";

function freshServer() {
  return new FakeServer((source) =>
    source === "_nothing_" ? [] : sampleExtracts(10),
  );
}

async function session(server: FakeServer): Promise<void> {
  const api = new ApiClient("", server.fetch);
  const queue = new JudgmentQueue(api);
  const candidate = await api.submitPattern(
    "[<adj>] <smell_noun> _of_ [<noun>]",
    "extraction",
  );
  await api.submitPattern("_nothing_", "identification"); // removed outright
  for (let i = 0; i < 8; i++) {
    queue.enqueue(makeJudgment(candidate.pattern_id, "v0", i, "tp", "ann1"));
  }
  for (let i = 8; i < 10; i++) {
    queue.enqueue(makeJudgment(candidate.pattern_id, "v0", i, "fp", "ann1"));
  }
  await queue.flush();
  await api.advance(0, [], false);
}

describe("network log replay", () => {
  it("reproduces identical server state", async () => {
    const live = freshServer();
    await session(live);

    const replayed = freshServer();
    await replayed.replay(live.log);
    expect(replayed.snapshot()).toBe(live.snapshot());
  });

  it("is idempotent: replaying the log twice changes nothing", async () => {
    const live = freshServer();
    await session(live);

    const replayed = freshServer();
    await replayed.replay(live.log);
    const once = replayed.snapshot();
    await replayed.replay(live.log);
    expect(replayed.snapshot()).toBe(once);
    expect(replayed.cycle).toBe(1);
  });
});
