import { describe, expect, test } from "vitest";

import { ApiError } from "../src/api";
import { GameStore } from "../src/store";
import { FakeApi, deferred, makeState } from "./helpers";

async function started(api: FakeApi): Promise<GameStore> {
  const store = new GameStore(api);
  await store.newGame({ rows: 2, cols: 2 });
  api.calls.length = 0;
  return store;
}

describe("GameStore", () => {
  test("a click on a grey tile posts exactly that move", async () => {
    const api = new FakeApi();
    const store = await started(api);
    api.moveResults = [makeState({ grid: ["WB", ".." ] })];
    await store.clickCell(0, 0);
    expect(api.moveCalls()).toEqual(["move 0,0"]);
    expect(store.state!.grid).toEqual(["WB", ".."]);
  });

  test("a click on an occupied tile sends nothing", async () => {
    const api = new FakeApi();
    api.createResult = makeState({ grid: ["W.", ".."], toMove: "W" });
    const store = await started(api);
    await store.clickCell(0, 0);
    expect(api.moveCalls()).toEqual([]);
  });

  test("a click out of turn sends nothing", async () => {
    const api = new FakeApi();
    api.createResult = makeState({ toMove: "B", humanColor: "W" });
    const store = await started(api);
    await store.clickCell(0, 0);
    expect(api.moveCalls()).toEqual([]);
  });

  test("a click on a finished game sends nothing", async () => {
    const api = new FakeApi();
    api.createResult = makeState({
      grid: ["W.", ".."],
      status: "finished",
      winner: "W",
    });
    const store = await started(api);
    await store.clickCell(1, 1);
    expect(api.moveCalls()).toEqual([]);
  });

  test("one request in flight: the second click is dropped", async () => {
    const api = new FakeApi();
    const store = await started(api);
    const gate = deferred<ReturnType<typeof makeState>>();
    api.moveResults = [gate.promise];
    const first = store.clickCell(0, 0);
    expect(store.pending).toBe(true);
    void store.clickCell(1, 1);
    gate.resolve(makeState({ grid: ["WB", ".."] }));
    await first;
    await store.idle();
    expect(api.moveCalls()).toEqual(["move 0,0"]);
    expect(store.pending).toBe(false);
  });

  test("a dropped reply resyncs from the server, never resubmits", async () => {
    const api = new FakeApi();
    const store = await started(api);
    api.moveResults = [new TypeError("connection lost")];
    const truth = makeState({ grid: ["WB", ".."], toMove: "W" });
    api.getResult = truth;
    await store.clickCell(0, 0);
    expect(api.moveCalls()).toEqual(["move 0,0"]);
    expect(api.calls).toContain("get");
    expect(store.state).toEqual(truth);
    expect(store.pending).toBe(false);
  });

  test("a conflict reply also resyncs", async () => {
    const api = new FakeApi();
    const store = await started(api);
    api.moveResults = [new ApiError(409, "tile-taken", "tile (0,0) is taken")];
    api.getResult = makeState({ grid: ["B.", ".."] });
    await store.clickCell(0, 0);
    expect(api.calls).toContain("get");
    expect(store.state!.grid).toEqual(["B.", ".."]);
  });

  test("a validation error is surfaced, not retried", async () => {
    const api = new FakeApi();
    const store = await started(api);
    api.moveResults = [new ApiError(400, "bad-request", "row out of range")];
    await store.clickCell(0, 0);
    expect(api.calls).not.toContain("get");
    expect(store.lastError).toBe("row out of range");
    expect(store.pending).toBe(false);
  });

  test("analysis is fetched for exact games and skipped otherwise", async () => {
    const exact = new FakeApi();
    exact.analysisResult = {
      winnerWithOptimalPlay: "W",
      bestMove: [0, 1],
      nodes: 5,
    };
    const store = new GameStore(exact);
    await store.newGame({ rows: 2, cols: 2 });
    expect(exact.calls).toContain("analysis");
    expect(store.analysis!.winnerWithOptimalPlay).toBe("W");

    const random = new FakeApi();
    random.createResult = makeState({ engine: "random", rows: 8, cols: 8 });
    const store2 = new GameStore(random);
    await store2.newGame({ rows: 8, cols: 8, engine: "random" });
    expect(random.calls).not.toContain("analysis");
    expect(store2.analysis).toBeNull();
  });

  test("resync replaces state with the server's", async () => {
    const api = new FakeApi();
    const store = await started(api);
    api.getResult = makeState({ grid: ["WB", "W."], toMove: "B" });
    await store.resync();
    expect(api.calls).toContain("get");
    expect(store.state!.grid).toEqual(["WB", "W."]);
  });

  test("listeners fire on every transition", async () => {
    const api = new FakeApi();
    const store = new GameStore(api);
    let fired = 0;
    store.subscribe(() => {
      fired += 1;
    });
    await store.newGame({ rows: 2, cols: 2 });
    expect(fired).toBe(2); // pending on, pending off
  });
});
