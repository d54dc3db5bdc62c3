import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { LockplanClient, OptimizeResponse } from "../src/api.js";
import { DashboardStore } from "../src/store.js";
import { fixture, flushMicrotasks, jsonFixture, mockService } from "./helpers.js";

const CSV = fixture("delhi_head.csv");

describe("DashboardStore upload", () => {
  it("stores the session and immediately optimizes with the defaults", async () => {
    const service = mockService();
    const store = new DashboardStore(new LockplanClient("http://t", service.fetchFn));
    await store.upload(CSV, "text/csv");

    const state = store.getState();
    expect(state.sessionId).toBe("fixture-session");
    expect(state.summary?.active_latest).toBe(85575);
    expect(state.response?.result.delta_opt).toBe(3);
    expect(service.requests.map((r) => r.method)).toEqual(["POST", "POST"]);
  });

  it("surfaces service rejections by error name", async () => {
    const service = mockService();
    const store = new DashboardStore(new LockplanClient("http://t", service.fetchFn));
    await store.upload("not a csv at all", "text/csv");

    expect(store.getState().serviceError).toBe("MalformedInput");
    expect(store.getState().sessionId).toBeNull();
  });
});

describe("DashboardStore editForm", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  async function uploadedStore() {
    const service = mockService();
    const store = new DashboardStore(new LockplanClient("http://t", service.fetchFn));
    const done = store.upload(CSV, "text/csv");
    await vi.runAllTimersAsync();
    await done;
    return { store, service };
  }

  it("debounces a burst of edits into one optimize call", async () => {
    const { store, service } = await uploadedStore();
    const before = service.requests.length;

    store.editForm({ lagDays: 10 });
    store.editForm({ lagDays: 12 });
    store.editForm({ lagDays: 15 });
    expect(service.requests.length).toBe(before);

    await vi.runAllTimersAsync();
    expect(service.requests.length).toBe(before + 1);
    expect((service.requests.at(-1)!.body as any).scenario.lag_days).toBe(15);
  });

  it("does not call the service while the form is invalid", async () => {
    const { store, service } = await uploadedStore();
    const before = service.requests.length;

    store.editForm({ lagDays: -3 });
    await vi.runAllTimersAsync();

    expect(service.requests.length).toBe(before);
    expect(store.getState().fieldErrors["lagDays"]).toBeDefined();
  });

  it("recovers once the field is corrected", async () => {
    const { store, service } = await uploadedStore();
    store.editForm({ lagDays: -3 });
    store.editForm({ lagDays: 14 });
    await vi.runAllTimersAsync();

    expect(store.getState().fieldErrors).toEqual({});
    expect((service.requests.at(-1)!.body as any).scenario.lag_days).toBe(14);
  });

  it("ignores edits before any archive is uploaded", async () => {
    const service = mockService();
    const store = new DashboardStore(new LockplanClient("http://t", service.fetchFn));
    store.editForm({ lagDays: 7 });
    await vi.runAllTimersAsync();
    expect(service.requests.length).toBe(0);
  });
});

describe("DashboardStore latest-wins", () => {
  it("drops a slow stale response that lands after a newer one", async () => {
    const slack = jsonFixture<OptimizeResponse>("optimize_slack.json");
    const dflt = jsonFixture<OptimizeResponse>("optimize_default.json");

    let call = 0;
    let releaseFirst!: () => void;
    const firstGate = new Promise<void>((resolve) => (releaseFirst = resolve));
    const fetchFn = (async (input: RequestInfo | URL, init?: RequestInit) => {
      const url = String(input);
      if (url.endsWith("/v1/series")) {
        return new Response(JSON.stringify(jsonFixture("series_response.json")), {
          status: 200,
        });
      }
      call += 1;
      const mine = call;
      if (mine === 1) await firstGate;
      return new Response(JSON.stringify(mine === 1 ? dflt : slack), {
        status: 200,
      });
    }) as typeof fetch;

    const store = new DashboardStore(new LockplanClient("http://t", fetchFn), 0);
    // upload kicks off optimize #1, which stalls on the gate
    const uploading = store.upload(CSV, "text/csv");
    while (call < 1) await new Promise((resolve) => setTimeout(resolve, 1));
    await store.optimizeNow();
    releaseFirst();
    await uploading;
    await flushMicrotasks();

    expect(store.getState().response?.result.status).toBe(
      "unbounded_at_delta_max",
    );
  });
});
