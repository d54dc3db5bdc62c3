// Shared test plumbing: fixture loading and a fetch stub that routes
// requests to captured service responses.

import { readFileSync } from "node:fs";
import { join } from "node:path";

export function fixture(name: string): string {
  // cwd is the package root under vitest; import.meta.url is rewritten
  // by the jsdom environment, so resolve from cwd instead
  return readFileSync(join(process.cwd(), "tests", "fixtures", name), "utf-8");
}

export function jsonFixture<T>(name: string): T {
  return JSON.parse(fixture(name)) as T;
}

export interface RecordedRequest {
  url: string;
  method: string;
  body: unknown;
}

export interface MockService {
  fetchFn: typeof fetch;
  requests: RecordedRequest[];
}

// Routes /v1/series to the captured upload response and /optimize to the
// fixture matching the requested oxygen availability, so tests can check
// that the UI shows exactly what the "service" returned.
export function mockService(): MockService {
  const requests: RecordedRequest[] = [];
  const fetchFn = (async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    const method = init?.method ?? "GET";
    const rawBody = typeof init?.body === "string" ? init.body : "";
    let body: unknown = rawBody;
    try {
      body = JSON.parse(rawBody);
    } catch {
      // CSV uploads stay as raw text
    }
    requests.push({ url, method, body });

    const json = (payload: unknown, status = 200) =>
      new Response(JSON.stringify(payload), {
        status,
        headers: { "content-type": "application/json" },
      });

    if (url.endsWith("/v1/series")) {
      if (!rawBody.trim().startsWith("date,")) {
        return json({ error: "MalformedInput", detail: "bad archive" }, 400);
      }
      return json(jsonFixture("series_response.json"));
    }
    if (url.includes("/optimize")) {
      const scenario = (body as any)?.scenario;
      const value = scenario?.resources?.[0]?.availability?.[0]?.[1];
      if (value >= 1e9) return json(jsonFixture("optimize_slack.json"));
      if (value <= 350) return json(jsonFixture("optimize_tight.json"));
      return json(jsonFixture("optimize_default.json"));
    }
    if (url.includes("/forecast")) {
      return json(jsonFixture("forecast_17.json"));
    }
    return json({ error: "NotFound", detail: url }, 404);
  }) as typeof fetch;
  return { fetchFn, requests };
}

export function flushMicrotasks(times = 6): Promise<void> {
  let chain = Promise.resolve();
  for (let i = 0; i < times; i++) chain = chain.then(() => undefined);
  return chain;
}
