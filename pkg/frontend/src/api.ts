// Typed client for the lockplan HTTP service. The dashboard never
// computes forecasts or deltas itself; every number comes from here.

export interface SeriesSummary {
  region: string;
  start_date: string;
  end_date: string;
  days: number;
  active_latest: number;
  growth_7d: number | null;
  tpr_7d: number | null;
}

export interface SeriesResponse {
  session_id: string;
  summary: SeriesSummary;
}

export interface ConstraintReport {
  constraint_id: string;
  day_index: number;
  required: number;
  limit: number;
  margin: number;
  satisfied: boolean;
}

export interface PolicyResult {
  status: "optimal" | "infeasible_now" | "unbounded_at_delta_max";
  delta_opt: number | null;
  objective: number | null;
  lockdown_date: string | null;
  binding: ConstraintReport[];
  trace: ConstraintReport[];
}

export interface FittedModel {
  target: string;
  degree: number;
  coefficients: number[];
  fit_window: [number, number];
  weight_scheme: string;
  residual_rms: number;
}

export interface OptimizeResponse {
  model: FittedModel;
  result: PolicyResult;
}

export interface ForecastPoint {
  date: string;
  predicted_active: number;
  low_confidence: boolean;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public errorName: string,
    detail: string,
  ) {
    super(detail || errorName);
  }
}

async function raiseFor(response: Response): Promise<never> {
  let name = `HTTP ${response.status}`;
  let detail = "";
  try {
    const payload = await response.json();
    if (payload && typeof payload.error === "string") name = payload.error;
    if (payload && typeof payload.detail === "string") detail = payload.detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  throw new ApiError(response.status, name, detail);
}

export class LockplanClient {
  constructor(
    private baseUrl: string,
    private fetchFn: typeof fetch = fetch,
  ) {}

  async uploadSeries(
    content: string,
    contentType: "text/csv" | "application/json",
  ): Promise<SeriesResponse> {
    const response = await this.fetchFn(`${this.baseUrl}/v1/series`, {
      method: "POST",
      headers: { "content-type": contentType },
      body: content,
    });
    if (!response.ok) await raiseFor(response);
    return response.json();
  }

  async optimize(
    sessionId: string,
    body: unknown,
    signal?: AbortSignal,
  ): Promise<OptimizeResponse> {
    const response = await this.fetchFn(
      `${this.baseUrl}/v1/sessions/${sessionId}/optimize`,
      {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(body),
        signal,
      },
    );
    if (!response.ok) await raiseFor(response);
    return response.json();
  }

  async forecast(sessionId: string, days: number): Promise<ForecastPoint[]> {
    const response = await this.fetchFn(
      `${this.baseUrl}/v1/sessions/${sessionId}/forecast?days=${days}`,
    );
    if (!response.ok) await raiseFor(response);
    const payload = await response.json();
    return payload.predictions;
  }
}
