// Dashboard state machine: one session, one scenario form, debounced
// optimize calls with latest-wins cancellation.

import {
  ApiError,
  LockplanClient,
  OptimizeResponse,
  SeriesSummary,
} from "./api.js";
import {
  ScenarioFormState,
  delhiDefaults,
  toOptimizeBody,
  validateForm,
} from "./validation.js";

export interface DashboardState {
  sessionId: string | null;
  summary: SeriesSummary | null;
  form: ScenarioFormState;
  fieldErrors: Record<string, string>;
  serviceError: string | null;
  response: OptimizeResponse | null;
  pending: boolean;
}

type Listener = (state: DashboardState) => void;

export const OPTIMIZE_DEBOUNCE_MS = 300;

export class DashboardStore {
  private state: DashboardState = {
    sessionId: null,
    summary: null,
    form: delhiDefaults(),
    fieldErrors: {},
    serviceError: null,
    response: null,
    pending: false,
  };
  private listeners: Listener[] = [];
  private debounceHandle: ReturnType<typeof setTimeout> | null = null;
  private requestSeq = 0;
  private abort: AbortController | null = null;

  constructor(
    private client: LockplanClient,
    private debounceMs: number = OPTIMIZE_DEBOUNCE_MS,
  ) {}

  getState(): DashboardState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private set(patch: Partial<DashboardState>) {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  async upload(content: string, contentType: "text/csv" | "application/json") {
    try {
      const response = await this.client.uploadSeries(content, contentType);
      this.set({
        sessionId: response.session_id,
        summary: response.summary,
        serviceError: null,
        response: null,
      });
      await this.optimizeNow();
    } catch (err) {
      if (err instanceof ApiError) {
        this.set({ serviceError: err.errorName, summary: null, sessionId: null });
      } else {
        throw err;
      }
    }
  }

  // Debounced entry point for every scenario edit.
  editForm(patch: Partial<ScenarioFormState>) {
    const form = { ...this.state.form, ...patch };
    const fieldErrors = validateForm(form);
    this.set({ form, fieldErrors });
    if (Object.keys(fieldErrors).length > 0 || !this.state.sessionId) return;
    if (this.debounceHandle !== null) clearTimeout(this.debounceHandle);
    this.debounceHandle = setTimeout(() => {
      this.debounceHandle = null;
      void this.optimizeNow();
    }, this.debounceMs);
  }

  async optimizeNow(): Promise<void> {
    const { sessionId, form } = this.state;
    if (!sessionId) return;
    const seq = ++this.requestSeq;
    this.abort?.abort();
    this.abort = new AbortController();
    this.set({ pending: true });
    try {
      const response = await this.client.optimize(
        sessionId,
        toOptimizeBody(form),
        this.abort.signal,
      );
      if (seq !== this.requestSeq) return; // a newer request superseded us
      this.set({ response, serviceError: null, pending: false });
    } catch (err) {
      if (seq !== this.requestSeq) return;
      if (err instanceof ApiError) {
        this.set({ serviceError: err.errorName, pending: false });
      } else if ((err as Error).name === "AbortError") {
        return;
      } else {
        this.set({ pending: false });
        throw err;
      }
    }
  }
}
