// DOM wiring for the dashboard. Everything displayed comes from service
// responses held in the store; this module only renders and forwards
// form edits.

import { LockplanClient } from "./api.js";
import { renderChartSvg, traceToChartSeries } from "./chart.js";
import { bannerText, summaryTiles } from "./format.js";
import { DashboardStore, DashboardState } from "./store.js";
import { CapacityStep, ScenarioFormState } from "./validation.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text = "",
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  if (text) node.textContent = text;
  return node;
}

function parseSteps(text: string): CapacityStep[] {
  return text
    .split(";")
    .map((chunk) => chunk.trim())
    .filter(Boolean)
    .map((chunk) => {
      const [start, value] = chunk.split(",").map((x) => Number(x.trim()));
      return { start, value };
    });
}

function stepsToText(steps: CapacityStep[]): string {
  return steps.map((s) => `${s.start},${s.value}`).join("; ");
}

export function createApp(
  root: HTMLElement,
  client: LockplanClient,
  debounceMs?: number,
): DashboardStore {
  const store = new DashboardStore(client, debounceMs);

  // --- upload view ---
  const uploadSection = el("section", { "data-testid": "upload-view" });
  uploadSection.appendChild(el("h2", {}, "1. Upload case archive"));
  const fileInput = el("input", {
    type: "file",
    "data-testid": "upload-file",
    accept: ".csv,.json",
  });
  const pasteArea = el("textarea", {
    "data-testid": "upload-paste",
    placeholder: "...or paste CSV/JSON here",
    rows: "4",
  });
  const uploadButton = el("button", { "data-testid": "upload-button" }, "Upload");
  const uploadError = el("p", { "data-testid": "upload-error", class: "error" });
  const tiles = el("div", { class: "tiles" });
  const tileRange = el("div", { "data-testid": "tile-range", class: "tile" });
  const tileActive = el("div", { "data-testid": "tile-active", class: "tile" });
  const tileGrowth = el("div", { "data-testid": "tile-growth", class: "tile" });
  const tileTpr = el("div", { "data-testid": "tile-tpr", class: "tile" });
  tiles.append(tileRange, tileActive, tileGrowth, tileTpr);
  uploadSection.append(fileInput, pasteArea, uploadButton, uploadError, tiles);

  async function doUpload() {
    let content = pasteArea.value;
    const file = fileInput.files?.[0];
    if (file) content = await file.text();
    if (!content.trim()) return;
    const isJson = content.trimStart().startsWith("{");
    await store.upload(content, isJson ? "application/json" : "text/csv");
  }
  uploadButton.addEventListener("click", () => void doUpload());

  // --- scenario form ---
  const formSection = el("section", { "data-testid": "scenario-form" });
  formSection.appendChild(el("h2", {}, "2. Scenario"));
  const resourcesDiv = el("div", { "data-testid": "resource-rows" });
  formSection.appendChild(resourcesDiv);

  function numberField(
    label: string,
    testId: string,
    value: number,
    onChange: (v: number) => void,
    step = "1",
  ): HTMLElement {
    const wrap = el("label", { class: "field" }, label + " ");
    const input = el("input", {
      type: "number",
      step,
      "data-testid": testId,
      value: String(value),
    });
    input.addEventListener("input", () => onChange(Number(input.value)));
    wrap.appendChild(input);
    const error = el("span", {
      class: "error",
      "data-testid": `${testId}-error`,
    });
    wrap.appendChild(error);
    return wrap;
  }

  function renderResources(form: ScenarioFormState) {
    resourcesDiv.textContent = "";
    form.resources.forEach((row, i) => {
      const rowDiv = el("div", {
        class: "resource-row",
        "data-testid": `resource-${i}`,
      });
      rowDiv.appendChild(el("strong", {}, `${row.name} (${row.unit})`));
      rowDiv.appendChild(
        numberField(
          "per-case factor",
          `resource-${i}-factor`,
          row.requirementFactor,
          (v) => {
            const resources = structuredClone(store.getState().form.resources);
            resources[i].requirementFactor = v;
            store.editForm({ resources });
          },
          "0.00001",
        ),
      );
      const stepsLabel = el("label", { class: "field" }, "availability steps ");
      const stepsInput = el("input", {
        type: "text",
        "data-testid": `resource-${i}-availability`,
        value: stepsToText(row.availabilitySteps),
      });
      stepsInput.addEventListener("input", () => {
        const resources = structuredClone(store.getState().form.resources);
        resources[i].availabilitySteps = parseSteps(stepsInput.value);
        store.editForm({ resources });
      });
      stepsLabel.appendChild(stepsInput);
      const stepsError = el("span", {
        class: "error",
        "data-testid": `resource-${i}-availability-error`,
      });
      stepsLabel.appendChild(stepsError);
      rowDiv.appendChild(stepsLabel);
      resourcesDiv.appendChild(rowDiv);
    });
  }

  formSection.appendChild(
    numberField("lag days", "lag-days", store.getState().form.lagDays, (v) =>
      store.editForm({ lagDays: v }),
    ),
  );
  formSection.appendChild(
    numberField(
      "max delay scanned",
      "delta-max",
      store.getState().form.deltaMax,
      (v) => store.editForm({ deltaMax: v }),
    ),
  );
  const growthToggle = el("input", {
    type: "checkbox",
    "data-testid": "growth-cap-enabled",
  });
  growthToggle.addEventListener("change", () =>
    store.editForm({ growthCapEnabled: growthToggle.checked }),
  );
  const growthLabel = el("label", {}, "growth cap ");
  growthLabel.appendChild(growthToggle);
  formSection.appendChild(growthLabel);
  formSection.appendChild(
    numberField(
      "growth cap value",
      "growth-cap",
      store.getState().form.growthCap,
      (v) => store.editForm({ growthCap: v }),
      "0.01",
    ),
  );

  // --- result view ---
  const resultSection = el("section", { "data-testid": "optimizer-view" });
  resultSection.appendChild(el("h2", {}, "3. Recommendation"));
  const banner = el("div", { "data-testid": "banner", class: "banner" });
  const deltaBadge = el("span", { "data-testid": "delta-badge" });
  const bindingBadge = el("span", { "data-testid": "binding-badge" });
  const serviceError = el("p", {
    "data-testid": "service-error",
    class: "error",
  });
  const chartDiv = el("div", { "data-testid": "chart" });
  const marginTable = el("table", { "data-testid": "margin-table" });
  resultSection.append(
    banner,
    deltaBadge,
    bindingBadge,
    serviceError,
    chartDiv,
    marginTable,
  );

  root.append(uploadSection, formSection, resultSection);
  renderResources(store.getState().form);

  function renderFieldErrors(state: DashboardState) {
    const scope = formSection;
    for (const node of scope.querySelectorAll(".error[data-testid$='-error']")) {
      node.textContent = "";
    }
    for (const [key, message] of Object.entries(state.fieldErrors)) {
      // map validation keys to the matching field's error slot
      const testId = key.startsWith("resources.")
        ? key.replace(/^resources\.(\d+)\.(\w+).*$/, "resource-$1-$2")
        : key.replace(/([A-Z])/g, "-$1").toLowerCase();
      const slot = scope.querySelector(`[data-testid="${testId}-error"]`);
      if (slot) slot.textContent = message;
    }
  }

  store.subscribe((state) => {
    uploadError.textContent = state.serviceError ?? "";
    if (state.summary) {
      const t = summaryTiles(state.summary);
      tileRange.textContent = t.range;
      tileActive.textContent = `active: ${t.active}`;
      tileGrowth.textContent = `7-day growth: ${t.growth}`;
      tileTpr.textContent = `7-day TPR: ${t.tpr}`;
    }
    renderFieldErrors(state);
    serviceError.textContent =
      state.summary && state.serviceError ? state.serviceError : "";
    if (state.response) {
      const result = state.response.result;
      banner.textContent = bannerText(result);
      deltaBadge.textContent =
        result.delta_opt === null ? "" : `delta = ${result.delta_opt}`;
      bindingBadge.textContent = result.binding.length
        ? `binding: ${result.binding[0].constraint_id}`
        : "";
      const series = traceToChartSeries(result.trace);
      chartDiv.innerHTML = series ? renderChartSvg(series) : "";
      marginTable.innerHTML =
        "<tr><th>constraint</th><th>day</th><th>required</th>" +
        "<th>limit</th><th>margin</th></tr>" +
        result.trace
          .slice(-40)
          .map(
            (r) =>
              `<tr class="${r.satisfied ? "ok" : "violated"}">` +
              `<td>${r.constraint_id}</td><td>${r.day_index}</td>` +
              `<td>${r.required.toFixed(1)}</td><td>${r.limit.toFixed(1)}</td>` +
              `<td>${r.margin.toFixed(1)}</td></tr>`,
          )
          .join("");
    }
  });

  return store;
}

declare global {
  interface Window {
    LOCKPLAN_BASE_URL?: string;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  const baseUrl = window.LOCKPLAN_BASE_URL ?? "http://127.0.0.1:8000";
  createApp(document.getElementById("app")!, new LockplanClient(baseUrl));
}
