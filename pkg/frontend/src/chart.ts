// Requirement-vs-capacity chart data and a dependency-free SVG renderer.
// The chart plots the predicted requirement against the capacity steps
// for one constraint, taken straight from the service's margin trace —
// the decision margin officials act on.

import type { ConstraintReport } from "./api.js";

export interface ChartSeries {
  constraintId: string;
  days: number[];
  required: number[];
  limit: number[];
}

// The optimizer trace repeats days across delta scans; keep the last
// report per (constraint, day) and pick the constraint with the most
// points (the availability check of the binding resource in practice).
export function traceToChartSeries(
  trace: ConstraintReport[],
  constraintId?: string,
): ChartSeries | null {
  if (trace.length === 0) return null;
  const byConstraint = new Map<string, Map<number, ConstraintReport>>();
  for (const report of trace) {
    let days = byConstraint.get(report.constraint_id);
    if (!days) {
      days = new Map();
      byConstraint.set(report.constraint_id, days);
    }
    days.set(report.day_index, report);
  }
  const chosen =
    constraintId ??
    [...byConstraint.entries()].sort((a, b) => b[1].size - a[1].size)[0][0];
  const reports = byConstraint.get(chosen);
  if (!reports) return null;
  const days = [...reports.keys()].sort((a, b) => a - b);
  return {
    constraintId: chosen,
    days,
    required: days.map((d) => reports.get(d)!.required),
    limit: days.map((d) => reports.get(d)!.limit),
  };
}

export function renderChartSvg(
  series: ChartSeries,
  width = 640,
  height = 240,
): string {
  const pad = 36;
  const xs = series.days;
  const all = [...series.required, ...series.limit];
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const yMax = Math.max(...all) * 1.05 || 1;
  const x = (d: number) =>
    pad + ((d - xMin) / Math.max(xMax - xMin, 1)) * (width - 2 * pad);
  const y = (v: number) => height - pad - (v / yMax) * (height - 2 * pad);
  const line = (values: number[]) =>
    xs.map((d, i) => `${x(d).toFixed(1)},${y(values[i]).toFixed(1)}`).join(" ");
  return [
    `<svg viewBox="0 0 ${width} ${height}" role="img" data-testid="margin-chart">`,
    `<polyline fill="none" stroke="#b91c1c" stroke-width="2" ` +
      `stroke-dasharray="6 3" points="${line(series.limit)}" />`,
    `<polyline fill="none" stroke="#1d4ed8" stroke-width="2" ` +
      `points="${line(series.required)}" />`,
    `<text x="${pad}" y="16" font-size="12">${series.constraintId}: ` +
      `required (solid) vs capacity (dashed)</text>`,
    `</svg>`,
  ].join("");
}
