import type { PolicyResult, SeriesSummary } from "./api.js";

const MONTHS = [
  "Jan", "Feb", "Mar", "Apr", "May", "Jun",
  "Jul", "Aug", "Sep", "Oct", "Nov", "Dec",
];

export function shortDate(iso: string): string {
  const [, month, day] = iso.split("-").map(Number);
  return `${MONTHS[month - 1]} ${day}`;
}

export function bannerText(result: PolicyResult): string {
  switch (result.status) {
    case "optimal": {
      const days = result.delta_opt ?? 0;
      const when = result.lockdown_date
        ? ` (${shortDate(result.lockdown_date)})`
        : "";
      return `lockdown in ${days} day${days === 1 ? "" : "s"}${when}`;
    }
    case "infeasible_now":
      return "immediate lockdown recommended";
    case "unbounded_at_delta_max":
      return "no lockdown needed within horizon";
  }
}

export function formatCount(value: number): string {
  return value.toLocaleString("en-US");
}

export function formatPercent(value: number | null): string {
  if (value === null) return "unavailable";
  return `${(value * 100).toFixed(2)}%`;
}

export function summaryTiles(summary: SeriesSummary): {
  range: string;
  active: string;
  growth: string;
  tpr: string;
} {
  return {
    range: `${summary.start_date} to ${summary.end_date} (${summary.days} days)`,
    active: formatCount(summary.active_latest),
    growth: formatPercent(summary.growth_7d),
    tpr: formatPercent(summary.tpr_7d),
  };
}
