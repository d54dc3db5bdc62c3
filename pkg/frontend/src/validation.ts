// Scenario form state and client-side validation. The rules mirror the
// service's policy-problem invariants so that any form the UI lets
// through is accepted server-side.

export interface CapacityStep {
  start: number;
  value: number;
}

export interface SideCapacityForm {
  enabled: boolean;
  unitFactor: number;
  steps: CapacityStep[];
}

export interface ResourceRow {
  id: string;
  name: string;
  unit: string;
  requirementFactor: number;
  availabilitySteps: CapacityStep[];
  storage: SideCapacityForm;
  distribution: SideCapacityForm;
}

export interface ScenarioFormState {
  resources: ResourceRow[];
  growthCapEnabled: boolean;
  growthCap: number;
  tprCapEnabled: boolean;
  tprCap: number;
  lagDays: number;
  deltaMax: number;
  weightScheme: string; // "uniform" | "exp:<lambda>"
  windowDays: number;
  endDate: string | null;
}

export type FieldErrors = Record<string, string>;

export function defaultSideCapacity(): SideCapacityForm {
  return { enabled: false, unitFactor: 1.0, steps: [{ start: 1, value: 0 }] };
}

export function delhiDefaults(): ScenarioFormState {
  return {
    resources: [
      {
        id: "oxygen",
        name: "Medical oxygen",
        unit: "MT/day",
        requirementFactor: 0.00817,
        availabilitySteps: [{ start: 1, value: 480 }],
        storage: defaultSideCapacity(),
        distribution: defaultSideCapacity(),
      },
    ],
    growthCapEnabled: false,
    growthCap: 0.05,
    tprCapEnabled: false,
    tprCap: 0.1,
    lagDays: 14,
    deltaMax: 21,
    weightScheme: "uniform",
    windowDays: 60,
    endDate: "2021-04-06",
  };
}

function validateSteps(steps: CapacityStep[], prefix: string, errors: FieldErrors) {
  if (steps.length === 0) {
    errors[prefix] = "at least one capacity step is required";
    return;
  }
  for (let i = 0; i < steps.length; i++) {
    const step = steps[i];
    if (!Number.isFinite(step.start) || !Number.isFinite(step.value)) {
      errors[`${prefix}.${i}`] = "steps need numeric start and value";
      continue;
    }
    if (step.value < 0) {
      errors[`${prefix}.${i}.value`] = "capacity must be >= 0";
    }
    if (i > 0 && step.start <= steps[i - 1].start) {
      errors[`${prefix}.${i}.start`] = "step starts must strictly increase";
    }
  }
}

export function validateForm(state: ScenarioFormState): FieldErrors {
  const errors: FieldErrors = {};
  if (!Number.isInteger(state.lagDays) || state.lagDays < 0) {
    errors["lagDays"] = "lag must be a non-negative integer";
  }
  if (!Number.isInteger(state.deltaMax) || state.deltaMax < 0) {
    errors["deltaMax"] = "delta max must be a non-negative integer";
  }
  if (!Number.isInteger(state.windowDays) || state.windowDays < 5) {
    errors["windowDays"] = "fit window must be at least 5 days";
  }
  if (state.growthCapEnabled && !(state.growthCap > 0 && state.growthCap < 1)) {
    errors["growthCap"] = "growth cap must be a fraction in (0, 1)";
  }
  if (state.tprCapEnabled && !(state.tprCap > 0 && state.tprCap < 1)) {
    errors["tprCap"] = "TPR cap must be a fraction in (0, 1)";
  }
  if (state.weightScheme !== "uniform") {
    const match = /^exp:(.+)$/.exec(state.weightScheme);
    const decay = match ? Number(match[1]) : NaN;
    if (!(decay > 0 && decay <= 1)) {
      errors["weightScheme"] = "weights must be uniform or exp:<0<lambda<=1>";
    }
  }
  const seen = new Set<string>();
  state.resources.forEach((row, i) => {
    const prefix = `resources.${i}`;
    if (!row.id.trim()) errors[`${prefix}.id`] = "resource id is required";
    if (seen.has(row.id)) errors[`${prefix}.id`] = "resource ids must be unique";
    seen.add(row.id);
    if (!(row.requirementFactor >= 0)) {
      errors[`${prefix}.requirementFactor`] = "factor must be >= 0";
    }
    validateSteps(row.availabilitySteps, `${prefix}.availability`, errors);
    for (const side of ["storage", "distribution"] as const) {
      if (!row[side].enabled) continue;
      if (!(row[side].unitFactor >= 0)) {
        errors[`${prefix}.${side}.unitFactor`] = "unit factor must be >= 0";
      }
      validateSteps(row[side].steps, `${prefix}.${side}`, errors);
    }
  });
  return errors;
}

export function isValid(state: ScenarioFormState): boolean {
  return Object.keys(validateForm(state)).length === 0;
}

// Total mapping from a validated form to the /optimize request body.
export function toOptimizeBody(state: ScenarioFormState): object {
  const body: Record<string, unknown> = {
    scenario: {
      lag_days: state.lagDays,
      delta_max: state.deltaMax,
      resources: state.resources.map((row) => {
        const resource: Record<string, unknown> = {
          id: row.id,
          name: row.name || row.id,
          unit: row.unit,
          requirement_factor: row.requirementFactor,
          availability: row.availabilitySteps.map((s) => [s.start, s.value]),
        };
        if (row.storage.enabled) {
          resource["storage"] = {
            unit_storage: row.storage.unitFactor,
            capacity: row.storage.steps.map((s) => [s.start, s.value]),
          };
        }
        if (row.distribution.enabled) {
          resource["distribution"] = {
            unit_distribution: row.distribution.unitFactor,
            capacity: row.distribution.steps.map((s) => [s.start, s.value]),
          };
        }
        return resource;
      }),
    },
    fit: {
      window_days: state.windowDays,
      weight_scheme: state.weightScheme,
      ...(state.endDate ? { end_date: state.endDate } : {}),
    },
  };
  if (state.growthCapEnabled) body["growth_cap"] = state.growthCap;
  if (state.tprCapEnabled) body["tpr_cap"] = state.tprCap;
  return body;
}
