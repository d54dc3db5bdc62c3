import { describe, expect, it } from "vitest";

import {
  delhiDefaults,
  isValid,
  toOptimizeBody,
  validateForm,
} from "../src/validation.js";

describe("delhiDefaults", () => {
  it("is a valid form", () => {
    expect(validateForm(delhiDefaults())).toEqual({});
    expect(isValid(delhiDefaults())).toBe(true);
  });

  it("carries the oxygen baseline", () => {
    const form = delhiDefaults();
    expect(form.resources[0].requirementFactor).toBeCloseTo(0.00817);
    expect(form.resources[0].availabilitySteps).toEqual([
      { start: 1, value: 480 },
    ]);
    expect(form.lagDays).toBe(14);
    expect(form.deltaMax).toBe(21);
  });
});

describe("validateForm", () => {
  it("rejects negative lag and non-integer delta max", () => {
    const form = { ...delhiDefaults(), lagDays: -1, deltaMax: 2.5 };
    const errors = validateForm(form);
    expect(errors["lagDays"]).toMatch(/non-negative/);
    expect(errors["deltaMax"]).toMatch(/integer/);
  });

  it("rejects a too-short fit window", () => {
    const errors = validateForm({ ...delhiDefaults(), windowDays: 3 });
    expect(errors["windowDays"]).toMatch(/at least 5/);
  });

  it("requires rate caps to be fractions when enabled", () => {
    const ok = validateForm({
      ...delhiDefaults(),
      growthCapEnabled: true,
      growthCap: 0.05,
    });
    expect(ok).toEqual({});
    const bad = validateForm({
      ...delhiDefaults(),
      growthCapEnabled: true,
      growthCap: 1.5,
      tprCapEnabled: true,
      tprCap: 0,
    });
    expect(bad["growthCap"]).toBeDefined();
    expect(bad["tprCap"]).toBeDefined();
  });

  it("ignores cap values while the cap is disabled", () => {
    const form = { ...delhiDefaults(), growthCap: 99, tprCap: -1 };
    expect(validateForm(form)).toEqual({});
  });

  it("rejects non-increasing capacity steps", () => {
    const form = delhiDefaults();
    form.resources[0].availabilitySteps = [
      { start: 1, value: 480 },
      { start: 1, value: 500 },
    ];
    const errors = validateForm(form);
    expect(errors["resources.0.availability.1.start"]).toMatch(/increase/);
  });

  it("rejects negative capacities and factors", () => {
    const form = delhiDefaults();
    form.resources[0].availabilitySteps = [{ start: 1, value: -5 }];
    form.resources[0].requirementFactor = -0.1;
    const errors = validateForm(form);
    expect(errors["resources.0.availability.0.value"]).toBeDefined();
    expect(errors["resources.0.requirementFactor"]).toBeDefined();
  });

  it("rejects duplicate resource ids", () => {
    const form = delhiDefaults();
    form.resources = [form.resources[0], { ...form.resources[0] }];
    const errors = validateForm(form);
    expect(errors["resources.1.id"]).toMatch(/unique/);
  });

  it("accepts uniform and exponential weight schemes only", () => {
    expect(validateForm({ ...delhiDefaults(), weightScheme: "exp:0.97" })).toEqual({});
    expect(
      validateForm({ ...delhiDefaults(), weightScheme: "exp:1.5" })["weightScheme"],
    ).toBeDefined();
    expect(
      validateForm({ ...delhiDefaults(), weightScheme: "linear" })["weightScheme"],
    ).toBeDefined();
  });

  it("validates storage steps only when storage is enabled", () => {
    const form = delhiDefaults();
    form.resources[0].storage.steps = [];
    expect(validateForm(form)).toEqual({});
    form.resources[0].storage.enabled = true;
    expect(validateForm(form)["resources.0.storage"]).toMatch(/at least one/);
  });
});

describe("toOptimizeBody", () => {
  it("maps the default form to the service request shape", () => {
    const body = toOptimizeBody(delhiDefaults()) as Record<string, any>;
    expect(body.scenario.lag_days).toBe(14);
    expect(body.scenario.delta_max).toBe(21);
    expect(body.scenario.resources).toEqual([
      {
        id: "oxygen",
        name: "Medical oxygen",
        unit: "MT/day",
        requirement_factor: 0.00817,
        availability: [[1, 480]],
      },
    ]);
    expect(body.fit).toEqual({
      window_days: 60,
      weight_scheme: "uniform",
      end_date: "2021-04-06",
    });
    expect(body).not.toHaveProperty("growth_cap");
    expect(body).not.toHaveProperty("tpr_cap");
  });

  it("includes caps and side capacities only when enabled", () => {
    const form = delhiDefaults();
    form.growthCapEnabled = true;
    form.growthCap = 0.04;
    form.resources[0].storage = {
      enabled: true,
      unitFactor: 2.0,
      steps: [{ start: 1, value: 900 }],
    };
    const body = toOptimizeBody(form) as Record<string, any>;
    expect(body.growth_cap).toBe(0.04);
    expect(body.scenario.resources[0].storage).toEqual({
      unit_storage: 2.0,
      capacity: [[1, 900]],
    });
    expect(body.scenario.resources[0]).not.toHaveProperty("distribution");
  });

  it("omits end_date when the form leaves it unset", () => {
    const body = toOptimizeBody({ ...delhiDefaults(), endDate: null }) as any;
    expect(body.fit).not.toHaveProperty("end_date");
  });
});
