"""Lockdown-delay optimizer.

Scans integer delays delta = 0..delta_max, checking resource constraints
over [t_c, t_c + lag + delta] and rate caps over [t_c, t_c + delta]
against polynomial predictions, and returns the largest feasible delay
(economic objective alpha * delta grows with delta, so the largest
feasible prefix delay is optimal).
"""

from dataclasses import dataclass
from datetime import date, timedelta

import numpy as np

from .errors import MissingModel, UsageError
from .forecast import PolyModel
from .kernels import horner_eval
from .resources import capacity_at

STATUS_OPTIMAL = "optimal"
STATUS_INFEASIBLE = "infeasible_now"
STATUS_UNBOUNDED = "unbounded_at_delta_max"


@dataclass(frozen=True)
class PolicyProblem:
    t_c: int
    active_model: PolyModel
    resources: tuple = ()
    lag_days: int = 14
    alpha: float = 1.0
    delta_max: int = 21
    growth_cap: float | None = None
    tpr_cap: float | None = None
    growth_model: PolyModel | None = None
    tpr_model: PolyModel | None = None
    # paper-literal default: rate caps are checked over [t_c, t_c+delta]
    # only; set True to extend them through the lag window as well
    rate_caps_span_lag: bool = False
    window_end_date: date | None = None

    def __post_init__(self):
        if self.t_c < 1:
            raise UsageError("t_c must be >= 1")
        if self.lag_days < 0 or self.delta_max < 0:
            raise UsageError("lag_days and delta_max must be >= 0")
        if self.alpha <= 0:
            raise UsageError("alpha must be > 0")
        for cap, name in ((self.growth_cap, "growth_cap"),
                          (self.tpr_cap, "tpr_cap")):
            if cap is not None and not (0 < cap < 1):
                raise UsageError(f"{name} must be in (0, 1)")
        object.__setattr__(self, "resources", tuple(self.resources))


@dataclass(frozen=True)
class ConstraintReport:
    constraint_id: str
    day_index: int
    required: float
    limit: float
    satisfied: bool

    @property
    def margin(self) -> float:
        return self.limit - self.required


@dataclass(frozen=True)
class PolicyResult:
    status: str
    delta_opt: int | None
    objective: float | None
    binding: tuple = ()
    trace: tuple = ()
    lockdown_date: date | None = None


def _predicted_active(model: PolyModel, ts: np.ndarray) -> np.ndarray:
    # quartic extrapolation can dip negative; requirements floor at 0
    return np.maximum(horner_eval(model.coefficients, ts), 0.0)


def evaluate_constraints(problem: PolicyProblem, delta: int) -> list:
    """All per-day constraint checks for one candidate delay."""
    if not (0 <= delta <= problem.delta_max):
        raise UsageError(f"delta {delta} outside [0, {problem.delta_max}]")
    reports = []
    t_res = np.arange(problem.t_c, problem.t_c + problem.lag_days + delta + 1,
                      dtype=np.float64)
    if problem.resources:
        active = _predicted_active(problem.active_model, t_res)
        for res in problem.resources:
            checks = [("availability", 1.0, res.availability)]
            if res.storage is not None:
                checks.append(("storage", res.storage.unit_factor,
                               res.storage.capacity))
            if res.distribution is not None:
                checks.append(("distribution", res.distribution.unit_factor,
                               res.distribution.capacity))
            for kind, unit_factor, profile in checks:
                for t, a in zip(t_res, active):
                    required = res.requirement_factor * a * unit_factor
                    limit = capacity_at(profile, t)
                    reports.append(ConstraintReport(
                        constraint_id=f"{res.id}:{kind}", day_index=int(t),
                        required=float(required), limit=float(limit),
                        satisfied=bool(required <= limit)))
    rate_end = delta + (problem.lag_days if problem.rate_caps_span_lag else 0)
    t_rate = np.arange(problem.t_c, problem.t_c + rate_end + 1,
                       dtype=np.float64)
    for cap, model, cid in ((problem.growth_cap, problem.growth_model,
                             "growth_rate"),
                            (problem.tpr_cap, problem.tpr_model, "tpr")):
        if cap is None:
            continue
        if model is None:
            raise MissingModel(f"{cid} cap set but no fitted {cid} model given")
        values = horner_eval(model.coefficients, t_rate)
        for t, v in zip(t_rate, values):
            reports.append(ConstraintReport(
                constraint_id=cid, day_index=int(t), required=float(v),
                limit=float(cap), satisfied=bool(v <= cap)))
    return reports


def optimize_delta(problem: PolicyProblem) -> PolicyResult:
    """Largest delay whose whole constraint set is satisfied.

    Scans delta = 0, 1, ... and stops at the first infeasible delay, so
    the result is the longest feasible prefix; deterministic.
    """
    trace = []
    first_violation = None
    delta_opt = None
    for delta in range(problem.delta_max + 1):
        reports = evaluate_constraints(problem, delta)
        trace.extend(reports)
        violated = [r for r in reports if not r.satisfied]
        if violated:
            first_day = min(r.day_index for r in violated)
            first_violation = tuple(r for r in violated
                                    if r.day_index == first_day)
            break
        delta_opt = delta
    if delta_opt is None:
        return PolicyResult(status=STATUS_INFEASIBLE, delta_opt=None,
                            objective=None, binding=first_violation or (),
                            trace=tuple(trace),
                            lockdown_date=_lockdown_date(problem, 0))
    if first_violation is None:
        return PolicyResult(status=STATUS_UNBOUNDED, delta_opt=delta_opt,
                            objective=problem.alpha * delta_opt,
                            trace=tuple(trace),
                            lockdown_date=_lockdown_date(problem, delta_opt))
    return PolicyResult(status=STATUS_OPTIMAL, delta_opt=delta_opt,
                        objective=problem.alpha * delta_opt,
                        binding=first_violation, trace=tuple(trace),
                        lockdown_date=_lockdown_date(problem, delta_opt))


def _lockdown_date(problem: PolicyProblem, delta: int) -> date | None:
    # lockdown begins the day after the delay expires: window end + delta + 1
    if problem.window_end_date is None:
        return None
    return problem.window_end_date + timedelta(days=delta + 1)


def explain(result: PolicyResult) -> str:
    """Human-readable decision report."""
    lines = []
    if result.status == STATUS_INFEASIBLE:
        lines.append("Status: INFEASIBLE NOW — constraints already violated "
                     "with zero delay.")
        lines.append("Recommendation: immediate lockdown.")
    elif result.status == STATUS_UNBOUNDED:
        lines.append(f"Status: no violation within the scan horizon "
                     f"(delta = {result.delta_opt} still feasible).")
        lines.append("Recommendation: no lockdown needed within horizon; "
                     "re-evaluate with tomorrow's data.")
    else:
        lines.append(f"Status: optimal, delta = {result.delta_opt} day(s) of "
                     f"delay before lockdown.")
        lines.append(f"Objective (alpha x delta): {result.objective:g}")
        if result.lockdown_date is not None:
            lines.append(f"Recommended lockdown start date: "
                         f"{result.lockdown_date.strftime('%b %d %Y')} "
                         f"({result.lockdown_date.isoformat()})")
    if result.binding:
        b = result.binding[0]
        lines.append(f"Binding constraint: {b.constraint_id} at day "
                     f"{b.day_index} (required {b.required:.1f} vs limit "
                     f"{b.limit:.1f}).")
    if result.trace:
        lines.append("")
        lines.append("Per-day margins (worst day per constraint and delta "
                     "scan):")
        lines.append(f"{'constraint':<28}{'day':>6}{'required':>14}"
                     f"{'limit':>14}{'margin':>14}")
        seen = set()
        for r in result.trace:
            key = (r.constraint_id, r.day_index)
            if key in seen:
                continue
            seen.add(key)
            lines.append(f"{r.constraint_id:<28}{r.day_index:>6}"
                         f"{r.required:>14.2f}{r.limit:>14.2f}"
                         f"{r.margin:>14.2f}")
    return "\n".join(lines)


def report_to_dict(report: ConstraintReport) -> dict:
    return {
        "constraint_id": report.constraint_id,
        "day_index": report.day_index,
        "required": report.required,
        "limit": report.limit,
        "margin": report.margin,
        "satisfied": report.satisfied,
    }


def result_to_dict(result: PolicyResult) -> dict:
    return {
        "status": result.status,
        "delta_opt": result.delta_opt,
        "objective": result.objective,
        "lockdown_date": (result.lockdown_date.isoformat()
                          if result.lockdown_date else None),
        "binding": [report_to_dict(r) for r in result.binding],
        "trace": [report_to_dict(r) for r in result.trace],
    }
