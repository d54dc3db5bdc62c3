"""End-to-end runs shared by the CLI and the HTTP service.

Keeping fit + optimize in one place guarantees that both front ends
produce field-identical JSON for identical inputs.
"""

from dataclasses import dataclass, replace
from datetime import date, timedelta

from .errors import InsufficientData, WindowOutOfRange
from .forecast import FitConfig, fit_series, model_to_dict
from .optimizer import PolicyProblem, optimize_delta, result_to_dict
from .timeseries import (
    CaseSeries,
    RateSeries,
    derive_active,
    rolling_growth_rate,
    rolling_tpr,
)

RATE_WINDOW_DAYS = 7


@dataclass(frozen=True)
class RunSettings:
    window_days: int = 60
    end_date: date | None = None     # default: last date in the series
    lag_days: int = 14
    alpha: float = 1.0
    delta_max: int = 21
    growth_cap: float | None = None
    tpr_cap: float | None = None
    rate_caps_span_lag: bool = False


def fit_window(cs: CaseSeries, settings: RunSettings):
    """Trailing analysis window (start, end) of ``window_days`` days."""
    end = settings.end_date or cs.dates[-1]
    start = end - timedelta(days=settings.window_days - 1)
    if start < cs.dates[0] or end > cs.dates[-1]:
        raise WindowOutOfRange(
            f"window {start}..{end} not covered by data "
            f"{cs.dates[0]}..{cs.dates[-1]}")
    return start, end


def _aligned_rate(rate: RateSeries, window_start: date, window_end: date) -> RateSeries:
    keep = [i for i, d in enumerate(rate.dates)
            if window_start <= d <= window_end]
    if not keep:
        raise InsufficientData("no rate observations inside the fit window")
    dates = tuple(rate.dates[i] for i in keep)
    day_index = [(d - window_start).days + 1 for d in dates]
    return RateSeries(dates=dates, value=rate.value[keep],
                      window_days=rate.window_days, kind=rate.kind,
                      day_index=day_index)


def fit_active_model(cs: CaseSeries, settings: RunSettings, config: FitConfig):
    start, end = fit_window(cs, settings)
    active = derive_active(cs, start, end)
    return fit_series(active, config), active


def run_optimize(cs: CaseSeries, resources, settings: RunSettings,
                 config: FitConfig) -> dict:
    """Fit the active-case model (plus rate models when caps are set) and
    optimize the lockdown delay. Returns {"model": ..., "result": ...}."""
    start, end = fit_window(cs, settings)
    active = derive_active(cs, start, end)
    model = fit_series(active, config)

    def rate_model(series_fn):
        rate = _aligned_rate(series_fn(cs, RATE_WINDOW_DAYS), start, end)
        rate_config = replace(config, window_days=len(rate))
        return fit_series(rate, rate_config)

    growth_model = rate_model(rolling_growth_rate) if settings.growth_cap is not None else None
    tpr_model = rate_model(rolling_tpr) if settings.tpr_cap is not None else None

    problem = PolicyProblem(
        t_c=settings.window_days,
        active_model=model,
        resources=tuple(resources),
        lag_days=settings.lag_days,
        alpha=settings.alpha,
        delta_max=settings.delta_max,
        growth_cap=settings.growth_cap,
        tpr_cap=settings.tpr_cap,
        growth_model=growth_model,
        tpr_model=tpr_model,
        rate_caps_span_lag=settings.rate_caps_span_lag,
        window_end_date=end,
    )
    result = optimize_delta(problem)
    return {"model": model_to_dict(model), "result": result_to_dict(result)}
