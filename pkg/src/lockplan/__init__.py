"""Decision-support toolkit: short-term epidemic forecasting plus
resource-constrained lockdown-delay optimization."""

from . import errors
from .forecast import FitConfig, PolyModel, backtest, build_design, fit, fit_series, predict
from .optimizer import (
    ConstraintReport,
    PolicyProblem,
    PolicyResult,
    evaluate_constraints,
    explain,
    optimize_delta,
)
from .resources import (
    CapacityProfile,
    ResourceSpec,
    capacity_at,
    estimate_requirement_factor,
    load_scenario,
    requirement,
)
from .timeseries import (
    ActiveSeries,
    CaseSeries,
    RateSeries,
    derive_active,
    parse_case_archive,
    rolling_growth_rate,
    rolling_tpr,
    to_csv,
)

__version__ = "0.1.0"

__all__ = [
    "ActiveSeries", "CapacityProfile", "CaseSeries", "ConstraintReport",
    "FitConfig", "PolicyProblem", "PolicyResult", "PolyModel", "RateSeries",
    "ResourceSpec", "backtest", "build_design", "capacity_at",
    "derive_active", "errors", "estimate_requirement_factor",
    "evaluate_constraints", "explain", "fit", "fit_series", "load_scenario",
    "optimize_delta", "parse_case_archive", "predict", "requirement",
    "rolling_growth_rate", "rolling_tpr", "to_csv",
]
