"""Weighted least-squares polynomial forecasting.

Fits a degree-4 (by default) polynomial to a trailing observation window
and evaluates predictions at future day indices. The solve is performed
on a time axis affinely mapped to [-1, 1] for conditioning, and the
coefficients are converted back to the raw day-index basis by exact
polynomial composition.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientData, SingularSystem, UsageError
from .kernels import design_powers, horner_eval

UNIFORM = "uniform"
VALIDITY_HORIZON_DAYS = 28
CONDITION_LIMIT = 1e12


def parse_weight_scheme(text: str):
    """Parse 'uniform' or 'exp:<lambda>' into (scheme, decay)."""
    if text == UNIFORM:
        return UNIFORM, None
    if text.startswith("exp:"):
        try:
            decay = float(text[4:])
        except ValueError:
            raise UsageError(f"bad weight scheme {text!r}") from None
        return "exponential", decay
    raise UsageError(f"bad weight scheme {text!r}")


@dataclass(frozen=True)
class FitConfig:
    degree: int = 4
    weight_scheme: str = UNIFORM   # "uniform" | "exponential"
    decay: float | None = None     # lambda in (0, 1] for exponential
    window_days: int = 60

    def __post_init__(self):
        if self.degree < 1:
            raise UsageError("degree must be >= 1")
        if self.window_days < self.degree + 1:
            raise UsageError("window shorter than degree + 1 (underdetermined)")
        if self.weight_scheme == "exponential":
            if self.decay is None or not (0 < self.decay <= 1):
                raise UsageError("exponential decay must be in (0, 1]")
        elif self.weight_scheme != UNIFORM:
            raise UsageError(f"unknown weight scheme {self.weight_scheme!r}")

    @property
    def scheme_label(self) -> str:
        if self.weight_scheme == UNIFORM:
            return UNIFORM
        return f"exp:{self.decay:g}"


@dataclass(frozen=True)
class PolyModel:
    """Fitted polynomial, coefficients ordered highest power first."""

    coefficients: np.ndarray
    fit_window: tuple       # (start day_index, end day_index)
    target: str             # active_cases | growth_rate | tpr
    weight_scheme: str      # label, e.g. "uniform" or "exp:0.97"
    residual_rms: float

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=np.float64)
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)
        if self.residual_rms < 0:
            raise UsageError("residual_rms must be >= 0")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def window_end(self) -> int:
        return int(self.fit_window[1])


@dataclass(frozen=True)
class DesignMatrix:
    """Power-basis rows over the trailing fit window plus weights."""

    X: np.ndarray
    y: np.ndarray
    w: np.ndarray
    day_index: np.ndarray
    degree: int
    target: str


def build_design(series, config: FitConfig) -> DesignMatrix:
    """Design matrix over the trailing ``config.window_days`` observations.

    ``series`` is an ActiveSeries (target active_cases) or RateSeries
    (target growth_rate / tpr); both expose ``day_index`` and ``values``.
    """
    values = np.asarray(series.values, dtype=np.float64)
    day_index = np.asarray(series.day_index, dtype=np.float64)
    if len(values) < config.window_days:
        raise InsufficientData(
            f"need {config.window_days} observations, have {len(values)}")
    if not np.all(np.isfinite(values)):
        raise InsufficientData("non-finite observations in fit window")
    values = values[-config.window_days:]
    day_index = day_index[-config.window_days:]
    if config.weight_scheme == UNIFORM:
        w = np.ones_like(day_index)
    else:
        w = config.decay ** (day_index[-1] - day_index)
    target = getattr(series, "kind", "active_cases")
    return DesignMatrix(X=design_powers(day_index, config.degree), y=values,
                        w=w, day_index=day_index, degree=config.degree,
                        target=target)


def _to_raw_basis(scaled_coeffs, center, half_width):
    # p(u) with u = (t - center)/half_width, composed back to powers of t
    p = np.polynomial.Polynomial(scaled_coeffs[::-1])
    line = np.polynomial.Polynomial([-center / half_width, 1.0 / half_width])
    raw = p(line).coef
    full = np.zeros(len(scaled_coeffs))
    full[:len(raw)] = raw
    return full[::-1]


def fit(design: DesignMatrix, weight_label: str | None = None) -> PolyModel:
    """Minimize the weighted squared error and return raw-basis coefficients."""
    t = design.day_index
    center = (t[0] + t[-1]) / 2.0
    half_width = max((t[-1] - t[0]) / 2.0, 1.0)
    u = (t - center) / half_width
    Xs = design_powers(u, design.degree)
    sw = np.sqrt(design.w)
    A = Xs * sw[:, None]
    b = design.y * sw
    gram = A.T @ A
    if np.linalg.cond(gram) > CONDITION_LIMIT:
        raise SingularSystem("weighted normal equations numerically singular")
    coeffs_scaled, *_ = np.linalg.lstsq(A, b, rcond=None)
    coeffs = _to_raw_basis(coeffs_scaled, center, half_width)
    residuals = design.y - horner_eval(coeffs, t)
    rms = float(np.sqrt(np.mean(residuals ** 2)))
    label = weight_label if weight_label is not None else (
        UNIFORM if np.all(design.w == design.w[0]) else "exponential")
    return PolyModel(coefficients=coeffs,
                     fit_window=(int(t[0]), int(t[-1])),
                     target=design.target, weight_scheme=label,
                     residual_rms=rms)


def fit_series(series, config: FitConfig) -> PolyModel:
    """Convenience: build_design + fit with the config's scheme label."""
    return fit(build_design(series, config), weight_label=config.scheme_label)


def predict(model: PolyModel, day_index) -> float:
    """Evaluate the fitted polynomial at a day index (Horner)."""
    if np.isscalar(day_index):
        if day_index > model.window_end + VALIDITY_HORIZON_DAYS:
            warnings.warn(
                f"day_index {day_index} is beyond the "
                f"{VALIDITY_HORIZON_DAYS}-day validity horizon", stacklevel=2)
        return float(horner_eval(model.coefficients, np.array([day_index]))[0])
    ts = np.asarray(day_index, dtype=np.float64)
    if np.any(ts > model.window_end + VALIDITY_HORIZON_DAYS):
        warnings.warn("some day indices are beyond the validity horizon",
                      stacklevel=2)
    return horner_eval(model.coefficients, ts)


@dataclass(frozen=True)
class BacktestReport:
    dates: tuple
    day_index: np.ndarray
    observed: np.ndarray
    predicted: np.ndarray

    @property
    def abs_error(self):
        return np.abs(self.predicted - self.observed)

    @property
    def rel_error(self):
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(self.observed != 0,
                            self.abs_error / np.abs(self.observed), np.nan)


def backtest(series, config: FitConfig, holdout_days: int) -> BacktestReport:
    """Fit with the last ``holdout_days`` held out, report per-day errors."""
    n = len(series.values)
    if n < config.window_days + holdout_days:
        raise InsufficientData(
            f"need {config.window_days + holdout_days} observations, have {n}")
    truncated = replace_window(series, n - holdout_days)
    model = fit_series(truncated, config)
    held_idx = np.asarray(series.day_index[n - holdout_days:], dtype=np.float64)
    observed = np.asarray(series.values[n - holdout_days:], dtype=np.float64)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        predicted = predict(model, held_idx)
    return BacktestReport(dates=tuple(series.dates[n - holdout_days:]),
                         day_index=held_idx.astype(np.int64),
                         observed=observed, predicted=predicted)


def replace_window(series, n):
    """First ``n`` observations of an ActiveSeries/RateSeries."""
    from .timeseries import ActiveSeries, RateSeries

    if isinstance(series, ActiveSeries):
        return ActiveSeries(region=series.region, dates=series.dates[:n],
                            active=series.active[:n],
                            day_index=series.day_index[:n])
    return RateSeries(dates=series.dates[:n], value=series.value[:n],
                      window_days=series.window_days, kind=series.kind,
                      day_index=series.day_index[:n])


def model_to_dict(model: PolyModel) -> dict:
    return {
        "target": model.target,
        "degree": model.degree,
        "coefficients": [float(c) for c in model.coefficients],
        "fit_window": [int(model.fit_window[0]), int(model.fit_window[1])],
        "weight_scheme": model.weight_scheme,
        "residual_rms": float(model.residual_rms),
    }


def model_from_dict(payload: dict) -> PolyModel:
    coeffs = np.asarray(payload["coefficients"], dtype=np.float64)
    if len(coeffs) != payload.get("degree", len(coeffs) - 1) + 1:
        raise UsageError("coefficient count does not match degree")
    return PolyModel(coefficients=coeffs,
                     fit_window=tuple(payload["fit_window"]),
                     target=payload.get("target", "active_cases"),
                     weight_scheme=payload.get("weight_scheme", UNIFORM),
                     residual_rms=float(payload.get("residual_rms", 0.0)))
