"""HTTP facade for the dashboard: upload a series, run what-if
optimizations, and fetch forecasts. Sessions are in-memory with idle
expiry; the computational core is pure, so handlers just guard the
session map."""

import threading
import time
import uuid
import warnings
from dataclasses import dataclass, field
from datetime import date, timedelta

from fastapi import FastAPI, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .errors import (
    DataError,
    LockplanError,
    NumericalError,
)
from .forecast import FitConfig, fit_series, parse_weight_scheme, predict
from .pipeline import RunSettings, fit_window, run_optimize
from .resources import load_scenario
from .timeseries import CaseSeries, derive_active, latest_summary, parse_case_archive

DEFAULT_IDLE_TTL_SECONDS = 3600
FORECAST_MAX_DAYS = 28
LOW_CONFIDENCE_AFTER_DAYS = 21


@dataclass
class Session:
    id: str
    case_series: CaseSeries
    created_at: float
    last_used: float
    last_model: object = None
    last_window_end: date = None
    scenarios: dict = field(default_factory=dict)


class SessionStore:
    def __init__(self, idle_ttl: float = DEFAULT_IDLE_TTL_SECONDS):
        self._sessions = {}
        self._lock = threading.Lock()
        self._idle_ttl = idle_ttl

    def create(self, case_series: CaseSeries) -> Session:
        now = time.monotonic()
        session = Session(id=uuid.uuid4().hex, case_series=case_series,
                          created_at=now, last_used=now)
        with self._lock:
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session | None:
        now = time.monotonic()
        with self._lock:
            expired = [sid for sid, s in self._sessions.items()
                       if now - s.last_used > self._idle_ttl]
            for sid in expired:
                del self._sessions[sid]
            session = self._sessions.get(session_id)
            if session is not None:
                session.last_used = now
            return session


def _error_payload(exc: Exception) -> dict:
    return {"error": type(exc).__name__, "detail": str(exc)}


def _fit_config_from(payload: dict, series_len: int) -> tuple:
    fit_cfg = payload.get("fit", {}) or {}
    window = int(fit_cfg.get("window_days", min(60, series_len)))
    degree = int(fit_cfg.get("degree", 4))
    scheme, decay = parse_weight_scheme(fit_cfg.get("weight_scheme", "uniform"))
    end_date = (date.fromisoformat(fit_cfg["end_date"])
                if fit_cfg.get("end_date") else None)
    return FitConfig(degree=degree, weight_scheme=scheme, decay=decay,
                     window_days=window), window, end_date


def create_app(idle_ttl: float = DEFAULT_IDLE_TTL_SECONDS) -> FastAPI:
    app = FastAPI(title="lockplan service")
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    store = SessionStore(idle_ttl=idle_ttl)
    app.state.sessions = store

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/v1/series")
    async def upload_series(request: Request):
        body = await request.body()
        content_type = request.headers.get("content-type", "")
        fmt = "json_api" if "json" in content_type else "csv"
        if "csv" not in content_type and "json" not in content_type:
            # sniff: JSON archives start with '{'
            fmt = "json_api" if body.lstrip()[:1] == b"{" else "csv"
        try:
            series = parse_case_archive(body, fmt=fmt, region="upload")
        except DataError as exc:
            return JSONResponse(status_code=400, content=_error_payload(exc))
        session = store.create(series)
        return {"session_id": session.id, "summary": latest_summary(series)}

    @app.post("/v1/sessions/{session_id}/optimize")
    async def optimize(session_id: str, request: Request):
        session = store.get(session_id)
        if session is None:
            return JSONResponse(status_code=404,
                                content={"error": "UnknownSession"})
        try:
            payload = await request.json()
        except Exception:
            return JSONResponse(status_code=422,
                                content={"error": "MalformedInput",
                                         "detail": "body must be JSON"})
        try:
            scenario = load_scenario(payload.get("scenario", {}))
            config, window, end_date = _fit_config_from(
                payload, len(session.case_series))
            merged = dict(scenario["settings"])
            merged.update({k: payload[k] for k in
                           ("lag_days", "alpha", "delta_max", "growth_cap",
                            "tpr_cap") if k in payload})
            settings = RunSettings(
                window_days=window, end_date=end_date,
                lag_days=int(merged.get("lag_days", 14)),
                alpha=float(merged.get("alpha", 1.0)),
                delta_max=int(merged.get("delta_max", 21)),
                growth_cap=merged.get("growth_cap"),
                tpr_cap=merged.get("tpr_cap"))
            response = run_optimize(session.case_series,
                                    scenario["resources"], settings, config)
        except NumericalError as exc:
            return JSONResponse(status_code=500, content=_error_payload(exc))
        except (LockplanError, ValueError) as exc:
            return JSONResponse(status_code=422, content=_error_payload(exc))
        start, end = fit_window(session.case_series, settings)
        active = derive_active(session.case_series, start, end)
        session.last_model = fit_series(active, config)
        session.last_window_end = end
        return response

    @app.get("/v1/sessions/{session_id}/forecast")
    def forecast(session_id: str, days: int = Query(...)):
        session = store.get(session_id)
        if session is None:
            return JSONResponse(status_code=404,
                                content={"error": "UnknownSession"})
        if not (1 <= days <= FORECAST_MAX_DAYS):
            return JSONResponse(
                status_code=422,
                content={"error": "OutOfRange",
                         "detail": f"days must be in [1, {FORECAST_MAX_DAYS}]"})
        if session.last_model is None:
            series = session.case_series
            window = min(60, len(series))
            settings = RunSettings(window_days=window)
            try:
                start, end = fit_window(series, settings)
                active = derive_active(series, start, end)
                session.last_model = fit_series(
                    active, FitConfig(window_days=window))
                session.last_window_end = end
            except LockplanError as exc:
                return JSONResponse(status_code=422,
                                    content=_error_payload(exc))
        model = session.last_model
        rows = []
        for offset in range(1, days + 1):
            t = model.window_end + offset
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                value = max(predict(model, t), 0.0)
            rows.append({
                "date": (session.last_window_end
                         + timedelta(days=offset)).isoformat(),
                "predicted_active": value,
                "low_confidence": offset > LOW_CONFIDENCE_AFTER_DAYS,
            })
        return {"predictions": rows}

    return app
