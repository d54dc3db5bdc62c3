"""Command-line interface: fit, predict, optimize, replay, serve."""

import csv
import io
import json
import sys
import warnings
from datetime import date, timedelta
from pathlib import Path

import click

from .errors import LockplanError
from .forecast import (
    FitConfig,
    model_from_dict,
    model_to_dict,
    parse_weight_scheme,
    predict,
)
from .pipeline import RunSettings, fit_active_model, run_optimize
from .optimizer import (
    ConstraintReport,
    PolicyResult,
    explain,
)
from .resources import load_scenario
from .timeseries import parse_case_archive


def _load_series(path, region=None):
    p = Path(path)
    fmt = "json_api" if p.suffix.lower() == ".json" else "csv"
    return parse_case_archive(p.read_bytes(), fmt=fmt,
                              region=region or p.stem)


def _load_scenario_file(path):
    return load_scenario(Path(path).read_text())


def _fit_config(window, degree, weights):
    scheme, decay = parse_weight_scheme(weights)
    return FitConfig(degree=degree, weight_scheme=scheme, decay=decay,
                     window_days=window)


def _settings(scenario, window, end, lag, delta_max, growth_cap, tpr_cap):
    merged = dict(scenario["settings"])
    if lag is not None:
        merged["lag_days"] = lag
    if delta_max is not None:
        merged["delta_max"] = delta_max
    if growth_cap is not None:
        merged["growth_cap"] = growth_cap
    if tpr_cap is not None:
        merged["tpr_cap"] = tpr_cap
    return RunSettings(window_days=window, end_date=end,
                       lag_days=int(merged.get("lag_days", 14)),
                       alpha=float(merged.get("alpha", 1.0)),
                       delta_max=int(merged.get("delta_max", 21)),
                       growth_cap=merged.get("growth_cap"),
                       tpr_cap=merged.get("tpr_cap"))


def _emit_json(payload):
    click.echo(json.dumps(payload, indent=2, sort_keys=True))


class _Main(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except LockplanError as exc:
            click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
            sys.exit(exc.exit_code)


@click.group(cls=_Main)
def main():
    """Epidemic forecasting and lockdown-delay decision support."""


_shared = [
    click.option("--data", "data_path", required=True,
                 type=click.Path(exists=True), help="case archive (CSV/JSON)"),
    click.option("--window", default=60, show_default=True,
                 help="fit window length in days"),
    click.option("--end", "end_date", type=click.DateTime(["%Y-%m-%d"]),
                 default=None, help="window end date (default: last date)"),
    click.option("--weights", default="uniform", show_default=True,
                 help="uniform | exp:<lambda>"),
    click.option("--degree", default=4, show_default=True),
    click.option("--format", "fmt", type=click.Choice(["text", "json"]),
                 default="json", show_default=True),
]


def shared_options(fn):
    for opt in reversed(_shared):
        fn = opt(fn)
    return fn


@main.command()
@shared_options
def fit(data_path, window, end_date, weights, degree, fmt):
    """Fit the polynomial model and print it."""
    cs = _load_series(data_path)
    settings = RunSettings(window_days=window,
                           end_date=end_date.date() if end_date else None)
    model, active = fit_active_model(cs, settings,
                                     _fit_config(window, degree, weights))
    payload = model_to_dict(model)
    payload["window_start_date"] = active.dates[0].isoformat()
    payload["window_end_date"] = active.dates[-1].isoformat()
    if fmt == "json":
        _emit_json(payload)
    else:
        click.echo(f"target: {payload['target']}  degree: {payload['degree']}")
        click.echo("coefficients (highest power first): "
                   + ", ".join(f"{c:.6g}" for c in payload["coefficients"]))
        click.echo(f"residual rms: {payload['residual_rms']:.4g}")


@main.command("predict")
@click.option("--model", "model_path", required=True,
              type=click.Path(exists=True), help="PolyModel JSON file")
@click.option("--days", default=14, show_default=True,
              help="days past the window end to predict")
@click.option("--window-end-date", type=click.DateTime(["%Y-%m-%d"]),
              default=None, help="calendar date of the window end")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="json", show_default=True)
def predict_cmd(model_path, days, window_end_date, fmt):
    """Predict values for days after the fitted window."""
    model = model_from_dict(json.loads(Path(model_path).read_text()))
    rows = []
    for offset in range(1, days + 1):
        t = model.window_end + offset
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            value = max(predict(model, t), 0.0)
        row = {"day_index": t, "predicted": value,
               "low_confidence": offset > 28}
        if window_end_date is not None:
            row["date"] = (window_end_date.date()
                           + timedelta(days=offset)).isoformat()
        rows.append(row)
    if fmt == "json":
        _emit_json({"predictions": rows})
    else:
        for row in rows:
            label = row.get("date", f"t={row['day_index']}")
            click.echo(f"{label}: {row['predicted']:.1f}")


@main.command()
@shared_options
@click.option("--scenario", "scenario_path", required=True,
              type=click.Path(exists=True), help="scenario JSON file")
@click.option("--lag", type=int, default=None, help="lockdown effect lag days")
@click.option("--delta-max", type=int, default=None, help="scan upper bound")
@click.option("--growth-cap", type=float, default=None)
@click.option("--tpr-cap", type=float, default=None)
def optimize(data_path, window, end_date, weights, degree, fmt, scenario_path,
             lag, delta_max, growth_cap, tpr_cap):
    """Find the optimal lockdown delay for a scenario."""
    cs = _load_series(data_path)
    scenario = _load_scenario_file(scenario_path)
    settings = _settings(scenario, window,
                         end_date.date() if end_date else None,
                         lag, delta_max, growth_cap, tpr_cap)
    payload = run_optimize(cs, scenario["resources"], settings,
                           _fit_config(window, degree, weights))
    if fmt == "json":
        _emit_json(payload)
    else:
        result = payload["result"]
        reports = [ConstraintReport(**{k: r[k] for k in
                                       ("constraint_id", "day_index",
                                        "required", "limit", "satisfied")})
                   for r in result["trace"]]
        binding = [ConstraintReport(**{k: r[k] for k in
                                       ("constraint_id", "day_index",
                                        "required", "limit", "satisfied")})
                   for r in result["binding"]]
        lockdown = (date.fromisoformat(result["lockdown_date"])
                    if result["lockdown_date"] else None)
        click.echo(explain(PolicyResult(
            status=result["status"], delta_opt=result["delta_opt"],
            objective=result["objective"], binding=tuple(binding),
            trace=tuple(reports), lockdown_date=lockdown)))


@main.command()
@shared_options
@click.option("--scenario", "scenario_path", required=True,
              type=click.Path(exists=True))
@click.option("--start", "start_date", required=True,
              type=click.DateTime(["%Y-%m-%d"]))
@click.option("--end-replay", "replay_end", required=True,
              type=click.DateTime(["%Y-%m-%d"]))
@click.option("--lag", type=int, default=None)
@click.option("--delta-max", type=int, default=None)
def replay(data_path, window, end_date, weights, degree, fmt, scenario_path,
           start_date, replay_end, lag, delta_max):
    """Re-run the optimizer for each day in a date range (CSV output)."""
    del end_date, fmt  # replay manages its own window ends; output is CSV
    start, stop = start_date.date(), replay_end.date()
    if stop < start:
        raise click.UsageError("replay end date before start date")
    cs = _load_series(data_path)
    scenario = _load_scenario_file(scenario_path)
    config = _fit_config(window, degree, weights)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["date", "status", "delta_opt", "binding"])
    day = start
    while day <= stop:
        settings = _settings(scenario, window, day, lag, delta_max, None, None)
        payload = run_optimize(cs, scenario["resources"], settings, config)
        result = payload["result"]
        binding = (result["binding"][0]["constraint_id"]
                   if result["binding"] else "")
        writer.writerow([day.isoformat(), result["status"],
                         "" if result["delta_opt"] is None
                         else result["delta_opt"], binding])
        day += timedelta(days=1)
    click.echo(buf.getvalue(), nl=False)


@main.command()
@click.option("--port", default=None, type=int,
              help="listen port (default: PORT env var or 8000)")
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(port, host):
    """Start the HTTP service."""
    import os

    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host,
                port=port or int(os.environ.get("PORT", "8000")))


if __name__ == "__main__":
    main()
