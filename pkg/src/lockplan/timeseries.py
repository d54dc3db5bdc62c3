"""Epidemic time-series ingestion and rolling statistics.

Parses daily cumulative case archives (CSV or the covid19india v4 JSON
shape), derives active cases, and computes trailing growth-rate and
test-positive-ratio series.
"""

import csv
import io
import json
from dataclasses import dataclass, field
from datetime import date, timedelta

import numpy as np

from .errors import (
    GappedDates,
    MalformedInput,
    MissingTests,
    NegativeActive,
    NonMonotoneSeries,
    WindowOutOfRange,
    ZeroTests,
)

GROWTH_RATE = "growth_rate"
TEST_POSITIVE_RATIO = "test_positive_ratio"


def _frozen(arr):
    a = np.asarray(arr)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class CaseSeries:
    """Daily cumulative confirmed/recovered/deceased (and optional tests)."""

    region: str
    dates: tuple
    confirmed: np.ndarray
    recovered: np.ndarray
    deceased: np.ndarray
    tests: np.ndarray | None = None

    def __post_init__(self):
        n = len(self.dates)
        if n < 1:
            raise MalformedInput("empty series")
        arrays = {"confirmed": self.confirmed, "recovered": self.recovered,
                  "deceased": self.deceased}
        if self.tests is not None:
            arrays["tests"] = self.tests
        for name, arr in arrays.items():
            a = _frozen(np.asarray(arr, dtype=np.int64))
            if len(a) != n:
                raise MalformedInput(f"{name} length {len(a)} != {n} dates")
            if np.any(np.diff(a) < 0):
                raise NonMonotoneSeries(f"{name} decreases within the series")
            object.__setattr__(self, name, a)
        for prev, cur in zip(self.dates, self.dates[1:]):
            if (cur - prev).days != 1:
                raise GappedDates(f"missing day between {prev} and {cur}")
        if np.any(self.recovered + self.deceased > self.confirmed):
            raise NegativeActive("recovered + deceased exceeds confirmed")
        object.__setattr__(self, "dates", tuple(self.dates))

    def __len__(self):
        return len(self.dates)

    def index_of(self, d: date) -> int:
        offset = (d - self.dates[0]).days
        if offset < 0 or offset >= len(self.dates):
            raise WindowOutOfRange(f"{d} outside {self.dates[0]}..{self.dates[-1]}")
        return offset


@dataclass(frozen=True)
class ActiveSeries:
    """Active cases over an analysis window with a 1-based day index."""

    region: str
    dates: tuple
    active: np.ndarray
    day_index: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "active", _frozen(np.asarray(self.active, dtype=np.int64)))
        object.__setattr__(self, "day_index", _frozen(np.asarray(self.day_index, dtype=np.int64)))

    def __len__(self):
        return len(self.dates)

    @property
    def values(self):
        return self.active


@dataclass(frozen=True)
class RateSeries:
    """Trailing-window rate values (growth rate or test-positive ratio)."""

    dates: tuple
    value: np.ndarray
    window_days: int
    kind: str
    day_index: np.ndarray = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "value", _frozen(np.asarray(self.value, dtype=np.float64)))
        if self.day_index is None:
            object.__setattr__(
                self, "day_index", _frozen(np.arange(1, len(self.dates) + 1)))
        else:
            object.__setattr__(self, "day_index", _frozen(np.asarray(self.day_index, dtype=np.int64)))

    def __len__(self):
        return len(self.dates)

    @property
    def values(self):
        return self.value


def _parse_csv(text: str, region: str) -> CaseSeries:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise MalformedInput("empty CSV") from None
    expected = ["date", "confirmed", "recovered", "deceased"]
    if [h.strip() for h in header[:4]] != expected:
        raise MalformedInput(f"bad CSV header: {header}")
    has_tests = len(header) >= 5 and header[4].strip() == "tests"
    rows = []
    for lineno, row in enumerate(reader, start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        try:
            d = date.fromisoformat(row[0].strip())
            nums = [int(x) for x in row[1:5 if has_tests else 4]]
        except (ValueError, IndexError) as exc:
            raise MalformedInput(f"line {lineno}: {exc}") from None
        rows.append((d, nums))
    return _assemble(rows, has_tests, region)


def _parse_json(text: str, region: str) -> CaseSeries:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(str(exc)) from None
    if not isinstance(payload, dict) or not payload:
        raise MalformedInput("expected a non-empty date -> totals object")
    rows = []
    any_tested = False
    for key in sorted(payload):
        try:
            d = date.fromisoformat(key)
        except ValueError:
            raise MalformedInput(f"bad date key {key!r}") from None
        entry = payload[key]
        total = entry.get("total", {}) if isinstance(entry, dict) else {}
        try:
            nums = [int(total.get("confirmed", 0)),
                    int(total.get("recovered", 0)),
                    int(total.get("deceased", 0))]
        except (TypeError, ValueError) as exc:
            raise MalformedInput(f"{key}: {exc}") from None
        if "tested" in total:
            any_tested = True
            nums.append(int(total["tested"]))
        rows.append((d, nums))
    if any_tested:
        for d, nums in rows:
            if len(nums) < 4:
                raise MalformedInput(f"{d}: tested present for some dates only")
    return _assemble(rows, any_tested, region)


def _assemble(rows, has_tests, region) -> CaseSeries:
    if not rows:
        raise MalformedInput("no data rows")
    seen = set()
    for d, _ in rows:
        if d in seen:
            raise MalformedInput(f"duplicate date {d}")
        seen.add(d)
    rows.sort(key=lambda r: r[0])
    dates = tuple(d for d, _ in rows)
    cols = np.array([nums for _, nums in rows], dtype=np.int64).T
    tests = cols[3] if has_tests else None
    return CaseSeries(region=region, dates=dates, confirmed=cols[0],
                      recovered=cols[1], deceased=cols[2], tests=tests)


def parse_case_archive(raw, fmt: str = "csv", region: str = "unknown") -> CaseSeries:
    """Parse a raw archive (bytes or str) into a validated CaseSeries.

    ``fmt`` is ``"csv"`` (header date,confirmed,recovered,deceased[,tests])
    or ``"json_api"`` (date -> {"total": {...}} map).
    """
    if isinstance(raw, bytes):
        try:
            raw = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedInput(str(exc)) from None
    if fmt == "csv":
        return _parse_csv(raw, region)
    if fmt == "json_api":
        return _parse_json(raw, region)
    raise MalformedInput(f"unknown format {fmt!r}")


def to_csv(cs: CaseSeries) -> str:
    """Serialize back to the documented CSV format (round-trip identity)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = ["date", "confirmed", "recovered", "deceased"]
    if cs.tests is not None:
        header.append("tests")
    writer.writerow(header)
    for i, d in enumerate(cs.dates):
        row = [d.isoformat(), int(cs.confirmed[i]), int(cs.recovered[i]),
               int(cs.deceased[i])]
        if cs.tests is not None:
            row.append(int(cs.tests[i]))
        writer.writerow(row)
    return buf.getvalue()


def derive_active(cs: CaseSeries, window_start: date, window_end: date) -> ActiveSeries:
    """Active cases over [window_start, window_end] with day_index 1..N."""
    if window_end < window_start:
        raise WindowOutOfRange("window end before start")
    i0 = cs.index_of(window_start)
    i1 = cs.index_of(window_end)
    active = (cs.confirmed - cs.recovered - cs.deceased)[i0:i1 + 1]
    if np.any(active < 0):
        raise NegativeActive("active cases negative inside window")
    n = i1 - i0 + 1
    return ActiveSeries(region=cs.region, dates=cs.dates[i0:i1 + 1],
                        active=active, day_index=np.arange(1, n + 1))


def rolling_growth_rate(cs: CaseSeries, window_days: int) -> RateSeries:
    """Trailing mean of the day-over-day relative increase of confirmed.

    Dates where the previous confirmed count is zero are dropped
    (pre-epidemic data); the trailing mean is taken over the surviving
    daily ratios.
    """
    if window_days < 1:
        raise WindowOutOfRange("window_days must be >= 1")
    if len(cs) <= window_days:
        raise WindowOutOfRange("series shorter than the growth window")
    prev = cs.confirmed[:-1].astype(np.float64)
    cur = cs.confirmed[1:].astype(np.float64)
    ok = prev > 0
    g = np.full(len(cs) - 1, np.nan)
    g[ok] = (cur[ok] - prev[ok]) / prev[ok]
    out_dates, out_vals = [], []
    for i in range(window_days, len(cs)):
        window = g[i - window_days:i]
        if np.any(np.isnan(window)):
            continue
        out_dates.append(cs.dates[i])
        out_vals.append(window.mean())
    return RateSeries(dates=tuple(out_dates), value=np.array(out_vals),
                      window_days=window_days, kind=GROWTH_RATE)


def rolling_tpr(cs: CaseSeries, window_days: int) -> RateSeries:
    """Windowed new confirmed over windowed new tests."""
    if cs.tests is None:
        raise MissingTests("series has no tests column")
    if window_days < 1:
        raise WindowOutOfRange("window_days must be >= 1")
    if len(cs) <= window_days:
        raise WindowOutOfRange("series shorter than the TPR window")
    w = window_days
    new_cases = (cs.confirmed[w:] - cs.confirmed[:-w]).astype(np.float64)
    new_tests = (cs.tests[w:] - cs.tests[:-w]).astype(np.float64)
    if np.any(new_tests <= 0):
        raise ZeroTests("no tests performed inside some window")
    return RateSeries(dates=cs.dates[w:], value=new_cases / new_tests,
                      window_days=w, kind=TEST_POSITIVE_RATIO)


def latest_summary(cs: CaseSeries, window_days: int = 7) -> dict:
    """Summary tiles: date range, latest active, latest growth/TPR."""
    active = int(cs.confirmed[-1] - cs.recovered[-1] - cs.deceased[-1])
    summary = {
        "region": cs.region,
        "start_date": cs.dates[0].isoformat(),
        "end_date": cs.dates[-1].isoformat(),
        "days": len(cs),
        "active_latest": active,
        "growth_7d": None,
        "tpr_7d": None,
    }
    if len(cs) > window_days:
        growth = rolling_growth_rate(cs, window_days)
        if len(growth) and growth.dates[-1] == cs.dates[-1]:
            summary["growth_7d"] = float(growth.value[-1])
        if cs.tests is not None:
            try:
                tpr = rolling_tpr(cs, window_days)
            except ZeroTests:
                tpr = None
            if tpr is not None and len(tpr):
                summary["tpr_7d"] = float(tpr.value[-1])
    return summary


def shift_dates(cs: CaseSeries, days: int) -> CaseSeries:
    """Same counts on dates shifted by ``days`` (used by property tests)."""
    shifted = tuple(d + timedelta(days=days) for d in cs.dates)
    return CaseSeries(region=cs.region, dates=shifted, confirmed=cs.confirmed,
                      recovered=cs.recovered, deceased=cs.deceased, tests=cs.tests)
