"""Critical-resource model: per-active-case requirement factors and
piecewise-constant availability/storage/distribution capacity profiles."""

import json
from dataclasses import dataclass
from datetime import date

import numpy as np

from .errors import (
    BeforeProfileStart,
    MalformedInput,
    NegativeActive,
    UsageError,
    ZeroActive,
)


@dataclass(frozen=True)
class CapacityProfile:
    """Piecewise-constant capacity: ordered (start_day, value) segments.

    Segments are right-open; the last segment extends forever.
    """

    segments: tuple  # ((start_day, value), ...)

    def __post_init__(self):
        segs = tuple((float(s), float(v)) for s, v in self.segments)
        if not segs:
            raise UsageError("capacity profile needs at least one segment")
        starts = [s for s, _ in segs]
        if any(b <= a for a, b in zip(starts, starts[1:])):
            raise UsageError("segment starts must be strictly increasing")
        if any(v < 0 for _, v in segs):
            raise UsageError("capacity values must be >= 0")
        object.__setattr__(self, "segments", segs)


def capacity_at(profile: CapacityProfile, day_index: float) -> float:
    """Capacity of the segment containing ``day_index``."""
    segs = profile.segments
    if day_index < segs[0][0]:
        raise BeforeProfileStart(
            f"day {day_index} before first segment start {segs[0][0]}")
    value = segs[0][1]
    for start, v in segs:
        if day_index >= start:
            value = v
        else:
            break
    return value


@dataclass(frozen=True)
class SideCapacity:
    """Storage or distribution: per-unit factor plus its capacity profile."""

    unit_factor: float
    capacity: CapacityProfile

    def __post_init__(self):
        if self.unit_factor < 0:
            raise UsageError("unit factor must be >= 0")


@dataclass(frozen=True)
class ResourceSpec:
    id: str
    name: str
    unit: str
    requirement_factor: float
    availability: CapacityProfile
    storage: SideCapacity | None = None
    distribution: SideCapacity | None = None

    def __post_init__(self):
        if self.requirement_factor < 0:
            raise UsageError("requirement factor must be >= 0")


def requirement(spec: ResourceSpec, active: float) -> float:
    """Resource requirement for a given active-case count."""
    if active < 0:
        raise NegativeActive("active count must be >= 0")
    return spec.requirement_factor * active


def estimate_requirement_factor(active_series, observed_demand: float,
                                on_date: date) -> float:
    """Single-point ratio: observed demand / active cases on one date."""
    try:
        idx = active_series.dates.index(on_date)
    except ValueError:
        raise UsageError(f"{on_date} not in the active series") from None
    active = float(active_series.active[idx])
    if active <= 0:
        raise ZeroActive(f"no active cases on {on_date}")
    return observed_demand / active


def _profile_from_json(rows) -> CapacityProfile:
    try:
        return CapacityProfile(tuple((float(s), float(v)) for s, v in rows))
    except (TypeError, ValueError) as exc:
        raise MalformedInput(f"bad capacity profile: {exc}") from None


def _side_from_json(payload) -> SideCapacity:
    key = "unit_storage" if "unit_storage" in payload else "unit_distribution"
    return SideCapacity(unit_factor=float(payload[key]),
                        capacity=_profile_from_json(payload["capacity"]))


def resource_from_json(payload: dict) -> ResourceSpec:
    try:
        return ResourceSpec(
            id=payload["id"],
            name=payload.get("name", payload["id"]),
            unit=payload.get("unit", ""),
            requirement_factor=float(payload["requirement_factor"]),
            availability=_profile_from_json(payload["availability"]),
            storage=_side_from_json(payload["storage"]) if payload.get("storage") else None,
            distribution=_side_from_json(payload["distribution"]) if payload.get("distribution") else None,
        )
    except KeyError as exc:
        raise MalformedInput(f"resource missing field {exc}") from None


def load_scenario(source) -> dict:
    """Load a scenario file/dict: resources plus optional policy settings.

    Returns {"resources": [ResourceSpec...], "settings": {...}} where
    settings may carry lag_days, alpha, delta_max, growth_cap, tpr_cap.
    """
    if isinstance(source, (str, bytes)):
        try:
            payload = json.loads(source)
        except json.JSONDecodeError as exc:
            raise MalformedInput(str(exc)) from None
    else:
        payload = source
    if not isinstance(payload, dict) or "resources" not in payload:
        raise MalformedInput("scenario must be an object with a resources list")
    resources = [resource_from_json(r) for r in payload["resources"]]
    ids = [r.id for r in resources]
    if len(set(ids)) != len(ids):
        raise MalformedInput("duplicate resource ids in scenario")
    settings = {k: payload[k] for k in
                ("lag_days", "alpha", "delta_max", "growth_cap", "tpr_cap")
                if k in payload}
    return {"resources": resources, "settings": settings}


def profile_to_json(profile: CapacityProfile):
    return [[s, v] for s, v in profile.segments]
