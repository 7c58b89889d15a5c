"""Beacon-driven availability registry and the two dispatch strategies.

The controller at the gNB keeps a registry of vehicles heard from recently.
Idle vehicles in coverage beacon every ``beacon_period`` seconds (plus once
immediately on finishing a task); entries not refreshed within ``timeout``
expire. The registry is a snapshot, not ground truth: a listed vehicle may
already be busy or out of coverage, and dispatching to it simply fails.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .compute import EdgeState

CLOUD = "CLOUD"
EDGE = "EDGE"
VEHICLE = "VEHICLE"

EC_FIRST = "ECFirst"
VCC_FIRST = "VCCFirst"
STRATEGIES = (EC_FIRST, VCC_FIRST)

DEFAULT_BEACON_PERIOD = 0.1  # s, 10 Hz while idle
DEFAULT_TIMEOUT = 0.5  # s


@dataclass(frozen=True)
class Dispatch:
    destination: str  # CLOUD, EDGE or VEHICLE
    vehicle_id: int | None = None
    decided_at: float = 0.0


@dataclass
class Registry:
    """vehicle id -> last beacon time, with timeout expiry."""

    timeout: float = DEFAULT_TIMEOUT
    beacon_period: float = DEFAULT_BEACON_PERIOD
    entries: dict[int, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.timeout <= 0.0 or self.beacon_period <= 0.0:
            raise ValueError("timeout and beacon period must be positive")

    def on_beacon(self, vehicle_id: int, t: float) -> None:
        self.entries[vehicle_id] = t

    def expire_stale(self, t: float) -> None:
        """Drop every entry whose last beacon is older than ``t - timeout``."""
        deadline = t - self.timeout
        stale = [vid for vid, last in self.entries.items() if last < deadline]
        for vid in stale:
            del self.entries[vid]


def select_vccfirst(registry: Registry, rng, now: float) -> Dispatch:
    """Pick a vehicle uniformly at random, or fall back to the cloud.

    The chosen vehicle is removed from the registry and reappears only once a
    later beacon of its is processed. Candidates are ordered by id so the
    selection depends only on the RNG state, never on dict history.
    """
    registry.expire_stale(now)
    if not registry.entries:
        return Dispatch(CLOUD, decided_at=now)
    candidates = sorted(registry.entries)
    chosen = candidates[rng.randrange(len(candidates))]
    del registry.entries[chosen]
    return Dispatch(VEHICLE, vehicle_id=chosen, decided_at=now)


def select_ecfirst(edge: EdgeState, now: float) -> Dispatch:
    """Send to the edge unless its waiting line is full, else to the cloud."""
    if edge.waiting_count(now) >= edge.max_queue:
        return Dispatch(CLOUD, decided_at=now)
    return Dispatch(EDGE, decided_at=now)


def beacon_times(idle_since: float, period: float, until: float) -> Iterator[float]:
    """Beacon instants for a vehicle idle from ``idle_since``: one immediately,
    then every ``period`` seconds while it stays idle, up to ``until``."""
    if period <= 0.0:
        raise ValueError("beacon period must be positive")
    t = idle_since
    while t <= until:
        yield t
        t += period
