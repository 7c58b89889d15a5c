"""Computation tiers: infinite cloud, single FIFO edge server, one-task vehicles.

Elaboration time is workload divided by capacity everywhere; the tiers differ
only in admission. The cloud never queues. The edge is one server with a finite
FIFO waiting line. A vehicle serves at most one task at a time and refuses a
second outright.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .channel import ChannelConfig, LinkClass
from .scenario import VehicleState


@dataclass(frozen=True)
class Task:
    """One offloading request."""

    id: int
    workload_mi: float  # millions of instructions
    size_bytes: float  # uplink payload
    result_bytes: float  # downlink payload
    created_at: float
    origin_user: int


def elaboration_time(workload_mi: float, capacity_mips: float) -> float:
    """Service time in seconds for a workload on a processor of given capacity."""
    if workload_mi < 0.0:
        raise ValueError("workload must be nonnegative")
    if capacity_mips <= 0.0:
        raise ValueError("capacity must be positive")
    return workload_mi / capacity_mips


@dataclass(frozen=True)
class CloudState:
    """Unlimited parallel servers: tasks never wait."""

    capacity: float  # MIPS applied to each task


def cloud_fixed_roundtrip(cfg: ChannelConfig) -> float:
    """Wired round trip to the cloud and back: both CN legs plus both Internet legs."""
    links = cfg.links
    return (
        links[LinkClass.CN_UP].base_latency
        + links[LinkClass.INTERNET_UP].base_latency
        + links[LinkClass.INTERNET_DOWN].base_latency
        + links[LinkClass.CN_DOWN].base_latency
    )


@dataclass(frozen=True)
class EdgeAccepted:
    service_start: float
    completion: float
    queue_wait: float  # service_start minus payload arrival


@dataclass
class EdgeState:
    """One FIFO server with a bounded waiting line.

    Admissions are in dispatch order and the core-network delay is the same for
    every task, so service starts are nondecreasing and the waiting line can be
    tracked as a deque of (service_start, completion) pairs pruned lazily.
    """

    capacity: float  # MIPS
    max_queue: int = 100
    next_free: float = 0.0
    accepted: int = 0
    completed: int = 0
    _jobs: deque = field(default_factory=deque)  # (service_start, completion)

    def occupancy(self, now: float) -> tuple[int, int, int]:
        """(waiting, in_service, completed) counts at time ``now``."""
        jobs = self._jobs
        while jobs and jobs[0][1] <= now:
            jobs.popleft()
            self.completed += 1
        in_service = 1 if jobs and jobs[0][0] <= now else 0
        return len(jobs) - in_service, in_service, self.completed

    def waiting_count(self, now: float) -> int:
        return self.occupancy(now)[0]

    def offer(
        self, workload_mi: float, now: float, data_at: float | None = None
    ) -> EdgeAccepted | None:
        """Admit a task at ``now`` or return None on queue overflow.

        ``data_at`` is when the payload reaches the server (defaults to ``now``);
        service cannot start before it, and queue wait is measured from it.
        """
        if self.waiting_count(now) >= self.max_queue:
            return None
        if data_at is None:
            data_at = now
        service_start = max(self.next_free, data_at)
        completion = service_start + elaboration_time(workload_mi, self.capacity)
        self.next_free = completion
        self._jobs.append((service_start, completion))
        self.accepted += 1
        return EdgeAccepted(service_start, completion, service_start - data_at)


def vehicle_offer(v: VehicleState, workload_mi: float, now: float) -> float | None:
    """Start service on an idle vehicle and return the completion time.

    Returns None (rejection) if the vehicle is already serving a task. Accepted
    intervals never overlap: acceptance requires busy_until <= now and sets
    busy_until to the new completion.
    """
    if v.busy_until > now:
        return None
    done_at = now + elaboration_time(workload_mi, v.capacity)
    v.busy_until = done_at
    return done_at
