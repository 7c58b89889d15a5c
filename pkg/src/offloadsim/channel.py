"""Abstracted radio and wired links: per-leg transfer time and loss outcome.

Every task hop belongs to one link class. Radio legs (UE/vehicle access) have a
base latency plus a size-dependent serialization term under processor sharing,
and an independent per-leg Bernoulli loss whose probability grows linearly with
the mobile endpoint's speed. Wired legs (core network, Internet) are lossless
with fixed one-way latency.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Union


class LinkClass(Enum):
    PUE_UP = "pue_up"
    PUE_DOWN = "pue_down"
    VUE_UP = "vue_up"
    VUE_DOWN = "vue_down"
    CN_UP = "cn_up"
    CN_DOWN = "cn_down"
    INTERNET_UP = "internet_up"
    INTERNET_DOWN = "internet_down"


RADIO_LINKS = frozenset(
    {LinkClass.PUE_UP, LinkClass.PUE_DOWN, LinkClass.VUE_UP, LinkClass.VUE_DOWN}
)
WIRED_LINKS = frozenset(LinkClass) - RADIO_LINKS

PROCESSOR_SHARING = "processor_sharing"
NO_SHARING = "none"

OUT_OF_COVERAGE = "out_of_coverage"
CHANNEL_ERROR = "channel_error"


@dataclass(frozen=True)
class LinkParams:
    """One link class: latency floor, shared rate, and loss coefficients."""

    base_latency: float  # s, one-way floor
    rate: float | None = None  # bits/s shared by concurrent transfers; None = unbounded
    p_base: float = 0.0  # loss probability at speed 0
    k_speed: float = 0.0  # added loss probability per (m/s)
    sharing: str = PROCESSOR_SHARING

    def __post_init__(self) -> None:
        if self.base_latency < 0.0:
            raise ValueError("base latency must be nonnegative")
        if self.rate is not None and self.rate <= 0.0:
            raise ValueError("rate must be positive or unbounded (None)")
        if not 0.0 <= self.p_base <= 1.0:
            raise ValueError("p_base must lie in [0, 1]")
        if self.k_speed < 0.0:
            raise ValueError("k_speed must be nonnegative")
        if self.sharing not in (PROCESSOR_SHARING, NO_SHARING):
            raise ValueError(f"unknown sharing mode {self.sharing!r}")


@dataclass
class ChannelConfig:
    """Per-link-class parameters for one run."""

    links: dict[LinkClass, LinkParams]

    def __post_init__(self) -> None:
        missing = set(LinkClass) - set(self.links)
        if missing:
            names = ", ".join(sorted(k.value for k in missing))
            raise ValueError(f"channel config missing link classes: {names}")
        for link in WIRED_LINKS:
            if self.links[link].p_base != 0.0 or self.links[link].k_speed != 0.0:
                raise ValueError(f"wired leg {link.value} must be lossless")

    def lossless(self) -> "ChannelConfig":
        """Copy with all loss probabilities zeroed (latency model unchanged)."""
        return ChannelConfig(
            {k: replace(p, p_base=0.0, k_speed=0.0) for k, p in self.links.items()}
        )


def lena_calibrated() -> ChannelConfig:
    """Shipped radio calibration.

    Base latencies (2.7 ms pedestrian legs, 5.7 ms vehicle legs) and 100 Mb/s
    shared rates are chosen so a default edge round trip lands near 10 ms and a
    default vehicular round trip near 30 ms. Wired legs: 2 ms core-network and
    35 ms Internet one-way.
    """
    radio_loss = {"p_base": 1e-3, "k_speed": 5e-4}
    return ChannelConfig(
        {
            LinkClass.PUE_UP: LinkParams(0.0027, 100e6, **radio_loss),
            LinkClass.PUE_DOWN: LinkParams(0.0027, 100e6, **radio_loss),
            LinkClass.VUE_UP: LinkParams(0.0057, 100e6, **radio_loss),
            LinkClass.VUE_DOWN: LinkParams(0.0057, 100e6, **radio_loss),
            LinkClass.CN_UP: LinkParams(0.002),
            LinkClass.CN_DOWN: LinkParams(0.002),
            LinkClass.INTERNET_UP: LinkParams(0.035),
            LinkClass.INTERNET_DOWN: LinkParams(0.035),
        }
    )


def transfer_time(
    size_bytes: float, link: LinkClass, concurrent: int, cfg: ChannelConfig
) -> float:
    """One-way leg duration for ``size_bytes`` with ``concurrent`` active transfers.

    ``concurrent`` counts simultaneously active transfers in the same link
    class, this one included, so it is at least 1. Under processor sharing each
    transfer sees rate/concurrent; with sharing disabled the full rate applies.
    Unbounded-rate (wired) legs take exactly the base latency.
    """
    if size_bytes < 0.0:
        raise ValueError("size must be nonnegative")
    if concurrent < 1:
        raise ValueError("concurrent count includes this transfer, so it is >= 1")
    params = cfg.links[link]
    if params.rate is None:
        return params.base_latency
    if params.sharing == PROCESSOR_SHARING:
        effective_rate = params.rate / concurrent
    else:
        effective_rate = params.rate
    return params.base_latency + size_bytes * 8.0 / effective_rate


def loss_probability(cfg: ChannelConfig, link: LinkClass, speed: float) -> float:
    """Per-leg loss probability at the given endpoint speed, clamped to [0, 1]."""
    params = cfg.links[link]
    return min(1.0, max(0.0, params.p_base + params.k_speed * speed))


@dataclass(frozen=True)
class Delivered:
    latency: float


@dataclass(frozen=True)
class Lost:
    reason: str  # OUT_OF_COVERAGE or CHANNEL_ERROR


LegOutcome = Union[Delivered, Lost]


def leg_outcome(
    rng,
    link: LinkClass,
    size_bytes: float,
    speed: float,
    src_covered: bool,
    dst_covered: bool,
    cfg: ChannelConfig,
    concurrent: int = 1,
) -> LegOutcome:
    """Attempt one leg.

    An uncovered endpoint on a radio leg loses the packet outright and consumes
    no RNG draw; a covered radio leg consumes exactly one Bernoulli draw from
    ``rng``; wired legs never lose and never draw. Delivery carries the
    transfer_time latency.
    """
    if link in RADIO_LINKS:
        if not (src_covered and dst_covered):
            return Lost(OUT_OF_COVERAGE)
        if rng.random() < loss_probability(cfg, link, speed):
            return Lost(CHANNEL_ERROR)
    return Delivered(transfer_time(size_bytes, link, concurrent, cfg))
