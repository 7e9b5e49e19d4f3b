"""Saturation throughput of (FD) CSMA/CA under the ideal FD condition.

A station's per-slot transmit probability tau and conditional collision
probability p come from Bianchi's fixed point. Channel events (idle,
success, collision) are then weighted by their durations:

    S = P_s * (L1 + L2) * 8 * N / (P_s*T_s + P_c*T_c + P_i*T_i)

where L2 is the secondary (AP -> STA) payload that fits in the dual-link
and N is the number of narrow channels (1 unless the access mode is 1:N).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Sequence

from fdcap.errors import DomainError, NumericError
from fdcap.phy_profiles import (
    FramePlan,
    PhyProfile,
    ack_airtime,
    builtin_profile,
    ChannelWidth,
    cts_airtime,
    header_airtime,
    payload_airtime,
    rts_airtime,
)

RESIDUAL_TOL = 1e-12
MAX_ITERATIONS = 200


class AccessMode(str, enum.Enum):
    HD_BASIC_2WAY = "hd2way"
    HD_RTSCTS_4WAY = "hd4way"
    FD_1TO1 = "fd11"
    FD_1TON = "fd1N"

    @property
    def is_fd(self) -> bool:
        return self in (AccessMode.FD_1TO1, AccessMode.FD_1TON)


class PcVariant(str, enum.Enum):
    # P_c = (1 - P_i)(1 - P_s), as written for the FD model
    PAPER_LITERAL = "paper-literal"
    # P_c = 1 - P_i - P_s, events partition the slot
    BIANCHI_STANDARD = "bianchi-standard"


@dataclass(frozen=True)
class DcfScenario:
    """One saturated cell: n stations contending for uplink primaries.

    For ``FD_1TON`` the profile and frame plan describe one *narrow*
    channel; all n stations contend on each of the ``n_channels`` channels.
    ``hd_collision_timeout`` adds the ACK (or CTS) timeout, SIFS + T_ACK,
    to half-duplex collisions.
    """

    n_stations: int
    frame_plan: FramePlan = field(default_factory=FramePlan)
    profile: PhyProfile = field(default_factory=lambda: builtin_profile(ChannelWidth.W20MHZ))
    access_mode: AccessMode = AccessMode.HD_BASIC_2WAY
    n_channels: int = 1
    cw_min: int = 15
    max_backoff_stage: int = 6
    fd_turnaround_us: float = 11.0
    pc_variant: PcVariant = PcVariant.PAPER_LITERAL
    hd_collision_timeout: bool = False

    def __post_init__(self):
        object.__setattr__(self, "access_mode", AccessMode(self.access_mode))
        object.__setattr__(self, "pc_variant", PcVariant(self.pc_variant))
        if self.n_stations < 1:
            raise DomainError("need at least one station")
        if self.cw_min < 1:
            raise DomainError("cw_min must be >= 1")
        if self.max_backoff_stage < 0:
            raise DomainError("max_backoff_stage must be >= 0")
        if self.fd_turnaround_us < 0:
            raise DomainError("fd_turnaround_us must be >= 0")
        if self.n_channels < 1:
            raise DomainError("n_channels must be >= 1")

    @property
    def channel_multiplier(self) -> int:
        return self.n_channels if self.access_mode is AccessMode.FD_1TON else 1

    def with_n(self, n: int) -> "DcfScenario":
        return replace(self, n_stations=n)


@dataclass(frozen=True)
class FixedPointSolution:
    tau: float
    p: float
    residual: float
    iterations: int


def backoff_transmit_probability(p: float, cw_min: int, max_stage: int) -> float:
    """tau as a function of p for windows cw_min * 2^i, i <= max_stage.

    Uses the finite geometric sum instead of (1-(2p)^m)/(1-2p) so the
    removable singularity at p = 1/2 causes no trouble.
    """
    geometric = sum((2.0 * p) ** i for i in range(max_stage))
    return 2.0 / (1.0 + cw_min + p * cw_min * geometric)


def solve_fixed_point(n: int, cw_min: int = 15, max_stage: int = 6) -> FixedPointSolution:
    """Joint solution of tau(p) and p = 1 - (1 - tau)^(n-1) by bisection on tau."""
    if n < 1:
        raise DomainError("need at least one station")

    def collision_prob(tau: float) -> float:
        return -math.expm1((n - 1) * math.log1p(-tau)) if tau < 1.0 else float(n > 1)

    def g(tau: float) -> float:
        return tau - backoff_transmit_probability(collision_prob(tau), cw_min, max_stage)

    lo, hi = 0.0, 1.0
    iterations = 0
    for iterations in range(1, MAX_ITERATIONS + 1):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if g(mid) > 0.0:
            hi = mid
        else:
            lo = mid
    tau = lo if abs(g(lo)) <= abs(g(hi)) else hi
    residual = abs(g(tau))
    if residual >= RESIDUAL_TOL:
        raise NumericError(f"fixed point did not converge: residual {residual:.3e} for n={n}")
    return FixedPointSolution(tau, collision_prob(tau), residual, iterations)


@dataclass(frozen=True)
class EventProbabilities:
    p_idle: float
    p_success: float
    p_collision: float


def event_probabilities(tau: float, n: int, variant: PcVariant = PcVariant.PAPER_LITERAL) -> EventProbabilities:
    if not 0.0 <= tau <= 1.0:
        raise DomainError("tau must lie in [0, 1]")
    p_idle = (1.0 - tau) ** n
    p_success = n * tau * (1.0 - tau) ** (n - 1)
    if PcVariant(variant) is PcVariant.PAPER_LITERAL:
        p_collision = (1.0 - p_idle) * (1.0 - p_success)
    else:
        p_collision = max(0.0, 1.0 - p_idle - p_success)
    return EventProbabilities(p_idle, p_success, p_collision)


def success_duration(scenario: DcfScenario) -> float:
    """T_s in microseconds.

    DATA-ACK exchanges (HD 2-way and both FD modes) take
    T_H + T_L + d + SIFS + T_ACK + d + DIFS; in FD both directions end
    together so the secondary adds no time. RTS/CTS prefixes its handshake.
    """
    plan, prof = scenario.frame_plan, scenario.profile
    d = plan.propagation_delay_us
    body = (
        header_airtime(plan, prof) + payload_airtime(plan, prof) + d
        + prof.sifs_us + ack_airtime(plan, prof) + d + prof.difs_us
    )
    if scenario.access_mode is AccessMode.HD_RTSCTS_4WAY:
        handshake = rts_airtime(plan, prof) + d + prof.sifs_us + cts_airtime(plan, prof) + d + prof.sifs_us
        return handshake + body
    return body


def collision_duration(scenario: DcfScenario) -> float:
    """T_c in microseconds.

    In FD the primary transmitter aborts once its timer expires without
    seeing H2: header, propagation and the AP's turnaround, then DIFS.
    """
    plan, prof = scenario.frame_plan, scenario.profile
    d = plan.propagation_delay_us
    mode = scenario.access_mode
    if mode.is_fd:
        return header_airtime(plan, prof) + d + scenario.fd_turnaround_us + prof.difs_us
    if mode is AccessMode.HD_BASIC_2WAY:
        tc = header_airtime(plan, prof) + payload_airtime(plan, prof) + d + prof.difs_us
        if scenario.hd_collision_timeout:
            tc += prof.sifs_us + ack_airtime(plan, prof)
        return tc
    tc = rts_airtime(plan, prof) + d + prof.difs_us
    if scenario.hd_collision_timeout:
        tc += prof.sifs_us + cts_airtime(plan, prof)
    return tc


@dataclass(frozen=True)
class SecondaryPlan:
    l2_bytes: int
    f_l_bytes: float
    delta_t_us: float
    clamped: bool = False


def secondary_payload(scenario: DcfScenario) -> SecondaryPlan:
    """Secondary payload L2 = L1 - f_L(H2) under the ideal FD condition.

    f_L(H2) is what the secondary's data rate could have carried while the
    AP fetched its frame (taken as the turnaround) and sent H2.
    """
    if not scenario.access_mode.is_fd:
        return SecondaryPlan(0, 0.0, 0.0)
    plan, prof = scenario.frame_plan, scenario.profile
    t_h = header_airtime(plan, prof)
    f_l = plan.data_rate_bps * (scenario.fd_turnaround_us + t_h) * 1e-6 / 8.0
    l2 = plan.payload_bytes - math.ceil(round(f_l, 9))
    return SecondaryPlan(
        l2_bytes=max(0, l2),
        f_l_bytes=f_l,
        delta_t_us=t_h + scenario.fd_turnaround_us,
        clamped=l2 < 0,
    )


@dataclass(frozen=True)
class ChannelEventModel:
    tau: float
    p: float
    p_idle: float
    p_success: float
    p_collision: float
    t_idle_us: float
    t_success_us: float
    t_collision_us: float
    expected_payload_bits: float
    formula_variant: PcVariant
    secondary: SecondaryPlan

    @property
    def mean_slot_us(self) -> float:
        return (
            self.p_success * self.t_success_us
            + self.p_collision * self.t_collision_us
            + self.p_idle * self.t_idle_us
        )


def channel_event_model(scenario: DcfScenario) -> ChannelEventModel:
    fp = solve_fixed_point(scenario.n_stations, scenario.cw_min, scenario.max_backoff_stage)
    probs = event_probabilities(fp.tau, scenario.n_stations, scenario.pc_variant)
    secondary = secondary_payload(scenario)
    payload_bits = 8.0 * (scenario.frame_plan.payload_bytes + secondary.l2_bytes)
    return ChannelEventModel(
        tau=fp.tau,
        p=fp.p,
        p_idle=probs.p_idle,
        p_success=probs.p_success,
        p_collision=probs.p_collision,
        t_idle_us=scenario.profile.slot_us,
        t_success_us=success_duration(scenario),
        t_collision_us=collision_duration(scenario),
        expected_payload_bits=payload_bits,
        formula_variant=scenario.pc_variant,
        secondary=secondary,
    )


class Source(str, enum.Enum):
    ANALYTICAL = "analytical"
    SIMULATED = "simulated"


@dataclass(frozen=True)
class ThroughputResult:
    s_bps: float
    source: Source = Source.ANALYTICAL
    ci_halfwidth_bps: float | None = None
    confidence: float | None = None


def throughput_bps(events: ChannelEventModel, channels: int = 1) -> float:
    denominator = events.mean_slot_us
    # P_i > 0 whenever tau < 1, and tau < 1 for any cw_min >= 1
    assert denominator > 0.0
    return events.p_success * events.expected_payload_bits * channels / denominator * 1e6


def saturation_throughput(scenario: DcfScenario) -> ThroughputResult:
    events = channel_event_model(scenario)
    return ThroughputResult(throughput_bps(events, scenario.channel_multiplier))


@dataclass(frozen=True)
class StationSweepRow:
    n: int
    result: ThroughputResult | None
    error: str | None = None


def sweep_over_stations(template: DcfScenario, n_list: Sequence[int]) -> list[StationSweepRow]:
    if not n_list:
        raise DomainError("n_list must not be empty")
    rows = []
    for n in n_list:
        try:
            rows.append(StationSweepRow(n, saturation_throughput(template.with_n(n))))
        except (DomainError, NumericError) as exc:
            rows.append(StationSweepRow(n, None, str(exc)))
    return rows
