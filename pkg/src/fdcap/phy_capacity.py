"""Shannon capacity limits for half-duplex, 1:1 FD and 1:N narrow-channel FD.

All bandwidths are in Hz and all capacities in bits/s. The 1:N arrangement
splits the FD bandwidth into N orthogonal sub-channels separated by guard
bands; each narrow channel enjoys an SNR gain over the wide channel.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence, Union

from fdcap.errors import DomainError

_LN2 = math.log(2.0)
_LOG2_10 = math.log2(10.0)


@dataclass(frozen=True)
class SnrPoint:
    snr_db: float

    def __post_init__(self):
        if not math.isfinite(self.snr_db):
            raise DomainError(f"SNR must be finite, got {self.snr_db}")

    @property
    def linear(self) -> float:
        return 10.0 ** (self.snr_db / 10.0)


SnrLike = Union[SnrPoint, float, int]


def _db(snr: SnrLike) -> float:
    if isinstance(snr, SnrPoint):
        return snr.snr_db
    return SnrPoint(float(snr)).snr_db


def log2_1p_db(snr_db: float) -> float:
    """log2(1 + 10^(snr_db/10)) without overflow at high SNR or loss at low SNR."""
    if snr_db > 0.0:
        return snr_db / 10.0 * _LOG2_10 + math.log1p(10.0 ** (-snr_db / 10.0)) / _LN2
    return math.log1p(10.0 ** (snr_db / 10.0)) / _LN2


@dataclass(frozen=True)
class FixedDb:
    """Constant SNR gain per narrow channel (3 dB measured for halving)."""

    value_db: float = 3.0


@dataclass(frozen=True)
class BandwidthRatio:
    """SNR gain of 10*log10(N): noise power scales with channel width."""


GainMode = Union[FixedDb, BandwidthRatio]


class GuardAccounting(str, enum.Enum):
    # one guard per sub-channel: usable = B - N*g (matches the plotted data)
    PER_CHANNEL = "per-channel"
    # a single guard for the whole band: usable = B - g
    TOTAL = "total"


class Arrangement(str, enum.Enum):
    HALF_DUPLEX = "hd"
    FD_1TO1 = "fd1"
    FD_1TON = "fdN"


@dataclass(frozen=True)
class ChannelPlan:
    total_bandwidth_hz: float
    n_channels: int = 2
    guard_per_channel_hz: float = 0.0
    snr_gain: GainMode = field(default_factory=FixedDb)
    guard_accounting: GuardAccounting = GuardAccounting.PER_CHANNEL

    def __post_init__(self):
        if not self.total_bandwidth_hz > 0:
            raise DomainError("total bandwidth must be positive")
        if int(self.n_channels) != self.n_channels or self.n_channels < 1:
            raise DomainError("n_channels must be an integer >= 1")
        if not self.guard_per_channel_hz >= 0:
            raise DomainError("guard band must be non-negative")
        object.__setattr__(self, "guard_accounting", GuardAccounting(self.guard_accounting))

    @property
    def guard_overhead_hz(self) -> float:
        if self.n_channels == 1:
            return 0.0
        if self.guard_accounting is GuardAccounting.TOTAL:
            return self.guard_per_channel_hz
        return self.n_channels * self.guard_per_channel_hz

    @property
    def usable_bandwidth_hz(self) -> float:
        return self.total_bandwidth_hz - self.guard_overhead_hz

    @property
    def per_channel_hz(self) -> float:
        return self.usable_bandwidth_hz / self.n_channels


@dataclass(frozen=True)
class CapacityResult:
    bits_per_second: float
    arrangement: Arrangement


def _check_bandwidth(bandwidth_hz: float) -> None:
    if not bandwidth_hz > 0:
        raise DomainError(f"bandwidth must be positive, got {bandwidth_hz}")


def shannon_capacity_hd(bandwidth_hz: float, snr: SnrLike) -> CapacityResult:
    _check_bandwidth(bandwidth_hz)
    return CapacityResult(bandwidth_hz * log2_1p_db(_db(snr)), Arrangement.HALF_DUPLEX)


def shannon_capacity_fd_1to1(bandwidth_hz: float, snr: SnrLike) -> CapacityResult:
    # doubling is exact in binary floating point
    hd = shannon_capacity_hd(bandwidth_hz, snr)
    return CapacityResult(2.0 * hd.bits_per_second, Arrangement.FD_1TO1)


def narrowing_snr_gain_db(plan: ChannelPlan) -> float:
    if plan.n_channels == 1:
        return 0.0
    if isinstance(plan.snr_gain, BandwidthRatio):
        return 10.0 * math.log10(plan.n_channels)
    return float(plan.snr_gain.value_db)


def shannon_capacity_fd_1toN(plan: ChannelPlan, snr: SnrLike) -> CapacityResult:
    """Total capacity of N full-duplex narrow channels inside the plan's band.

    Each of the N sub-channels carries two simultaneous transmissions over
    ``plan.per_channel_hz`` at the wide-channel SNR plus the narrowing gain.
    """
    usable = plan.usable_bandwidth_hz
    if not usable > 0:
        raise DomainError(
            f"guard bands ({plan.guard_overhead_hz} Hz) leave no usable spectrum "
            f"in {plan.total_bandwidth_hz} Hz"
        )
    snr_db = _db(snr) + narrowing_snr_gain_db(plan)
    n = plan.n_channels
    bps = 2 * n * plan.per_channel_hz * log2_1p_db(snr_db)
    return CapacityResult(bps, Arrangement.FD_1TON)


def guard_band_breakeven_closed_form(
    bandwidth_hz: float, n_channels: int, snr: SnrLike, gain_db: float
) -> float:
    """Per-channel guard at which 1:N capacity equals 1:1 capacity."""
    x = log2_1p_db(_db(snr))
    x_gain = log2_1p_db(_db(snr) + gain_db)
    return max(0.0, bandwidth_hz / n_channels * (1.0 - x / x_gain))


def guard_band_breakeven(
    bandwidth_hz: float,
    n_channels: int,
    snr: SnrLike,
    snr_gain: GainMode | None = None,
    guard_accounting: GuardAccounting = GuardAccounting.PER_CHANNEL,
) -> float:
    """Largest guard band g for which the 1:N design still beats 1:1.

    Bisection on g over the range that leaves usable spectrum, run until the
    bracket collapses to adjacent floats, so the capacity mismatch at the
    returned g is far below 1 bit/s.
    """
    if n_channels < 2:
        raise DomainError("break-even needs at least two sub-channels")
    _check_bandwidth(bandwidth_hz)
    snr_gain = FixedDb() if snr_gain is None else snr_gain
    target = shannon_capacity_fd_1to1(bandwidth_hz, snr).bits_per_second

    def excess(g: float) -> float:
        plan = ChannelPlan(bandwidth_hz, n_channels, g, snr_gain, guard_accounting)
        return shannon_capacity_fd_1toN(plan, snr).bits_per_second - target

    if excess(0.0) <= 0.0:
        return 0.0
    lo = 0.0
    hi = bandwidth_hz if guard_accounting is GuardAccounting.TOTAL else bandwidth_hz / n_channels
    # excess(hi) is undefined (zero usable spectrum) and the capacity tends to 0 there
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if excess(mid) >= 0.0:
            lo = mid
        else:
            hi = mid
    return lo


@dataclass(frozen=True)
class CapacityRow:
    plan: ChannelPlan
    snr_db: float
    hd: CapacityResult | None
    fd1: CapacityResult | None
    fdN: CapacityResult | None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


def sweep_capacity(
    plans: Sequence[ChannelPlan], snr_range: Sequence[SnrLike]
) -> list[CapacityRow]:
    """Evaluate all three arrangements for every (plan, SNR) pair.

    Rows are ordered plan-major, SNR-minor. A domain error at one point is
    recorded on its row instead of aborting the sweep.
    """
    rows = []
    for plan in plans:
        for snr in snr_range:
            snr_db = _db(snr)
            hd = shannon_capacity_hd(plan.total_bandwidth_hz, snr_db)
            fd1 = shannon_capacity_fd_1to1(plan.total_bandwidth_hz, snr_db)
            try:
                fdn = shannon_capacity_fd_1toN(plan, snr_db)
            except DomainError as exc:
                rows.append(CapacityRow(plan, snr_db, hd, fd1, None, str(exc)))
                continue
            rows.append(CapacityRow(plan, snr_db, hd, fd1, fdn))
    return rows
