"""802.11a OFDM timing per channel width and frame airtimes.

10 and 5 MHz channels use half- and quarter-clocked operation, which
stretches the preamble, OFDM symbol and SIFS by 2x and 4x. All durations
are in microseconds, rates in bits/s.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from fdcap.errors import DomainError


class ChannelWidth(enum.Enum):
    W20MHZ = 20e6
    W10MHZ = 10e6
    W5MHZ = 5e6


class AirtimeMode(str, enum.Enum):
    SIMPLE_RATIO = "simple"
    OFDM_QUANTIZED = "ofdm"


@dataclass(frozen=True)
class PhyProfile:
    channel_width_hz: float
    slot_us: float
    sifs_us: float
    difs_us: float
    preamble_sig_us: float
    ofdm_symbol_us: float
    rates_bps: tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rates_bps", tuple(float(r) for r in self.rates_bps))
        for name in ("slot_us", "sifs_us", "difs_us", "preamble_sig_us", "ofdm_symbol_us"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive")
        if not math.isclose(self.difs_us, self.sifs_us + 2 * self.slot_us):
            raise DomainError("DIFS must equal SIFS + 2 * slot")
        if any(r <= 0 for r in self.rates_bps):
            raise DomainError("rates must be positive")
        if any(b <= a for a, b in zip(self.rates_bps, self.rates_bps[1:])):
            raise DomainError("rates must be strictly ascending")

    @property
    def basic_rate_bps(self) -> float:
        return self.rates_bps[0]


_RATES_20MHZ = (6e6, 9e6, 12e6, 18e6, 24e6, 36e6, 48e6, 54e6)

# (slot, sifs) per width; preamble+SIGNAL and symbol scale with the clock
_TIMING = {
    ChannelWidth.W20MHZ: (9.0, 16.0, 1),
    ChannelWidth.W10MHZ: (13.0, 32.0, 2),
    ChannelWidth.W5MHZ: (21.0, 64.0, 4),
}


def builtin_profile(width: ChannelWidth | float) -> PhyProfile:
    width = ChannelWidth(width)
    slot, sifs, stretch = _TIMING[width]
    return PhyProfile(
        channel_width_hz=width.value,
        slot_us=slot,
        sifs_us=sifs,
        difs_us=sifs + 2 * slot,
        preamble_sig_us=20.0 * stretch,
        ofdm_symbol_us=4.0 * stretch,
        rates_bps=tuple(r / stretch for r in _RATES_20MHZ),
    )


@dataclass(frozen=True)
class FramePlan:
    """Frame sizes (bytes) and rates of one dual-link exchange.

    MAC headers and control frames go at ``control_rate_bps``, the payload
    at ``data_rate_bps``. ``service_tail_bits`` is added to every PSDU when
    airtimes are quantized to OFDM symbols (16 SERVICE + 6 tail in 802.11a).
    """

    payload_bytes: int = 788
    data_rate_bps: float = 48e6
    control_rate_bps: float = 18e6
    mac_header_bytes: int = 28
    ack_bytes: int = 14
    rts_bytes: int = 20
    cts_bytes: int = 14
    propagation_delay_us: float = 1.0
    airtime_mode: AirtimeMode = AirtimeMode.SIMPLE_RATIO
    service_tail_bits: int = 0

    def __post_init__(self):
        object.__setattr__(self, "airtime_mode", AirtimeMode(self.airtime_mode))
        for name in ("payload_bytes", "mac_header_bytes", "ack_bytes", "rts_bytes",
                     "cts_bytes", "service_tail_bits"):
            if getattr(self, name) < 0:
                raise DomainError(f"{name} must be >= 0")
        if not (self.data_rate_bps > 0 and self.control_rate_bps > 0):
            raise DomainError("rates must be positive")
        if self.propagation_delay_us < 0:
            raise DomainError("propagation delay must be >= 0")


def frame_airtime(
    nbytes: float,
    rate_bps: float,
    profile: PhyProfile,
    mode: AirtimeMode = AirtimeMode.SIMPLE_RATIO,
    overhead_bits: int = 0,
) -> float:
    """Time to send ``nbytes`` at ``rate_bps``, preamble excluded.

    An empty PSDU takes no time. In OFDM mode the bit count (plus any
    SERVICE/tail overhead) is padded to whole symbols.
    """
    if not rate_bps > 0:
        raise DomainError(f"rate must be positive, got {rate_bps}")
    if nbytes < 0:
        raise DomainError("byte count must be >= 0")
    if nbytes == 0:
        return 0.0
    bits = 8 * nbytes + overhead_bits
    if AirtimeMode(mode) is AirtimeMode.OFDM_QUANTIZED:
        bits_per_symbol = rate_bps * profile.ofdm_symbol_us * 1e-6
        # round() guards against 131.99999 symbols from float noise
        n_symbols = math.ceil(round(bits / bits_per_symbol, 9))
        return n_symbols * profile.ofdm_symbol_us
    return bits / rate_bps * 1e6


def _control_frame(nbytes: int, plan: FramePlan, profile: PhyProfile) -> float:
    return profile.preamble_sig_us + frame_airtime(
        nbytes, plan.control_rate_bps, profile, plan.airtime_mode, plan.service_tail_bits
    )


def header_airtime(plan: FramePlan, profile: PhyProfile) -> float:
    """T_H: PHY preamble/SIGNAL plus the MAC header at the control rate."""
    return _control_frame(plan.mac_header_bytes, plan, profile)


def payload_airtime(plan: FramePlan, profile: PhyProfile) -> float:
    """T_L: the payload at the data rate."""
    return frame_airtime(
        plan.payload_bytes, plan.data_rate_bps, profile, plan.airtime_mode, plan.service_tail_bits
    )


def ack_airtime(plan: FramePlan, profile: PhyProfile) -> float:
    return _control_frame(plan.ack_bytes, plan, profile)


def rts_airtime(plan: FramePlan, profile: PhyProfile) -> float:
    return _control_frame(plan.rts_bytes, plan, profile)


def cts_airtime(plan: FramePlan, profile: PhyProfile) -> float:
    return _control_frame(plan.cts_bytes, plan, profile)
