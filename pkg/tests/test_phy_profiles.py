import pytest
from hypothesis import given
from hypothesis import strategies as st

from fdcap import DomainError
from fdcap.phy_profiles import (
    AirtimeMode,
    ChannelWidth,
    FramePlan,
    PhyProfile,
    ack_airtime,
    builtin_profile,
    cts_airtime,
    frame_airtime,
    header_airtime,
    rts_airtime,
)

P20 = builtin_profile(ChannelWidth.W20MHZ)
P10 = builtin_profile(ChannelWidth.W10MHZ)
P5 = builtin_profile(ChannelWidth.W5MHZ)


@pytest.mark.parametrize(
    "profile,slot,sifs,difs,preamble,symbol",
    [
        (P20, 9, 16, 34, 20, 4),
        (P10, 13, 32, 58, 40, 8),
        (P5, 21, 64, 106, 80, 16),
    ],
)
def test_builtin_timing(profile, slot, sifs, difs, preamble, symbol):
    assert (profile.slot_us, profile.sifs_us, profile.difs_us) == (slot, sifs, difs)
    assert (profile.preamble_sig_us, profile.ofdm_symbol_us) == (preamble, symbol)
    assert profile.difs_us == profile.sifs_us + 2 * profile.slot_us


def test_half_and_quarter_clock_scaling():
    for attr in ("preamble_sig_us", "ofdm_symbol_us", "sifs_us"):
        assert getattr(P10, attr) == 2 * getattr(P20, attr)
        assert getattr(P5, attr) == 4 * getattr(P20, attr)
    assert P10.rates_bps == tuple(r / 2 for r in P20.rates_bps)
    assert 27e6 in P10.rates_bps and 12e6 in P10.rates_bps


def test_builtin_accepts_width_in_hz():
    assert builtin_profile(10e6) == P10


def test_profile_rejects_inconsistent_difs():
    with pytest.raises(DomainError):
        PhyProfile(20e6, 9, 16, 40, 20, 4, (6e6,))


def test_profile_rejects_unsorted_rates():
    with pytest.raises(DomainError):
        PhyProfile(20e6, 9, 16, 34, 20, 4, (12e6, 6e6))


def test_payload_airtime_simple():
    assert frame_airtime(788, 48e6, P20) == pytest.approx(131.3333, abs=1e-4)


def test_payload_airtime_quantized():
    assert frame_airtime(788, 48e6, P20, AirtimeMode.OFDM_QUANTIZED) == 132.0


def test_exact_symbol_multiple_not_padded():
    # 24 bytes at 48 Mbps is exactly one 192-bit symbol
    assert frame_airtime(24, 48e6, P20, AirtimeMode.OFDM_QUANTIZED) == 4.0


@pytest.mark.parametrize("mode", list(AirtimeMode))
def test_empty_frame_takes_no_time(mode):
    assert frame_airtime(0, 6e6, P20, mode, overhead_bits=22) == 0.0


def test_nonpositive_rate_rejected():
    with pytest.raises(DomainError):
        frame_airtime(10, 0, P20)


@pytest.mark.parametrize(
    "header,rate,profile,expected",
    [(28, 18e6, P20, 32.4444), (28, 12e6, P10, 58.6667), (0, 18e6, P20, 20.0)],
)
def test_header_airtime(header, rate, profile, expected):
    plan = FramePlan(mac_header_bytes=header, control_rate_bps=rate)
    assert header_airtime(plan, profile) == pytest.approx(expected, abs=1e-4)


@pytest.mark.parametrize("rate,profile,expected", [(18e6, P20, 26.2222), (12e6, P10, 49.3333)])
def test_ack_airtime(rate, profile, expected):
    assert ack_airtime(FramePlan(control_rate_bps=rate), profile) == pytest.approx(expected, abs=1e-4)


def test_rts_cts_default_sizes():
    plan = FramePlan(control_rate_bps=18e6)
    assert rts_airtime(plan, P20) == pytest.approx(20 + 160 / 18)
    assert cts_airtime(plan, P20) == pytest.approx(20 + 112 / 18)
    empty = FramePlan(ack_bytes=0, rts_bytes=0, cts_bytes=0)
    assert ack_airtime(empty, P20) == rts_airtime(empty, P20) == cts_airtime(empty, P20) == 20.0


def test_quantized_control_frame_with_service_bits():
    plan = FramePlan(control_rate_bps=6e6, airtime_mode="ofdm", service_tail_bits=22)
    # 112 + 22 bits over 24 bits/symbol -> 6 symbols
    assert ack_airtime(plan, P20) == 20 + 6 * 4


def test_frame_plan_validation():
    with pytest.raises(DomainError):
        FramePlan(payload_bytes=-1)
    with pytest.raises(DomainError):
        FramePlan(data_rate_bps=0)


sizes = st.integers(min_value=0, max_value=10_000)
rates = st.sampled_from(P20.rates_bps)


@given(sizes, sizes, rates)
def test_airtime_additive(a, b, r):
    assert frame_airtime(a + b, r, P20) == pytest.approx(frame_airtime(a, r, P20) + frame_airtime(b, r, P20))


@given(st.integers(min_value=1, max_value=10_000), st.floats(min_value=1e5, max_value=1e9), st.floats(min_value=1.01, max_value=5))
def test_airtime_decreasing_in_rate(nbytes, rate, factor):
    assert frame_airtime(nbytes, rate * factor, P20) < frame_airtime(nbytes, rate, P20)


@given(sizes, rates)
def test_airtime_increasing_in_bytes(nbytes, rate):
    assert frame_airtime(nbytes + 1, rate, P20) > frame_airtime(nbytes, rate, P20)
