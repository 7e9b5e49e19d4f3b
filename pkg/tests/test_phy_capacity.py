import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fdcap import DomainError
from fdcap.phy_capacity import (
    Arrangement,
    BandwidthRatio,
    ChannelPlan,
    FixedDb,
    GuardAccounting,
    SnrPoint,
    guard_band_breakeven,
    guard_band_breakeven_closed_form,
    log2_1p_db,
    narrowing_snr_gain_db,
    shannon_capacity_fd_1to1,
    shannon_capacity_fd_1toN,
    shannon_capacity_hd,
    sweep_capacity,
)
from fdcap.presets import FIG4_SNR_DB, fig4_plan

bandwidths = st.floats(min_value=1e3, max_value=1e10)
snrs = st.floats(min_value=-300, max_value=300)


@pytest.mark.parametrize("snr_db,expected_mbps", [(0, 20.0), (25, 166.18)])
def test_hd_capacity_matches_plot(snr_db, expected_mbps):
    c = shannon_capacity_hd(20e6, SnrPoint(snr_db))
    assert c.arrangement is Arrangement.HALF_DUPLEX
    assert c.bits_per_second / 1e6 == pytest.approx(expected_mbps, abs=0.01)


def test_hd_capacity_vanishes_with_snr():
    assert shannon_capacity_hd(20e6, -400).bits_per_second == pytest.approx(0.0, abs=1e-30)


@pytest.mark.parametrize("snr_db,expected_mbps", [(0, 40.0), (10, 138.37)])
def test_fd1_capacity_matches_plot(snr_db, expected_mbps):
    assert shannon_capacity_fd_1to1(20e6, snr_db).bits_per_second / 1e6 == pytest.approx(expected_mbps, abs=0.01)


@pytest.mark.parametrize("bad", [0.0, -1.0])
def test_nonpositive_bandwidth_rejected(bad):
    with pytest.raises(DomainError):
        shannon_capacity_hd(bad, 0)
    with pytest.raises(DomainError):
        shannon_capacity_fd_1to1(bad, 0)


def test_nonfinite_snr_rejected():
    with pytest.raises(DomainError):
        SnrPoint(float("nan"))


def test_log2_1p_db_against_direct_formula():
    for s in (-40, -3, 0, 0.5, 7, 30, 60):
        assert log2_1p_db(s) == pytest.approx(math.log2(1 + 10 ** (s / 10)), rel=1e-14)
    # direct form overflows here, the stable one does not
    assert log2_1p_db(4000) == pytest.approx(400 * math.log2(10))


def test_snr_gain_modes():
    assert narrowing_snr_gain_db(ChannelPlan(20e6, 2, snr_gain=FixedDb(3.0))) == 3.0
    assert narrowing_snr_gain_db(ChannelPlan(20e6, 4, snr_gain=FixedDb(3.0))) == 3.0
    assert narrowing_snr_gain_db(ChannelPlan(20e6, 2, snr_gain=BandwidthRatio())) == pytest.approx(3.0103, abs=1e-4)
    for mode in (FixedDb(3.0), FixedDb(7.0), BandwidthRatio()):
        assert narrowing_snr_gain_db(ChannelPlan(20e6, 1, snr_gain=mode)) == 0.0


@pytest.mark.parametrize("snr_db,expected_mbps", [(0, 62.67), (25, 368.42)])
def test_fd_1toN_matches_plot(snr_db, expected_mbps):
    c = shannon_capacity_fd_1toN(fig4_plan(), snr_db)
    assert c.arrangement is Arrangement.FD_1TON
    assert c.bits_per_second / 1e6 == pytest.approx(expected_mbps, abs=0.01)


def test_fd_1toN_single_channel_collapses():
    plan = ChannelPlan(20e6, 1, 0.0)
    assert shannon_capacity_fd_1toN(plan, 10).bits_per_second / 1e6 == pytest.approx(138.37, abs=0.01)


def test_guard_ignored_for_single_channel():
    assert ChannelPlan(20e6, 1, 5e6).usable_bandwidth_hz == 20e6


def test_total_guard_accounting_is_literal_formula():
    plan = ChannelPlan(20e6, 2, 100e3, FixedDb(3.0), GuardAccounting.TOTAL)
    expected = 4 * (20e6 - 100e3) / 2 * math.log2(1 + 10 ** 0.3)
    assert shannon_capacity_fd_1toN(plan, 0).bits_per_second == pytest.approx(expected, rel=1e-14)


def test_guard_eating_the_band_rejected():
    with pytest.raises(DomainError):
        shannon_capacity_fd_1toN(ChannelPlan(20e6, 2, 10e6), 0)


def test_breakeven_near_1_07_mhz():
    g = guard_band_breakeven(20e6, 2, 25, FixedDb(3.0))
    assert g == pytest.approx(1.0687e6, rel=1e-4)
    assert g == pytest.approx(guard_band_breakeven_closed_form(20e6, 2, 25, 3.0), rel=1e-9)


def test_breakeven_low_snr_limit():
    # X / X_gain -> 1 / 10^0.3 as the SNR vanishes
    g = guard_band_breakeven(20e6, 2, -60, FixedDb(3.0))
    assert g == pytest.approx(guard_band_breakeven_closed_form(20e6, 2, -60, 3.0), rel=1e-9)
    assert g == pytest.approx(10e6 * (1 - 10 ** -0.3), rel=1e-5)


def test_breakeven_zero_without_gain():
    assert guard_band_breakeven(20e6, 2, 25, FixedDb(0.0)) == 0.0


def test_breakeven_needs_two_channels():
    with pytest.raises(DomainError):
        guard_band_breakeven(20e6, 1, 25)


def test_breakeven_total_accounting_doubles():
    per = guard_band_breakeven(20e6, 2, 25)
    total = guard_band_breakeven(20e6, 2, 25, guard_accounting=GuardAccounting.TOTAL)
    assert total == pytest.approx(2 * per, rel=1e-9)


def test_sweep_fig4_table():
    rows = sweep_capacity([fig4_plan()], FIG4_SNR_DB)
    assert len(rows) == 10
    assert sum(1 for r in rows for c in (r.hd, r.fd1, r.fdN) if c) == 30
    row0 = next(r for r in rows if r.snr_db == 0)
    assert row0.fdN.bits_per_second == shannon_capacity_fd_1toN(fig4_plan(), 0).bits_per_second
    assert [r.snr_db for r in rows] == list(FIG4_SNR_DB)


def test_sweep_empty_and_single():
    assert sweep_capacity([fig4_plan()], []) == []
    (row,) = sweep_capacity([fig4_plan()], [SnrPoint(5)])
    assert row.hd == shannon_capacity_hd(20e6, 5)
    assert row.fd1 == shannon_capacity_fd_1to1(20e6, 5)


def test_sweep_flags_bad_points():
    rows = sweep_capacity([ChannelPlan(20e6, 2, 12e6), fig4_plan()], [0])
    assert not rows[0].ok and rows[0].fdN is None and rows[0].hd is not None
    assert rows[1].ok


@settings(max_examples=300)
@given(bandwidths, snrs)
def test_fd1_is_exactly_twice_hd(b, s):
    assert shannon_capacity_fd_1to1(b, s).bits_per_second == 2 * shannon_capacity_hd(b, s).bits_per_second


@given(bandwidths, snrs, st.floats(min_value=1e-3, max_value=10))
def test_monotone_in_snr(b, s, ds):
    plan = ChannelPlan(b, 2, 0.0)
    assert shannon_capacity_hd(b, s + ds).bits_per_second > shannon_capacity_hd(b, s).bits_per_second
    assert shannon_capacity_fd_1toN(plan, s + ds).bits_per_second > shannon_capacity_fd_1toN(plan, s).bits_per_second


@given(bandwidths, snrs, st.floats(min_value=1.001, max_value=10))
def test_monotone_in_bandwidth(b, s, factor):
    assert shannon_capacity_hd(b * factor, s).bits_per_second > shannon_capacity_hd(b, s).bits_per_second
    assert (shannon_capacity_fd_1toN(ChannelPlan(b * factor, 2), s).bits_per_second
            > shannon_capacity_fd_1toN(ChannelPlan(b, 2), s).bits_per_second)


@given(bandwidths, snrs)
def test_zero_guard_two_channels_beat_1to1(b, s):
    plan = ChannelPlan(b, 2, 0.0, FixedDb(3.0))
    assert shannon_capacity_fd_1toN(plan, s).bits_per_second > shannon_capacity_fd_1to1(b, s).bits_per_second


@given(snrs, st.floats(min_value=0, max_value=4.9e6), st.floats(min_value=1, max_value=5e6))
def test_capacity_decreasing_in_guard(s, g, dg):
    lo = shannon_capacity_fd_1toN(ChannelPlan(20e6, 2, g), s).bits_per_second
    hi_guard = min(g + dg, 9.99e6)
    assert shannon_capacity_fd_1toN(ChannelPlan(20e6, 2, hi_guard), s).bits_per_second < lo


@given(st.floats(min_value=-40, max_value=60), st.integers(min_value=2, max_value=8))
def test_breakeven_equalizes_capacities(s, n):
    g = guard_band_breakeven(20e6, n, s, BandwidthRatio())
    fd1 = shannon_capacity_fd_1to1(20e6, s).bits_per_second
    fdn = shannon_capacity_fd_1toN(ChannelPlan(20e6, n, g, BandwidthRatio()), s).bits_per_second
    assert abs(fdn - fd1) <= 1.0


@given(bandwidths, snrs)
def test_single_channel_matches_1to1(b, s):
    assert (shannon_capacity_fd_1toN(ChannelPlan(b, 1, 0.0), s).bits_per_second
            == shannon_capacity_fd_1to1(b, s).bits_per_second)
