"""Slotted simulation of saturated CSMA/CA with FD dual-links.

This is the slotted abstraction the analytical model rests on, run
without the decoupling approximation: every virtual slot is idle,
a success or a collision, and every station whose counter is not zero
counts down one per virtual slot. A station transmits when its counter
reaches zero; afterwards it draws a fresh counter uniformly from
[0, cw_min * 2^stage - 1], resetting the stage on success and raising it
(capped at the maximum stage) on collision.

Event durations and payloads come from the analytical model, so the
simulator checks the probability side (tau, P_i, P_s, P_c) and the renewal-reward
averaging, not the timing composition.

For 1:N access each narrow channel is an independent contention process
with its own random stream; credited bits are summed over channels.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, replace
from typing import Sequence

import numpy as np
from scipy import stats

from fdcap.dcf_model import (
    AccessMode,
    DcfScenario,
    PcVariant,
    collision_duration,
    saturation_throughput,
    secondary_payload,
    success_duration,
)
from fdcap.errors import DomainError, SimulationError

RNG_ALGORITHM = "numpy.PCG64"
_CHUNK = 1 << 16


@dataclass(frozen=True)
class SimConfig:
    scenario: DcfScenario
    seed: int = 42
    confidence: float = 0.95
    max_rel_error: float = 0.05
    min_batches: int = 30
    batch_events: int = 5000
    max_slots: int = 200_000_000

    def __post_init__(self):
        if not 0.0 < self.confidence < 1.0:
            raise DomainError("confidence must lie in (0, 1)")
        if not self.max_rel_error > 0:
            raise DomainError("max_rel_error must be positive")
        if self.min_batches < 2 or self.batch_events < 1:
            raise DomainError("need min_batches >= 2 and batch_events >= 1")


@dataclass
class SimResult:
    s_bps: float
    ci_halfwidth_bps: float
    confidence: float
    slots_simulated: int
    event_counts: tuple[int, int, int]
    batches: int
    per_station_successes: list[int] = field(repr=False)
    seed: int = 0
    rng_algorithm: str = RNG_ALGORITHM

    def to_record(self, config: SimConfig) -> dict:
        sc = config.scenario
        return {
            "config": {
                "n": sc.n_stations,
                "mode": sc.access_mode.value,
                "n_channels": sc.channel_multiplier,
                "cw_min": sc.cw_min,
                "stages": sc.max_backoff_stage,
                "seed": config.seed,
                "confidence": config.confidence,
                "max_rel_error": config.max_rel_error,
                "batch_events": config.batch_events,
                "rng": self.rng_algorithm,
            },
            "s_bps": self.s_bps,
            "ci": self.ci_halfwidth_bps,
            "slots": self.slots_simulated,
            "event_counts": {
                "idle": self.event_counts[0],
                "success": self.event_counts[1],
                "collision": self.event_counts[2],
            },
        }

    def to_json_line(self, config: SimConfig) -> str:
        return json.dumps(self.to_record(config), sort_keys=True)


class _Channel:
    """One contention process: n stations sharing a single narrow channel."""

    def __init__(self, n, cw_min, max_stage, rng):
        self.windows = [cw_min * 2**i for i in range(max_stage + 1)]
        self.max_stage = max_stage
        self.rng = rng
        self._buf = rng.random(_CHUNK)
        self._pos = 0
        self.stage = [0] * n
        self.counter = [self._draw(self.windows[0]) for _ in range(n)]
        self.successes = [0] * n
        self.idle = self.success = self.collision = 0

    def _draw(self, window):
        if self._pos == _CHUNK:
            self._buf = self.rng.random(_CHUNK)
            self._pos = 0
        u = self._buf[self._pos]
        self._pos += 1
        return int(u * window)

    def step(self):
        """Advance to and through the next busy slot.

        Returns (idle_slots_skipped, transmitter_count).
        """
        counter = self.counter
        k = min(counter)
        if k:
            counter[:] = [c - k for c in counter]
            self.idle += k
        tx = [i for i, c in enumerate(counter) if c == 0]
        for i in range(len(counter)):
            if counter[i]:
                counter[i] -= 1
        if len(tx) == 1:
            i = tx[0]
            self.success += 1
            self.successes[i] += 1
            self.stage[i] = 0
            counter[i] = self._draw(self.windows[0])
        else:
            self.collision += 1
            for i in tx:
                s = min(self.stage[i] + 1, self.max_stage)
                self.stage[i] = s
                counter[i] = self._draw(self.windows[s])
        return k, len(tx)


def run_saturation_sim(config: SimConfig) -> SimResult:
    """Simulate until the batch-means CI is tight enough, return S in bits/s."""
    sc = config.scenario
    t_s = success_duration(sc)
    t_c = collision_duration(sc)
    t_i = sc.profile.slot_us
    credit = 8.0 * (sc.frame_plan.payload_bytes + secondary_payload(sc).l2_bytes)

    seeds = np.random.SeedSequence(config.seed).spawn(sc.channel_multiplier)
    channels = [
        _Channel(sc.n_stations, sc.cw_min, sc.max_backoff_stage, np.random.Generator(np.random.PCG64(s)))
        for s in seeds
    ]
    bits = np.zeros(len(channels))
    time_us = np.zeros(len(channels))
    batch_rates = []
    slots = 0
    while True:
        b_bits = np.zeros(len(channels))
        b_time = np.zeros(len(channels))
        for j, ch in enumerate(channels):
            for _ in range(config.batch_events):
                idle, ntx = ch.step()
                if ntx == 1:
                    b_bits[j] += credit
                    b_time[j] += idle * t_i + t_s
                else:
                    b_time[j] += idle * t_i + t_c
                slots += idle + 1
        bits += b_bits
        time_us += b_time
        batch_rates.append(float(np.sum(b_bits / b_time)) * 1e6)
        if slots > config.max_slots:
            raise SimulationError(
                f"slot cap {config.max_slots} reached after {len(batch_rates)} batches"
            )
        k = len(batch_rates)
        if k < config.min_batches:
            continue
        s_bps = float(np.sum(bits / time_us)) * 1e6
        sd = float(np.std(batch_rates, ddof=1))
        half = float(stats.t.ppf(0.5 + config.confidence / 2, k - 1)) * sd / math.sqrt(k)
        if s_bps == 0.0 or half / s_bps < config.max_rel_error:
            break

    per_station = [sum(ch.successes[i] for ch in channels) for i in range(sc.n_stations)]
    counts = (
        sum(ch.idle for ch in channels),
        sum(ch.success for ch in channels),
        sum(ch.collision for ch in channels),
    )
    return SimResult(
        s_bps=s_bps,
        ci_halfwidth_bps=half,
        confidence=config.confidence,
        slots_simulated=slots,
        event_counts=counts,
        batches=k,
        per_station_successes=per_station,
        seed=config.seed,
    )


@dataclass(frozen=True)
class ValidationRow:
    n: int
    mode: AccessMode
    analytical_bps: float
    simulated_bps: float
    ci_halfwidth_bps: float
    rel_diff: float
    passed: bool


@dataclass
class ValidationReport:
    rows: list[ValidationRow]
    tolerance: float

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def as_dicts(self) -> list[dict]:
        return [{**asdict(r), "mode": r.mode.value} for r in self.rows]


def validate_against_model(
    scenario: DcfScenario,
    n_list: Sequence[int],
    tolerance: float,
    seed: int = 42,
    **sim_options,
) -> ValidationReport:
    """Compare simulated and analytical S for each n in ``n_list``.

    The analytical side always uses additive event probabilities, which is
    what a slotted process realizes.
    """
    if not tolerance > 0:
        raise DomainError("tolerance must be positive")
    rows = []
    for n in n_list:
        sc = scenario.with_n(n)
        model = saturation_throughput(replace(sc, pc_variant=PcVariant.BIANCHI_STANDARD)).s_bps
        sim = run_saturation_sim(SimConfig(sc, seed=seed, **sim_options))
        rel = abs(sim.s_bps - model) / model
        rows.append(ValidationRow(n, sc.access_mode, model, sim.s_bps, sim.ci_halfwidth_bps,
                                  rel, rel <= tolerance))
    return ValidationReport(rows, tolerance)
