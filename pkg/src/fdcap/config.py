"""Plain-text ``key = value`` files for PHY profiles and DCF scenarios.

Blank lines and ``#`` comments are ignored. List values (``rates_bps``)
are comma separated. A scenario file may carry profile keys too; missing
profile keys fall back to the built-in profile for ``width_hz``.
"""

from __future__ import annotations

from dataclasses import fields
from pathlib import Path

from fdcap.dcf_model import AccessMode, DcfScenario, PcVariant
from fdcap.phy_profiles import ChannelWidth, FramePlan, PhyProfile, builtin_profile

PROFILE_KEYS = {
    "width_hz": "channel_width_hz",
    "slot_us": "slot_us",
    "sifs_us": "sifs_us",
    "difs_us": "difs_us",
    "preamble_us": "preamble_sig_us",
    "symbol_us": "ofdm_symbol_us",
    "rates_bps": "rates_bps",
}

SCENARIO_KEYS = {
    "n": "n_stations",
    "cw_min": "cw_min",
    "stages": "max_backoff_stage",
    "mode": "access_mode",
    "fd_turnaround_us": "fd_turnaround_us",
    "n_channels": "n_channels",
    "pc_variant": "pc_variant",
    "hd_collision_timeout": "hd_collision_timeout",
}

PLAN_KEYS = {
    "payload_bytes": "payload_bytes",
    "data_rate_bps": "data_rate_bps",
    "control_rate_bps": "control_rate_bps",
    "delta_us": "propagation_delay_us",
    "mac_header_bytes": "mac_header_bytes",
    "ack_bytes": "ack_bytes",
    "rts_bytes": "rts_bytes",
    "cts_bytes": "cts_bytes",
    "airtime_mode": "airtime_mode",
    "service_tail_bits": "service_tail_bits",
}


class ConfigError(ValueError):
    pass


def parse_kv(text: str) -> dict[str, str]:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in out:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        out[key] = value
    return out


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (tuple, list)):
        return ", ".join(_fmt(v) for v in value)
    if hasattr(value, "value") and isinstance(value.value, str):
        return value.value
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _coerce(cls, attr: str, raw: str):
    ftype = {f.name: f.type for f in fields(cls)}[attr]
    ftype = ftype if isinstance(ftype, str) else getattr(ftype, "__name__", str(ftype))
    try:
        if attr == "rates_bps":
            return tuple(float(v) for v in raw.split(",") if v.strip())
        if ftype == "bool":
            if raw.lower() not in ("true", "false", "1", "0", "yes", "no"):
                raise ValueError(raw)
            return raw.lower() in ("true", "1", "yes")
        if ftype == "int":
            return int(float(raw)) if float(raw).is_integer() else int(raw)
        if ftype == "float":
            return float(raw)
    except ValueError:
        raise ConfigError(f"bad value for {attr}: {raw!r}") from None
    return raw


def _pick(cls, values: dict[str, str], mapping: dict[str, str]) -> dict:
    return {attr: _coerce(cls, attr, values[key]) for key, attr in mapping.items() if key in values}


def profile_from_kv(values: dict[str, str]) -> PhyProfile:
    given = _pick(PhyProfile, values, PROFILE_KEYS)
    width = given.get("channel_width_hz", 20e6)
    try:
        base = builtin_profile(ChannelWidth(width)).__dict__
    except ValueError:
        base = {}
    merged = {**base, **given}
    missing = [k for k, attr in PROFILE_KEYS.items() if attr not in merged]
    if missing:
        raise ConfigError(f"profile keys missing for non-standard width: {missing}")
    return PhyProfile(**merged)


def profile_to_kv(profile: PhyProfile) -> str:
    lines = [f"{key} = {_fmt(getattr(profile, attr))}" for key, attr in PROFILE_KEYS.items()]
    return "\n".join(lines) + "\n"


def scenario_from_kv(values: dict[str, str]) -> DcfScenario:
    unknown = set(values) - set(PROFILE_KEYS) - set(SCENARIO_KEYS) - set(PLAN_KEYS)
    if unknown:
        raise ConfigError(f"unknown keys: {sorted(unknown)}")
    kwargs = _pick(DcfScenario, values, SCENARIO_KEYS)
    kwargs.setdefault("n_stations", 10)
    try:
        if "access_mode" in kwargs:
            kwargs["access_mode"] = AccessMode(kwargs["access_mode"])
        if "pc_variant" in kwargs:
            kwargs["pc_variant"] = PcVariant(kwargs["pc_variant"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return DcfScenario(
        frame_plan=FramePlan(**_pick(FramePlan, values, PLAN_KEYS)),
        profile=profile_from_kv(values),
        **kwargs,
    )


def scenario_to_kv(scenario: DcfScenario) -> str:
    lines = [f"{key} = {_fmt(getattr(scenario, attr))}" for key, attr in SCENARIO_KEYS.items()]
    lines += [f"{key} = {_fmt(getattr(scenario.frame_plan, attr))}" for key, attr in PLAN_KEYS.items()]
    return "\n".join(lines) + "\n" + profile_to_kv(scenario.profile)


def load_scenario(path: str | Path) -> DcfScenario:
    return scenario_from_kv(parse_kv(Path(path).read_text()))


def load_profile(path: str | Path) -> PhyProfile:
    return profile_from_kv(parse_kv(Path(path).read_text()))
