"""Command-line front end: capacity sweeps, break-even, MAC sweeps, validation.

Exit codes: 0 success, 1 validation failure, 2 usage error, 3 numeric error.
Outputs go to --out, else $FDCAP_OUT_DIR, else ./fdcap-out.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import replace
from pathlib import Path

from fdcap.config import ConfigError, load_scenario
from fdcap.dcf_model import AccessMode, DcfScenario, PcVariant, saturation_throughput
from fdcap.errors import DomainError, NumericError, SimulationError
from fdcap.phy_capacity import (
    BandwidthRatio,
    ChannelPlan,
    FixedDb,
    GuardAccounting,
    guard_band_breakeven,
    shannon_capacity_fd_1to1,
    shannon_capacity_fd_1toN,
    sweep_capacity,
)
from fdcap.presets import FIG6_MODES, PRESETS, mac_scenario
from fdcap.report import RunManifest, argv_echo, csv_text, dat_text, render_svg, write_text
from fdcap.sim_csma import validate_against_model

OUT_DIR_ENV = "FDCAP_OUT_DIR"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_range(text: str, integer: bool = False) -> list:
    """``start:stop:step`` (stop included when aligned), ``a,b,c`` or a single value."""
    conv = int if integer else float
    try:
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 3:
                raise ValueError
            start, stop, step = (float(p) for p in parts)
            if step <= 0 or stop < start:
                raise ValueError
            count = math.floor((stop - start) / step + 1e-9) + 1
            values = [round(start + i * step, 10) for i in range(count)]
        else:
            values = [float(v) for v in text.split(",") if v.strip()]
        if not values:
            raise ValueError
        if integer and any(not v.is_integer() for v in values):
            raise ValueError
        return [conv(v) for v in values]
    except ValueError:
        raise UsageError(f"invalid range {text!r}; expected start:stop:step or a comma list") from None


def _out_dir(args) -> Path:
    return Path(args.out or os.environ.get(OUT_DIR_ENV) or "fdcap-out")


def _emit(args, argv, stem, columns, rows, chart=None, extra=None, config_paths=(), seeds=()):
    out = _out_dir(args)
    csv = csv_text(columns, rows)
    paths = [write_text(out / f"{stem}.csv", csv), write_text(out / f"{stem}.dat", dat_text(columns, rows))]
    if chart is not None and args.svg:
        paths.append(write_text(out / f"{stem}.svg", render_svg(**chart)))
    for name, text in (extra or {}).items():
        paths.append(write_text(out / name, text))
    manifest = RunManifest(argv_echo(argv), [str(p) for p in config_paths], list(seeds),
                           [str(p) for p in paths])
    manifest.write(out / f"{stem}.manifest.json")
    sys.stdout.write(csv)
    print(f"wrote {', '.join(str(p) for p in paths)}", file=sys.stderr)


def _gain(args):
    return BandwidthRatio() if args.gain_mode == "ratio" else FixedDb(args.gain_db)


def cmd_phy_sweep(args, argv) -> int:
    snrs = parse_range(args.snr)
    try:
        plan = ChannelPlan(args.b, args.n, args.g, _gain(args), GuardAccounting(args.guard_accounting))
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    rows = []
    for row in sweep_capacity([plan], snrs):
        if row.error:
            print(f"warning: snr {row.snr_db} dB: {row.error}", file=sys.stderr)
        rows.append([
            row.snr_db,
            row.hd.bits_per_second,
            row.fd1.bits_per_second,
            row.fdN.bits_per_second if row.fdN else None,
        ])
    mbps = lambda i: [r[i] / 1e6 if r[i] is not None else None for r in rows]
    chart = dict(
        x=snrs,
        series={
            f"{args.b / 1e6:g} MHz half-duplex": mbps(1),
            f"{args.b / 1e6:g} MHz full-duplex (1:1)": mbps(2),
            f"{args.n}x{plan.per_channel_hz / 1e6:.3g} MHz full-duplex (1:{args.n})": mbps(3),
        },
        title="Capacity below the MAC layer",
        xlabel="SNR (dB)",
        ylabel="Capacity (Mbps)",
    )
    _emit(args, argv, args.name or "phy_sweep", ["snr_db", "c_hd_bps", "c_fd1_bps", "c_fdN_bps"], rows, chart)
    return EXIT_OK


def cmd_breakeven(args, argv) -> int:
    if args.n < 2:
        raise UsageError("--n must be >= 2 for a break-even analysis")
    if not args.b > 0:
        raise UsageError("--b must be positive")
    rows = []
    accounting = GuardAccounting(args.guard_accounting)
    for snr in parse_range(args.snr):
        g = guard_band_breakeven(args.b, args.n, snr, _gain(args), accounting)
        plan = ChannelPlan(args.b, args.n, g, _gain(args), accounting)
        rows.append([
            snr,
            g,
            shannon_capacity_fd_1to1(args.b, snr).bits_per_second,
            shannon_capacity_fd_1toN(plan, snr).bits_per_second,
        ])
    _emit(args, argv, args.name or "breakeven", ["snr_db", "g_star_hz", "c_fd1_bps", "c_fdN_bps"], rows)
    return EXIT_OK


_COLUMN = {
    AccessMode.HD_BASIC_2WAY: "s_hd2way",
    AccessMode.HD_RTSCTS_4WAY: "s_hd4way",
    AccessMode.FD_1TO1: "s_fd11",
    AccessMode.FD_1TON: "s_fd1N",
}

_LABEL = {
    AccessMode.HD_BASIC_2WAY: "Wi-Fi DATA-ACK",
    AccessMode.HD_RTSCTS_4WAY: "Wi-Fi RTS-CTS",
    AccessMode.FD_1TO1: "FD Wi-Fi MAC 1:1",
    AccessMode.FD_1TON: "FD Wi-Fi MAC 1:N",
}


def _modes(text: str | None, default) -> list[AccessMode]:
    if not text:
        return list(default)
    try:
        return [AccessMode(m.strip()) for m in text.split(",") if m.strip()]
    except ValueError:
        raise UsageError(f"unknown mode in {text!r}; choose from {[m.value for m in AccessMode]}") from None


def _scenarios(args, modes) -> tuple[dict[AccessMode, DcfScenario], list[str]]:
    """Template scenario per access mode, from a preset or config files."""
    paths = []
    if args.config:
        try:
            wide = load_scenario(args.config)
            narrow = load_scenario(args.narrow_config) if args.narrow_config else None
        except (ConfigError, DomainError, OSError) as exc:
            raise UsageError(str(exc)) from None
        paths = [p for p in (args.config, args.narrow_config) if p]
        out = {}
        for mode in modes:
            if mode is AccessMode.FD_1TON:
                if narrow is None:
                    raise UsageError("mode fd1N needs --narrow-config describing one narrow channel")
                out[mode] = replace(narrow, access_mode=mode)
            else:
                out[mode] = replace(wide, access_mode=mode)
    else:
        out = {mode: mac_scenario(args.preset, mode) for mode in modes}
    if args.pc_variant:
        out = {m: replace(s, pc_variant=PcVariant(args.pc_variant)) for m, s in out.items()}
    return out, paths


def cmd_mac_sweep(args, argv) -> int:
    ns = parse_range(args.n, integer=True)
    if min(ns) < 1:
        raise UsageError("station counts must be >= 1")
    modes = _modes(args.modes, FIG6_MODES)
    templates, paths = _scenarios(args, modes)
    rows = []
    for n in ns:
        rows.append([n] + [saturation_throughput(templates[m].with_n(n)).s_bps for m in modes])
    chart = dict(
        x=ns,
        series={_LABEL[m]: [r[k + 1] / 1e6 for r in rows] for k, m in enumerate(modes)},
        title="Saturation throughput",
        xlabel="Number of Stations",
        ylabel="Throughput (Mbps)",
    )
    _emit(args, argv, args.name or "mac_sweep", ["n"] + [_COLUMN[m] for m in modes], rows, chart,
          config_paths=paths)
    return EXIT_OK


def cmd_validate(args, argv) -> int:
    ns = parse_range(args.n, integer=True)
    if not args.tolerance > 0:
        raise UsageError("--tolerance must be positive")
    modes = _modes(args.modes, FIG6_MODES[:3])
    templates, paths = _scenarios(args, modes)
    rows, lines = [], []
    passed = True
    for mode in modes:
        report = validate_against_model(
            templates[mode], ns, args.tolerance, seed=args.seed,
            confidence=args.confidence, max_rel_error=args.max_rel_error,
            batch_events=args.batch_events,
        )
        passed &= report.passed
        for r in report.rows:
            rows.append([mode.value, r.n, r.analytical_bps, r.simulated_bps, r.ci_halfwidth_bps,
                         r.rel_diff, "pass" if r.passed else "FAIL"])
            lines.append(json.dumps({k: v for k, v in zip(
                ["mode", "n", "analytical_bps", "s_bps", "ci", "rel_diff", "passed"],
                [mode.value, r.n, r.analytical_bps, r.simulated_bps, r.ci_halfwidth_bps, r.rel_diff, r.passed],
            )}, sort_keys=True))
    _emit(
        args, argv, args.name or "validate",
        ["mode", "n", "analytical_bps", "simulated_bps", "ci_halfwidth_bps", "rel_diff", "status"],
        rows,
        extra={f"{args.name or 'validate'}.jsonl": "\n".join(lines) + "\n"},
        config_paths=paths, seeds=[args.seed],
    )
    print("validation " + ("passed" if passed else "FAILED"), file=sys.stderr)
    return EXIT_OK if passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fdcap", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def outputs(p):
        p.add_argument("--out", help=f"output directory (default ${OUT_DIR_ENV} or ./fdcap-out)")
        p.add_argument("--name", help="file stem for outputs")
        p.add_argument("--svg", action="store_true", help="also render an SVG chart")

    def phy(p):
        p.add_argument("--b", type=float, default=20e6, help="total FD bandwidth in Hz")
        p.add_argument("--n", type=int, default=2, help="number of narrow channels")
        p.add_argument("--gain-db", type=float, default=3.0, help="fixed narrowing SNR gain")
        p.add_argument("--gain-mode", choices=["fixed", "ratio"], default="fixed",
                       help="ratio: gain = 10*log10(N)")
        p.add_argument("--guard-accounting", choices=[g.value for g in GuardAccounting],
                       default=GuardAccounting.PER_CHANNEL.value)

    p = sub.add_parser("phy-sweep", help="HD / FD 1:1 / FD 1:N capacity over an SNR range")
    phy(p)
    p.add_argument("--g", type=float, default=100e3, help="guard band in Hz")
    p.add_argument("--snr", default="-20:25:5", help="SNR range in dB")
    outputs(p)
    p.set_defaults(func=cmd_phy_sweep)

    p = sub.add_parser("breakeven", help="largest guard band where 1:N still beats 1:1")
    phy(p)
    p.add_argument("--snr", default="25", help="SNR in dB (range or list for a sweep)")
    outputs(p)
    p.set_defaults(func=cmd_breakeven)

    def mac(p):
        p.add_argument("--preset", choices=sorted(PRESETS), default="fig6")
        p.add_argument("--config", help="scenario file for the full-width channel")
        p.add_argument("--narrow-config", help="scenario file for one narrow channel (1:N)")
        p.add_argument("--pc-variant", choices=[v.value for v in PcVariant])
        p.add_argument("--modes", help="comma list of " + ",".join(m.value for m in AccessMode))

    p = sub.add_parser("mac-sweep", help="saturation throughput over station counts")
    mac(p)
    p.add_argument("--n", default="10:300:10", help="station counts")
    outputs(p)
    p.set_defaults(func=cmd_mac_sweep)

    p = sub.add_parser("validate", help="simulator vs analytical model")
    mac(p)
    p.add_argument("--n", default="5,10,20")
    p.add_argument("--tolerance", type=float, default=0.02)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--confidence", type=float, default=0.95)
    p.add_argument("--max-rel-error", type=float, default=0.05)
    p.add_argument("--batch-events", type=int, default=5000)
    outputs(p)
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, argv)
    except UsageError as exc:
        print(f"fdcap {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericError, SimulationError) as exc:
        print(f"fdcap {args.command}: numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except DomainError as exc:
        print(f"fdcap {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
