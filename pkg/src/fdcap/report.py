"""Table output: CSV, gnuplot .dat, a small SVG line-chart renderer, run manifests."""

from __future__ import annotations

import datetime as _dt
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence
from xml.sax.saxutils import escape

import fdcap


def fmt(value) -> str:
    """Six significant digits, '.' decimal separator; empty for missing values."""
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    if isinstance(value, (int, str)):
        return str(value)
    return f"{value:.6g}"


def csv_text(columns: Sequence[str], rows: Sequence[Sequence]) -> str:
    lines = [",".join(columns)]
    lines += [",".join(fmt(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def dat_text(columns: Sequence[str], rows: Sequence[Sequence]) -> str:
    lines = ["# " + " ".join(columns)]
    lines += [" ".join(fmt(v) or "NaN" for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def write_text(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        fh.write(text)
    return path


def _nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / target
    mag = 10 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw)
    start = math.floor(lo / step) * step
    ticks = []
    t = start
    while t <= hi + step * 1e-9:
        ticks.append(round(t, 12))
        t += step
    return ticks


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def render_svg(
    x: Sequence[float],
    series: dict[str, Sequence[float | None]],
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
    width: int = 640,
    height: int = 420,
) -> str:
    """Line chart with axes, ticks and a legend. Missing points break the line."""
    left, right, top, bottom = 70, 20, 40, 55
    pw, ph = width - left - right, height - top - bottom
    ys = [v for vals in series.values() for v in vals if v is not None]
    xticks = _nice_ticks(min(x), max(x)) if x else [0.0, 1.0]
    yticks = _nice_ticks(min(0.0, min(ys, default=0.0)), max(ys, default=1.0))
    x0, x1 = xticks[0], xticks[-1]
    y0, y1 = yticks[0], yticks[-1]

    def sx(v):
        return left + (v - x0) / (x1 - x0) * pw

    def sy(v):
        return top + ph - (v - y0) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>',
    ]
    for t in yticks:
        y = sy(t)
        out.append(f'<line x1="{left}" y1="{y:.2f}" x2="{left + pw}" y2="{y:.2f}" stroke="#ddd" stroke-dasharray="3,3"/>')
        out.append(f'<text x="{left - 6}" y="{y + 4:.2f}" text-anchor="end">{t:g}</text>')
    for t in xticks:
        xx = sx(t)
        out.append(f'<line x1="{xx:.2f}" y1="{top + ph}" x2="{xx:.2f}" y2="{top + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{xx:.2f}" y="{top + ph + 18}" text-anchor="middle">{t:g}</text>')
    out.append(f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{height - 12}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(
        f'<text x="16" y="{top + ph / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {top + ph / 2:.1f})">{escape(ylabel)}</text>'
    )
    for k, (label, vals) in enumerate(series.items()):
        color = _PALETTE[k % len(_PALETTE)]
        segment: list[str] = []
        segments = [segment]
        for xv, yv in zip(x, vals):
            if yv is None:
                segment = []
                segments.append(segment)
            else:
                segment.append(f"{sx(xv):.2f},{sy(yv):.2f}")
        for seg in segments:
            if seg:
                out.append(f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{" ".join(seg)}"/>')
        ly = top + 14 + 16 * k
        out.append(f'<line x1="{left + 10}" y1="{ly}" x2="{left + 34}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{left + 40}" y="{ly + 4}">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


@dataclass
class RunManifest:
    command: list[str]
    config_paths: list[str] = field(default_factory=list)
    seeds: list[int] = field(default_factory=list)
    outputs: list[str] = field(default_factory=list)
    tool_version: str = fdcap.__version__
    timestamp: str = field(
        default_factory=lambda: _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    )

    def write(self, path: Path) -> Path:
        return write_text(path, json.dumps(asdict(self), indent=2, sort_keys=True) + "\n")


def argv_echo(argv: Sequence[str] | None) -> list[str]:
    return ["fdcap", *(sys.argv[1:] if argv is None else argv)]
