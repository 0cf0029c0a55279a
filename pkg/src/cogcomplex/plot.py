"""Standalone SVG line charts of trajectories.

Output is a pure function of the inputs: fixed viewport, fixed palette and
fixed number formatting, so identical inputs give byte-identical files.
"""

from __future__ import annotations

import math
from html import escape
from pathlib import Path
from typing import Sequence

import numpy as np

from .calibration import find_peak
from .errors import UsageError
from .scenarios import Scenario, Trajectory, log2_complexity_grid

WIDTH, HEIGHT = 800, 600
LEFT, RIGHT, TOP, BOTTOM = 90, 30, 50, 70
PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf")


def _nice_ticks(lo: float, hi: float, count: int = 6) -> list[float]:
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / count
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=10 * mag)
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + step * 1e-9:
        ticks.append(round(t, 10))
        t += step
    return ticks


def _tick_label(v: float) -> str:
    return format(v, ".6g")


def equivalent_age_series(values: np.ndarray, baseline: Scenario, resolution: float = 0.05) -> np.ndarray:
    """Map complexity values onto baseline months, clamped to ``[0, peak]``."""
    peak = find_peak(baseline)
    months = np.arange(0.0, peak, resolution)
    months = np.append(months, peak)
    curve = log2_complexity_grid(months, baseline)
    curve = np.maximum.accumulate(curve)
    return np.interp(values, curve, months)


def emit_plot_svg(trajectories: Sequence[Trajectory], path: str | Path, title: str = "",
                  y_mode: str = "log2", baseline: Scenario | None = None) -> None:
    if not trajectories:
        raise UsageError("nothing to plot: no trajectories given")
    months = trajectories[0].months
    for tr in trajectories[1:]:
        if tr.months.shape != months.shape or not np.array_equal(tr.months, months):
            raise UsageError(f"trajectory {tr.scenario_label!r} does not share the month grid")
    if y_mode == "log2":
        series = [tr.log2_complexity for tr in trajectories]
        y_label = "log2(states)"
    elif y_mode == "equivalent-age":
        if baseline is None:
            raise UsageError("equivalent-age plots need a baseline scenario")
        series = [equivalent_age_series(tr.log2_complexity, baseline) for tr in trajectories]
        y_label = "equivalent age (month)"
    else:
        raise UsageError(f"unknown y_mode {y_mode!r}")
    Path(path).write_text(render_svg(months, series, [tr.scenario_label for tr in trajectories], title, y_label),
                          encoding="utf-8", newline="\n")


def render_svg(months: np.ndarray, series: Sequence[np.ndarray], labels: Sequence[str], title: str,
               y_label: str) -> str:
    x_lo, x_hi = float(months[0]), float(months[-1])
    finite = np.concatenate([s[np.isfinite(s)] for s in series])
    y_lo, y_hi = (float(finite.min()), float(finite.max())) if finite.size else (0.0, 1.0)
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
    pad = 0.05 * (y_hi - y_lo)
    y_lo, y_hi = y_lo - pad, y_hi + pad
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM

    def sx(x: float) -> float:
        return LEFT + (x - x_lo) / (x_hi - x_lo) * pw

    def sy(y: float) -> float:
        return TOP + (y_hi - y) / (y_hi - y_lo) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{WIDTH / 2:.2f}" y="28" text-anchor="middle" font-size="16">{escape(title)}</text>')
    out.append(f'<g class="axes" stroke="black" fill="none">'
               f'<line x1="{LEFT}" y1="{TOP + ph}" x2="{LEFT + pw}" y2="{TOP + ph}"/>'
               f'<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{TOP + ph}"/></g>')
    for t in _nice_ticks(x_lo, x_hi):
        x = sx(t)
        out.append(f'<line x1="{x:.2f}" y1="{TOP + ph}" x2="{x:.2f}" y2="{TOP + ph + 5}" stroke="black"/>'
                   f'<text x="{x:.2f}" y="{TOP + ph + 20}" text-anchor="middle">{_tick_label(t)}</text>')
    for t in _nice_ticks(y_lo, y_hi):
        y = sy(t)
        out.append(f'<line x1="{LEFT - 5}" y1="{y:.2f}" x2="{LEFT}" y2="{y:.2f}" stroke="black"/>'
                   f'<text x="{LEFT - 8}" y="{y + 4:.2f}" text-anchor="end">{_tick_label(t)}</text>')
    out.append(f'<text class="x-label" x="{LEFT + pw / 2:.2f}" y="{HEIGHT - 20}" text-anchor="middle">month</text>')
    out.append(f'<text class="y-label" x="20" y="{TOP + ph / 2:.2f}" text-anchor="middle" '
               f'transform="rotate(-90 20 {TOP + ph / 2:.2f})">{escape(y_label)}</text>')
    for i, s in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        pts = " ".join(f"{sx(float(x)):.2f},{sy(float(y)):.2f}" for x, y in zip(months, s) if math.isfinite(y))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
    out.append('<g class="legend">')
    for i, label in enumerate(labels):
        color = PALETTE[i % len(PALETTE)]
        y = TOP + 15 + 18 * i
        x = LEFT + pw - 170
        out.append(f'<line x1="{x}" y1="{y}" x2="{x + 24}" y2="{y}" stroke="{color}" stroke-width="2"/>'
                   f'<text x="{x + 30}" y="{y + 4}">{escape(label or f"series {i + 1}")}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
