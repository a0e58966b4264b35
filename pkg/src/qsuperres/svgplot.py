"""Minimal deterministic SVG line plots.

Renders a single-panel figure as a standalone SVG string: labeled axes,
one polyline per curve, optional logarithmic y axis, optional dashed
horizontal reference line, and a legend. No external assets, no
timestamps; the same input always yields the same bytes.

Tick labels carry class "x-tick" / "y-tick" and hold plain parseable
numbers, so downstream tooling can recover the axis calibration from
the document itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["Curve", "render_plot"]

WIDTH = 640.0
HEIGHT = 440.0
MARGIN_LEFT = 76.0
MARGIN_RIGHT = 26.0
MARGIN_TOP = 46.0
MARGIN_BOTTOM = 58.0

PALETTE = ("#1f6fb2", "#c24d2c", "#3a8f5d", "#7b4fa6", "#b28b1f", "#4d4d4d")


@dataclass(frozen=True)
class Curve:
    """One plotted line: a label and matching x/y sequences."""

    label: str
    x: tuple[float, ...]
    y: tuple[float, ...]


def _nice_ticks(lo: float, hi: float, target: int = 5) -> list[float]:
    """Round tick positions covering [lo, hi] on a 1/2/2.5/5 ladder."""
    if not lo < hi:
        pad = abs(lo) * 0.1 or 1.0
        lo, hi = lo - pad, hi + pad
    raw = (hi - lo) / max(target, 2)
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        step = mult * mag
        if (hi - lo) / step <= target + 1:
            break
    first = math.ceil(lo / step - 1e-9)
    last = math.floor(hi / step + 1e-9)
    return [round(i * step, 12) for i in range(first, last + 1)]


def _log_ticks(lo: float, hi: float) -> list[float]:
    """Decade ticks inside [lo, hi]; endpoints if fewer than two fit."""
    e_lo = math.ceil(math.log10(lo) - 1e-9)
    e_hi = math.floor(math.log10(hi) + 1e-9)
    ticks = [10.0 ** e for e in range(e_lo, e_hi + 1)]
    if len(ticks) < 2:
        ticks = [lo, hi]
    return ticks


def _fmt(v: float) -> str:
    return f"{v:g}"


def _xml_escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def render_plot(
    curves: list[Curve],
    *,
    x_label: str,
    y_label: str,
    title: str = "",
    log_y: bool = False,
    h_line: float | None = None,
) -> str:
    """Render curves to a standalone SVG document string."""
    pts = []
    for c in curves:
        for xv, yv in zip(c.x, c.y):
            if math.isfinite(xv) and math.isfinite(yv) and (not log_y or yv > 0):
                pts.append((xv, yv))
    if not pts:
        raise ValueError("nothing to plot: no finite data points")

    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    if h_line is not None and math.isfinite(h_line) and (not log_y or h_line > 0):
        ys.append(h_line)
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)

    span = (x_hi - x_lo) or abs(x_lo) or 1.0
    x_lo, x_hi = x_lo - 0.04 * span, x_hi + 0.04 * span
    if log_y:
        ly_lo, ly_hi = math.log10(y_lo), math.log10(y_hi)
        span = (ly_hi - ly_lo) or 1.0
        ly_lo, ly_hi = ly_lo - 0.05 * span, ly_hi + 0.05 * span
        y_ticks = _log_ticks(10.0 ** ly_lo, 10.0 ** ly_hi)
    else:
        span = (y_hi - y_lo) or abs(y_lo) or 1.0
        y_lo, y_hi = y_lo - 0.05 * span, y_hi + 0.05 * span
        y_ticks = _nice_ticks(y_lo, y_hi)
    x_ticks = _nice_ticks(x_lo, x_hi)

    px_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    px_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def sx(v: float) -> float:
        return MARGIN_LEFT + (v - x_lo) / (x_hi - x_lo) * px_w

    def sy(v: float) -> float:
        if log_y:
            t = (math.log10(v) - ly_lo) / (ly_hi - ly_lo)
        else:
            t = (v - y_lo) / (y_hi - y_lo)
        return HEIGHT - MARGIN_BOTTOM - t * px_h

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:g}" '
        f'height="{HEIGHT:g}" viewBox="0 0 {WIDTH:g} {HEIGHT:g}">',
        f'<rect width="{WIDTH:g}" height="{HEIGHT:g}" fill="#ffffff"/>',
        f'<rect x="{MARGIN_LEFT:.2f}" y="{MARGIN_TOP:.2f}" width="{px_w:.2f}" '
        f'height="{px_h:.2f}" fill="none" stroke="#222222" stroke-width="1"/>',
    ]
    font = 'font-family="Helvetica,Arial,sans-serif"'

    if title:
        out.append(
            f'<text class="title" x="{WIDTH / 2:.2f}" y="{MARGIN_TOP - 18:.2f}" '
            f'{font} font-size="15" text-anchor="middle">{_xml_escape(title)}</text>')

    y0 = HEIGHT - MARGIN_BOTTOM
    for tv in x_ticks:
        if not x_lo <= tv <= x_hi:
            continue
        x = sx(tv)
        out.append(f'<line x1="{x:.2f}" y1="{y0:.2f}" x2="{x:.2f}" '
                   f'y2="{y0 + 5:.2f}" stroke="#222222" stroke-width="1"/>')
        out.append(f'<text class="x-tick" x="{x:.2f}" y="{y0 + 19:.2f}" {font} '
                   f'font-size="11" text-anchor="middle">{_fmt(tv)}</text>')
    for tv in y_ticks:
        y = sy(tv)
        out.append(f'<line x1="{MARGIN_LEFT - 5:.2f}" y1="{y:.2f}" '
                   f'x2="{MARGIN_LEFT:.2f}" y2="{y:.2f}" '
                   'stroke="#222222" stroke-width="1"/>')
        out.append(f'<text class="y-tick" x="{MARGIN_LEFT - 9:.2f}" y="{y + 3.5:.2f}" '
                   f'{font} font-size="11" text-anchor="end">{_fmt(tv)}</text>')

    out.append(f'<text class="x-label" x="{MARGIN_LEFT + px_w / 2:.2f}" '
               f'y="{HEIGHT - 14:.2f}" {font} font-size="13" '
               f'text-anchor="middle">{_xml_escape(x_label)}</text>')
    out.append(f'<text class="y-label" x="18" y="{MARGIN_TOP + px_h / 2:.2f}" '
               f'{font} font-size="13" text-anchor="middle" '
               f'transform="rotate(-90 18 {MARGIN_TOP + px_h / 2:.2f})">'
               f'{_xml_escape(y_label)}</text>')

    if h_line is not None and math.isfinite(h_line) and (not log_y or h_line > 0):
        y = sy(h_line)
        out.append(f'<line class="ref-line" x1="{MARGIN_LEFT:.2f}" y1="{y:.2f}" '
                   f'x2="{MARGIN_LEFT + px_w:.2f}" y2="{y:.2f}" stroke="#888888" '
                   'stroke-width="1" stroke-dasharray="5,4"/>')

    for i, c in enumerate(curves):
        color = PALETTE[i % len(PALETTE)]
        keep = [
            (xv, yv)
            for xv, yv in zip(c.x, c.y)
            if math.isfinite(xv) and math.isfinite(yv) and (not log_y or yv > 0)
        ]
        if not keep:
            continue
        coords = " ".join(f"{sx(xv):.2f},{sy(yv):.2f}" for xv, yv in keep)
        out.append(f'<polyline class="curve" fill="none" stroke="{color}" '
                   f'stroke-width="1.8" points="{coords}"/>')

    lx = MARGIN_LEFT + px_w - 150
    ly = MARGIN_TOP + 14
    for i, c in enumerate(curves):
        color = PALETTE[i % len(PALETTE)]
        y = ly + 16 * i
        out.append(f'<line x1="{lx:.2f}" y1="{y:.2f}" x2="{lx + 22:.2f}" '
                   f'y2="{y:.2f}" stroke="{color}" stroke-width="1.8"/>')
        out.append(f'<text class="legend" x="{lx + 28:.2f}" y="{y + 3.5:.2f}" {font} '
                   f'font-size="11">{_xml_escape(c.label)}</text>')

    out.append("</svg>")
    return "\n".join(out) + "\n"
