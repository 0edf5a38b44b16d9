"""Minimal SVG line charts for monitor series and multiplier curves."""

import os
from typing import Dict, List, Sequence, Tuple
from xml.sax.saxutils import escape

import numpy as np

WIDTH, HEIGHT = 640, 400
MARGIN = (70, 20, 40, 50)      # left, right, top, bottom
PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"]

Curve = Tuple[Sequence[float], Sequence[float]]


def _ticks(lo: float, hi: float, count: int = 5) -> List[float]:
    if hi <= lo:
        return [lo]
    return list(np.linspace(lo, hi, count))


def _fmt(value: float, log: bool) -> str:
    return f"1e{value:.3g}" if log else f"{value:.4g}"


def line_chart(curves: Dict[str, Curve], title: str = "", xlabel: str = "", ylabel: str = "",
               log_y: bool = False) -> str:
    """
    Render named curves into one SVG document.

    With log_y, nonpositive and non-finite points are dropped; a curve left
    with no points is skipped.
    """
    prepared = {}
    for name, (x, y) in curves.items():
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        keep = np.isfinite(x) & np.isfinite(y)
        if log_y:
            keep &= y > 0.0
        if np.any(keep):
            prepared[name] = (x[keep], np.log10(y[keep]) if log_y else y[keep])

    left, right, top, bottom = MARGIN
    plot_w, plot_h = WIDTH - left - right, HEIGHT - top - bottom
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
             f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">',
             f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
             f'<text x="{WIDTH / 2}" y="{top - 15}" text-anchor="middle" font-size="13">{escape(title)}</text>']

    if prepared:
        xs = np.concatenate([c[0] for c in prepared.values()])
        ys = np.concatenate([c[1] for c in prepared.values()])
        x0, x1 = float(xs.min()), float(xs.max())
        y0, y1 = float(ys.min()), float(ys.max())
        if x1 == x0:
            x0, x1 = x0 - 0.5, x1 + 0.5
        if y1 == y0:
            pad = 0.5 if y0 == 0.0 else 0.05 * abs(y0)
            y0, y1 = y0 - pad, y1 + pad

        sx = lambda v: left + (v - x0) / (x1 - x0) * plot_w
        sy = lambda v: top + (1.0 - (v - y0) / (y1 - y0)) * plot_h

        parts.append(f'<rect x="{left}" y="{top}" width="{plot_w}" height="{plot_h}" '
                     f'fill="none" stroke="#444"/>')
        for tx in _ticks(x0, x1):
            parts.append(f'<text x="{sx(tx):.1f}" y="{top + plot_h + 15}" text-anchor="middle">{tx:.4g}</text>')
        for ty in _ticks(y0, y1):
            parts.append(f'<line x1="{left}" x2="{left + plot_w}" y1="{sy(ty):.1f}" y2="{sy(ty):.1f}" '
                         f'stroke="#ddd"/>')
            parts.append(f'<text x="{left - 5}" y="{sy(ty) + 4:.1f}" text-anchor="end">{_fmt(ty, log_y)}</text>')
        for i, (name, (x, y)) in enumerate(prepared.items()):
            color = PALETTE[i % len(PALETTE)]
            points = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(x, y))
            parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{points}"/>')
            parts.append(f'<text x="{left + plot_w - 5}" y="{top + 15 + 14 * i}" text-anchor="end" '
                         f'fill="{color}">{escape(name)}</text>')
    else:
        parts.append(f'<text x="{WIDTH / 2}" y="{HEIGHT / 2}" text-anchor="middle">no data</text>')

    parts.append(f'<text x="{left + plot_w / 2}" y="{HEIGHT - 10}" text-anchor="middle">{escape(xlabel)}</text>')
    label = f"log10 {ylabel}" if log_y else ylabel
    parts.append(f'<text x="15" y="{top + plot_h / 2}" text-anchor="middle" '
                 f'transform="rotate(-90 15 {top + plot_h / 2})">{escape(label)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def save_svg(path: str, document: str) -> str:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(document)
    return path
