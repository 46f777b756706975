"""Minimal self-contained SVG rendering of performance profiles."""

from __future__ import annotations

import math
from html import escape
from typing import Sequence

from .bench import ProfileCurve

COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
LABELS = {"msd": "MSD", "mdsd": "MDSD", "msd1": "MSD-I", "msd2": "MSD-II"}


def render_profile_svg(curves: Sequence[ProfileCurve], title: str = "", width: int = 560, height: int = 400) -> str:
    left, right, top, bottom = 60, 20, 36, 50
    pw, ph = width - left - right, height - top - bottom
    x_max = max([math.log2(t) for c in curves for t, _ in c.breakpoints] + [0.0])
    x_max = max(1.0, math.ceil(x_max * 1.05 * 10) / 10)

    def sx(v: float) -> float:
        return left + pw * v / x_max

    def sy(v: float) -> float:
        return top + ph * (1.0 - v)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="20" text-anchor="middle" font-size="14">{escape(title)}</text>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for i in range(6):
        v = i / 5
        out.append(f'<line x1="{left - 4}" y1="{sy(v):.1f}" x2="{left}" y2="{sy(v):.1f}" stroke="black"/>')
        out.append(f'<text x="{left - 8}" y="{sy(v) + 4:.1f}" text-anchor="end">{v:.1f}</text>')
    for i in range(6):
        v = x_max * i / 5
        out.append(f'<line x1="{sx(v):.1f}" y1="{top + ph}" x2="{sx(v):.1f}" y2="{top + ph + 4}" stroke="black"/>')
        out.append(f'<text x="{sx(v):.1f}" y="{top + ph + 18}" text-anchor="middle">{v:.2g}</text>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{height - 10}" text-anchor="middle">log2(tau)</text>')
    out.append(f'<text x="16" y="{top + ph / 2:.1f}" text-anchor="middle" transform="rotate(-90 16 {top + ph / 2:.1f})">rho(tau)</text>')

    for k, curve in enumerate(curves):
        color = COLORS[k % len(COLORS)]
        pts = []
        prev = None
        for t, r in curve.breakpoints:
            x = math.log2(t)
            if prev is not None:
                pts.append((x, prev))
            pts.append((x, r))
            prev = r
        pts.append((x_max, prev if prev is not None else 0.0))
        path = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
        out.append(f'<polyline points="{path}" fill="none" stroke="{color}" stroke-width="2"/>')
        ly = top + 16 + 18 * k
        out.append(f'<line x1="{left + pw - 110}" y1="{ly}" x2="{left + pw - 85}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        label = LABELS.get(curve.solver, curve.solver)
        out.append(f'<text x="{left + pw - 78}" y="{ly + 4}">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
