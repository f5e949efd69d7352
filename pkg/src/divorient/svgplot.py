"""Hand-emitted SVG scatter plots for grid results.

Self-contained SVG 1.1, fixed 960x640 viewbox, no rendering dependencies.
The figures are diagnostic; overlay lines (bound curves, fitted lines) carry
their data-space slope/intercept as data-* attributes so downstream checks
can read them back without rasterizing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ._util import fmt17

WIDTH = 960
HEIGHT = 640
MARGIN_L = 70
MARGIN_R = 20
MARGIN_T = 20
MARGIN_B = 50

#: 12 distinguishable stroke styles (color, dash pattern).
STROKE_STYLES = [
    ("#1f77b4", ""),
    ("#d62728", ""),
    ("#2ca02c", ""),
    ("#9467bd", ""),
    ("#ff7f0e", ""),
    ("#8c564b", ""),
    ("#1f77b4", "6,3"),
    ("#d62728", "6,3"),
    ("#2ca02c", "6,3"),
    ("#9467bd", "6,3"),
    ("#ff7f0e", "6,3"),
    ("#8c564b", "6,3"),
]


@dataclass
class PlotSpec:
    """Scatter series plus optional straight-line overlays in x = log N space."""

    series: list[tuple[str, list[tuple[float, float]]]]
    x_label: str = "x"
    y_label: str = "y"
    overlay_lines: list[tuple[float, float]] = field(default_factory=list)
    overlay_curves: list[tuple[str, list[tuple[float, float]]]] = field(default_factory=list)

    def validate(self) -> None:
        if not self.series:
            raise ValueError("plot needs at least one series")
        for label, pts in self.series:
            if not pts:
                raise ValueError(f"series {label!r} is empty")
            for x, y in pts:
                if not (math.isfinite(x) and math.isfinite(y)):
                    raise ValueError(f"series {label!r} has non-finite coordinates")


def _data_bounds(spec: PlotSpec) -> tuple[float, float, float, float]:
    xs = [x for _, pts in spec.series for x, _ in pts]
    ys = [y for _, pts in spec.series for _, y in pts]
    for _, pts in spec.overlay_curves:
        xs += [x for x, _ in pts]
        ys += [y for _, y in pts]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x0 == x1:
        x0, x1 = x0 - 1.0, x1 + 1.0
    if y0 == y1:
        y0, y1 = y0 - 1.0, y1 + 1.0
    pad_x = 0.04 * (x1 - x0)
    pad_y = 0.06 * (y1 - y0)
    return x0 - pad_x, x1 + pad_x, y0 - pad_y, y1 + pad_y


def render_svg(spec: PlotSpec) -> str:
    """Render the plot description to an SVG document string."""
    spec.validate()
    x0, x1, y0, y1 = _data_bounds(spec)
    px0, px1 = MARGIN_L, WIDTH - MARGIN_R
    py0, py1 = HEIGHT - MARGIN_B, MARGIN_T

    def sx(x: float) -> float:
        return px0 + (x - x0) / (x1 - x0) * (px1 - px0)

    def sy(y: float) -> float:
        return py0 + (y - y0) / (y1 - y0) * (py1 - py0)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<line x1="{px0}" y1="{py0}" x2="{px1}" y2="{py0}" stroke="black"/>',
        f'<line x1="{px0}" y1="{py0}" x2="{px0}" y2="{py1}" stroke="black"/>',
    ]
    for i in range(5):
        xt = x0 + (x1 - x0) * i / 4
        yt = y0 + (y1 - y0) * i / 4
        parts.append(
            f'<text x="{sx(xt):.1f}" y="{py0 + 18}" font-size="11" text-anchor="middle">{xt:.4g}</text>'
        )
        parts.append(
            f'<text x="{px0 - 6}" y="{sy(yt):.1f}" font-size="11" text-anchor="end">{yt:.4g}</text>'
        )
    parts.append(
        f'<text x="{(px0 + px1) / 2:.1f}" y="{HEIGHT - 12}" font-size="13" text-anchor="middle">{spec.x_label}</text>'
    )
    parts.append(
        f'<text x="16" y="{(py0 + py1) / 2:.1f}" font-size="13" text-anchor="middle" '
        f'transform="rotate(-90 16 {(py0 + py1) / 2:.1f})">{spec.y_label}</text>'
    )

    for idx, (label, pts) in enumerate(spec.series):
        color, dash = STROKE_STYLES[idx % len(STROKE_STYLES)]
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
        parts.append(
            f'<polyline fill="none" stroke="{color}"{dash_attr} stroke-width="1" '
            f'points="{coords}" data-series="{label}"/>'
        )
        for x, y in pts:
            parts.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="2.5" fill="{color}"/>')
        parts.append(
            f'<text x="{px1 - 8}" y="{py1 + 16 + 14 * idx}" font-size="12" text-anchor="end" '
            f'fill="{color}">{label}</text>'
        )

    for idx, (label, pts) in enumerate(spec.overlay_curves):
        color, _ = STROKE_STYLES[(len(spec.series) + idx) % len(STROKE_STYLES)]
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-dasharray="4,3" stroke-width="1.5" '
            f'points="{coords}" data-overlay-curve="{label}"/>'
        )

    for slope, intercept in spec.overlay_lines:
        ya = slope * x0 + intercept
        yb = slope * x1 + intercept
        parts.append(
            f'<line x1="{sx(x0):.2f}" y1="{sy(ya):.2f}" x2="{sx(x1):.2f}" y2="{sy(yb):.2f}" '
            f'stroke="black" stroke-width="1.5" data-slope="{fmt17(slope)}" '
            f'data-intercept="{fmt17(intercept)}"/>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
