"""Self-contained SVG emission for race scatter plots.

The figures are static artifacts (joint scatter of two normalized error
terms with the diagonal support strip drawn in), so the writer builds
the SVG text directly instead of pulling in a plotting dependency.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

from .races import RaceSample
from .special import constants

_W, _H = 640, 640
_MARGIN = 60


def _scale(lo: float, hi: float, pad: float = 0.08) -> tuple[float, float]:
    span = (hi - lo) or 1.0
    return lo - pad * span, hi + pad * span


class _Canvas:
    def __init__(self, x0: float, x1: float, y0: float, y1: float) -> None:
        self.x0, self.x1, self.y0, self.y1 = x0, x1, y0, y1
        self.parts: list[str] = []

    def px(self, x: float) -> float:
        return _MARGIN + (x - self.x0) / (self.x1 - self.x0) * (_W - 2 * _MARGIN)

    def py(self, y: float) -> float:
        return _H - _MARGIN - (y - self.y0) / (self.y1 - self.y0) * (_H - 2 * _MARGIN)

    def line(self, xa, ya, xb, yb, color, width=1.0, dash="") -> None:
        d = f' stroke-dasharray="{dash}"' if dash else ""
        self.parts.append(
            f'<line x1="{self.px(xa):.2f}" y1="{self.py(ya):.2f}" '
            f'x2="{self.px(xb):.2f}" y2="{self.py(yb):.2f}" '
            f'stroke="{color}" stroke-width="{width}"{d}/>'
        )

    def clipped_diag(self, intercept: float, color: str, dash: str = "") -> None:
        """Draw y = x + intercept clipped to the viewport."""
        pts = []
        for x in (self.x0, self.x1):
            y = x + intercept
            if self.y0 <= y <= self.y1:
                pts.append((x, y))
        for y in (self.y0, self.y1):
            x = y - intercept
            if self.x0 < x < self.x1:
                pts.append((x, y))
        pts = sorted(set(pts))
        if len(pts) >= 2:
            self.line(pts[0][0], pts[0][1], pts[-1][0], pts[-1][1], color, 1.0, dash)


def race_scatter_svg(samples: Sequence[RaceSample], path: Path) -> None:
    """Scatter of (E^f, E^g) with axes and the strip lines
    y - beta_g = x - beta_f +- w."""
    if not samples:
        raise ValueError("no samples to plot")
    f, g = samples[0].f, samples[0].g
    w = constants().w
    xs = [s.ef for s in samples]
    ys = [s.eg for s in samples]
    x0, x1 = _scale(min(xs + [f.bias - 1.0]), max(xs + [f.bias + 1.0]))
    y0, y1 = _scale(min(ys + [g.bias - 1.0]), max(ys + [g.bias + 1.0]))
    cv = _Canvas(x0, x1, y0, y1)

    cv.parts.append(
        f'<rect x="{_MARGIN}" y="{_MARGIN}" width="{_W - 2 * _MARGIN}" '
        f'height="{_H - 2 * _MARGIN}" fill="none" stroke="#999"/>'
    )
    if x0 < 0 < x1:
        cv.line(0, y0, 0, y1, "#bbb")
    if y0 < 0 < y1:
        cv.line(x0, 0, x1, 0, "#bbb")
    center = g.bias - f.bias
    cv.clipped_diag(center - w, "#c33", dash="4,3")
    cv.clipped_diag(center + w, "#c33", dash="4,3")

    dots = []
    for s in samples:
        if x0 <= s.ef <= x1 and y0 <= s.eg <= y1:
            dots.append(
                f'<circle cx="{cv.px(s.ef):.2f}" cy="{cv.py(s.eg):.2f}" r="1.6" '
                f'fill="#225" fill-opacity="0.55"/>'
            )

    labels = [
        f'<text x="{_W / 2:.0f}" y="{_H - 18}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">E[{f.name}]</text>',
        f'<text x="18" y="{_H / 2:.0f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 18 {_H / 2:.0f})">E[{g.name}]</text>',
        f'<text x="{_MARGIN}" y="{_MARGIN - 12}" font-family="sans-serif" '
        f'font-size="13">{f.name} vs {g.name} '
        f"(x: {min(s.x for s in samples):.3g}..{max(s.x for s in samples):.3g})</text>",
    ]
    for val, anchor, xp, yp in (
        (x0, "start", _MARGIN, _H - _MARGIN + 16),
        (x1, "end", _W - _MARGIN, _H - _MARGIN + 16),
        (y0, "end", _MARGIN - 6, _H - _MARGIN),
        (y1, "end", _MARGIN - 6, _MARGIN + 4),
    ):
        labels.append(
            f'<text x="{xp}" y="{yp}" text-anchor="{anchor}" font-family="sans-serif" '
            f'font-size="10" fill="#555">{val:.3g}</text>'
        )

    svg = "\n".join(
        [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
            f'viewBox="0 0 {_W} {_H}">',
            f'<rect width="{_W}" height="{_H}" fill="white"/>',
            *cv.parts,
            *dots,
            *labels,
            "</svg>",
        ]
    )
    Path(path).write_text(svg, encoding="utf-8")
