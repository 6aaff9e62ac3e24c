"""Minimal self-contained SVG 1.1 charts.

Just enough plotting for the command line tool: an axis frame, tick
labels, and either a polyline with point markers or a bar chart.  No
dependency beyond the standard library, and fully deterministic output
so identical invocations stay byte-identical.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from .errors import InvalidInputError

__all__ = ["line_plot", "bar_chart"]

_WIDTH = 720
_HEIGHT = 480
_MARGIN_LEFT = 72
_MARGIN_RIGHT = 24
_MARGIN_TOP = 48
_MARGIN_BOTTOM = 56


def _fmt(value: float) -> str:
    """Fixed-precision coordinate text, stable across runs."""
    return f"{value:.2f}"


def _tick_label(value: float) -> str:
    return f"{value:.4g}"


def _frame(title: str, x_label: str, y_label: str) -> list[str]:
    plot_w = _WIDTH - _MARGIN_LEFT - _MARGIN_RIGHT
    plot_h = _HEIGHT - _MARGIN_TOP - _MARGIN_BOTTOM
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect x="0" y="0" width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<rect x="{_MARGIN_LEFT}" y="{_MARGIN_TOP}" width="{plot_w}" '
        f'height="{plot_h}" fill="none" stroke="black" stroke-width="1"/>',
        f'<text x="{_WIDTH // 2}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{escape(title)}</text>',
        f'<text x="{_WIDTH // 2}" y="{_HEIGHT - 12}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">{escape(x_label)}</text>',
        f'<text x="18" y="{_HEIGHT // 2}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 18 {_HEIGHT // 2})">{escape(y_label)}</text>',
    ]


def _spread(lo: float, hi: float) -> tuple[float, float]:
    if hi > lo:
        return lo, hi
    pad = 0.5 if lo == 0 else abs(lo) * 0.5
    return lo - pad, hi + pad


def line_plot(
    points: list[tuple[float, float]],
    title: str,
    x_label: str,
    y_label: str,
) -> str:
    """Polyline through the points, with circle markers and value ticks."""
    if not points:
        raise InvalidInputError("nothing to plot")
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    x_lo, x_hi = _spread(min(xs), max(xs))
    y_lo, y_hi = _spread(min(ys), max(ys))
    plot_w = _WIDTH - _MARGIN_LEFT - _MARGIN_RIGHT
    plot_h = _HEIGHT - _MARGIN_TOP - _MARGIN_BOTTOM

    def to_px(x: float, y: float) -> tuple[float, float]:
        px = _MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w
        py = _MARGIN_TOP + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h
        return px, py

    parts = _frame(title, x_label, y_label)
    for k in range(5):
        fx = x_lo + (x_hi - x_lo) * k / 4
        fy = y_lo + (y_hi - y_lo) * k / 4
        px, _ = to_px(fx, y_lo)
        _, py = to_px(x_lo, fy)
        bottom = _MARGIN_TOP + plot_h
        parts.append(
            f'<line x1="{_fmt(px)}" y1="{bottom}" x2="{_fmt(px)}" '
            f'y2="{bottom + 5}" stroke="black" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_fmt(px)}" y="{bottom + 20}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{_tick_label(fx)}</text>'
        )
        parts.append(
            f'<line x1="{_MARGIN_LEFT - 5}" y1="{_fmt(py)}" x2="{_MARGIN_LEFT}" '
            f'y2="{_fmt(py)}" stroke="black" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_MARGIN_LEFT - 8}" y="{_fmt(py + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{_tick_label(fy)}</text>'
        )
    path = " ".join(
        f"{_fmt(px)},{_fmt(py)}" for px, py in (to_px(x, y) for x, y in points)
    )
    parts.append(
        f'<polyline points="{path}" fill="none" stroke="#1f77b4" stroke-width="2"/>'
    )
    for x, y in points:
        px, py = to_px(x, y)
        parts.append(
            f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="4" fill="#1f77b4"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def bar_chart(
    bars: list[tuple[str, float]],
    title: str,
    x_label: str,
    y_label: str,
) -> str:
    """Labelled vertical bars scaled to the largest value."""
    if not bars:
        raise InvalidInputError("nothing to plot")
    top = max(value for _, value in bars)
    if top <= 0:
        top = 1.0
    plot_w = _WIDTH - _MARGIN_LEFT - _MARGIN_RIGHT
    plot_h = _HEIGHT - _MARGIN_TOP - _MARGIN_BOTTOM
    slot = plot_w / len(bars)
    bar_w = slot * 0.6
    parts = _frame(title, x_label, y_label)
    bottom = _MARGIN_TOP + plot_h
    for k in range(5):
        fy = top * k / 4
        py = bottom - fy / top * plot_h
        parts.append(
            f'<line x1="{_MARGIN_LEFT - 5}" y1="{_fmt(py)}" x2="{_MARGIN_LEFT}" '
            f'y2="{_fmt(py)}" stroke="black" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_MARGIN_LEFT - 8}" y="{_fmt(py + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{_tick_label(fy)}</text>'
        )
    for k, (label, value) in enumerate(bars):
        left = _MARGIN_LEFT + slot * k + (slot - bar_w) / 2
        height = max(0.0, value) / top * plot_h
        parts.append(
            f'<rect x="{_fmt(left)}" y="{_fmt(bottom - height)}" '
            f'width="{_fmt(bar_w)}" height="{_fmt(height)}" fill="#1f77b4"/>'
        )
        parts.append(
            f'<text x="{_fmt(left + bar_w / 2)}" y="{bottom + 20}" '
            f'text-anchor="middle" font-family="sans-serif" font-size="11">'
            f"{escape(label)}</text>"
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
