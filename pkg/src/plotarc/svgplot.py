"""Dependency-free SVG line charts for sweep and period curves.

Output is plain deterministic text (fixed 800x500 viewbox, no timestamps,
no generated ids), so identical runs produce byte-identical files that
diff cleanly.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from plotarc.experiments import PeriodReport, SweepCurve

WIDTH, HEIGHT = 800, 500
MARGIN_LEFT, MARGIN_RIGHT = 70, 170
MARGIN_TOP, MARGIN_BOTTOM = 30, 60

PLOT_W = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
PLOT_H = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _fx(x: float) -> str:
    return f"{x:.2f}"


def _x_pos(fraction: float, x_min: float, x_max: float) -> float:
    span = x_max - x_min or 1.0
    return MARGIN_LEFT + (fraction - x_min) / span * PLOT_W


def _y_pos(f1: float) -> float:
    # Fixed y-axis [0, 1] so charts from different runs are comparable.
    return MARGIN_TOP + (1.0 - f1) * PLOT_H


def _axes(x_min: float, x_max: float) -> list[str]:
    parts = []
    ax_bottom = MARGIN_TOP + PLOT_H
    parts.append(
        f'<line x1="{MARGIN_LEFT}" y1="{ax_bottom}" x2="{MARGIN_LEFT + PLOT_W}" '
        f'y2="{ax_bottom}" stroke="black"/>'
    )
    parts.append(
        f'<line x1="{MARGIN_LEFT}" y1="{MARGIN_TOP}" x2="{MARGIN_LEFT}" '
        f'y2="{ax_bottom}" stroke="black"/>'
    )
    for i in range(6):
        f1 = i / 5.0
        y = _y_pos(f1)
        parts.append(
            f'<line x1="{MARGIN_LEFT - 4}" y1="{_fx(y)}" x2="{MARGIN_LEFT}" y2="{_fx(y)}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{MARGIN_LEFT - 8}" y="{_fx(y + 4)}" text-anchor="end" font-size="12">{f1:.1f}</text>'
        )
    for i in range(6):
        frac = x_min + (x_max - x_min) * i / 5.0
        x = _x_pos(frac, x_min, x_max)
        parts.append(
            f'<line x1="{_fx(x)}" y1="{ax_bottom}" x2="{_fx(x)}" y2="{ax_bottom + 4}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{_fx(x)}" y="{ax_bottom + 18}" text-anchor="middle" font-size="12">{frac:.2f}</text>'
        )
    parts.append(
        f'<text x="{MARGIN_LEFT + PLOT_W / 2}" y="{HEIGHT - 15}" text-anchor="middle" '
        f'font-size="13">main-section fraction</text>'
    )
    parts.append(
        f'<text x="18" y="{MARGIN_TOP + PLOT_H / 2}" text-anchor="middle" font-size="13" '
        f'transform="rotate(-90 18 {MARGIN_TOP + PLOT_H / 2})">F1-score</text>'
    )
    return parts


def _polyline(curve: SweepCurve, x_min: float, x_max: float, color: str) -> str:
    pts = " ".join(
        f"{_fx(_x_pos(p.main_fraction, x_min, x_max))},{_fx(_y_pos(p.f1))}" for p in curve.points
    )
    return f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="2"/>'


def _baseline(baseline: float) -> str:
    y = _fx(_y_pos(baseline))
    return (
        f'<line x1="{MARGIN_LEFT}" y1="{y}" x2="{MARGIN_LEFT + PLOT_W}" y2="{y}" '
        f'stroke="gray" stroke-dasharray="8,4"/>'
    )


def _argmax_marker(curve: SweepCurve, x_min: float, x_max: float, color: str) -> str:
    p = curve.argmax_point
    x = _fx(_x_pos(p.main_fraction, x_min, x_max))
    return (
        f'<line x1="{x}" y1="{MARGIN_TOP}" x2="{x}" y2="{MARGIN_TOP + PLOT_H}" '
        f'stroke="{color}" stroke-dasharray="2,4"/>'
    )


def _legend(labels_colors) -> list[str]:
    parts = []
    x = MARGIN_LEFT + PLOT_W + 15
    for i, (label, color) in enumerate(labels_colors):
        y = MARGIN_TOP + 15 + i * 20
        parts.append(f'<line x1="{x}" y1="{y}" x2="{x + 24}" y2="{y}" stroke="{color}" stroke-width="2"/>')
        parts.append(f'<text x="{x + 30}" y="{y + 4}" font-size="12">{escape(label)}</text>')
    return parts


def _document(body: list[str]) -> str:
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">\n'
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>\n'
    )
    return head + "\n".join(body) + "\n</svg>\n"


def _x_range(curves) -> tuple[float, float]:
    fractions = [p.main_fraction for c in curves for p in c.points]
    if not fractions:
        return 0.0, 1.0
    lo, hi = min(fractions), max(fractions)
    if lo == hi:
        lo, hi = lo - 0.05, hi + 0.05
    return lo, hi


def render_sweep(curve: SweepCurve, title: str = "Partition sweep") -> str:
    """One polyline, a dashed horizontal baseline, and a dotted vertical
    line at the argmax fraction."""
    x_min, x_max = _x_range([curve])
    body = _axes(x_min, x_max)
    body.append(f'<text x="{WIDTH / 2}" y="20" text-anchor="middle" font-size="15">{escape(title)}</text>')
    body.append(_baseline(curve.baseline))
    if curve.points:
        body.append(_polyline(curve, x_min, x_max, PALETTE[0]))
        body.append(_argmax_marker(curve, x_min, x_max, PALETTE[0]))
    body.extend(_legend([("F1", PALETTE[0]), ("baseline", "gray")]))
    return _document(body)


def render_periods(report: PeriodReport, title: str = "Partition sweep by period") -> str:
    """One polyline per populated period group, with per-group argmax markers."""
    populated = [g for g in report.groups if not g.skipped]
    curves = [g.curve for g in populated]
    x_min, x_max = _x_range(curves)
    body = _axes(x_min, x_max)
    body.append(f'<text x="{WIDTH / 2}" y="20" text-anchor="middle" font-size="15">{escape(title)}</text>')
    if curves:
        body.append(_baseline(curves[0].baseline))
    legend = [("baseline", "gray")]
    for i, group in enumerate(populated):
        color = PALETTE[i % len(PALETTE)]
        if group.curve.points:
            body.append(_polyline(group.curve, x_min, x_max, color))
            body.append(_argmax_marker(group.curve, x_min, x_max, color))
        legend.append((f"{group.label} (n={group.novel_count})", color))
    for group in report.groups:
        if group.skipped:
            legend.append((f"{group.label} (skipped, n={group.novel_count})", "lightgray"))
    body.extend(_legend(legend))
    return _document(body)
