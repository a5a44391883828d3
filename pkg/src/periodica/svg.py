"""Self-contained SVG line chart of the bounds table."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .bounds import BoundsRow

WIDTH, HEIGHT = 800, 600
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 190, 40, 60

# (CSV column, row attribute, colour)
SERIES = (
    ("normalized", "normalized", "#000000"),
    ("new_upper", "new_upper", "#d62728"),
    ("go_upper", "go_upper", "#1f77b4"),
    ("go_lower", "go_lower", "#2ca02c"),
    ("rr_lower", "rr_lower", "#9467bd"),
    ("counting_bound_norm", "counting_bound_normalized", "#ff7f0e"),
    ("delta_upper", "delta_upper", "#8c564b"),
)


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    step = (hi - lo) / count
    return [lo + i * step for i in range(count + 1)]


def render_svg(rows: list[BoundsRow], title: str = "ln(kappa_n) / ln^2(n) and bounds") -> str:
    if not rows:
        raise ValueError("nothing to plot")
    xs = [r.n for r in rows]
    values = [getattr(r, attr) for r in rows for _, attr, _ in SERIES]
    values = [v for v in values if v is not None]
    x0, x1 = min(xs), max(xs)
    if x1 == x0:
        x1 = x0 + 1
    y0, y1 = min(0.0, min(values)), max(values)
    if y1 == y0:
        y1 = y0 + 1

    pw = WIDTH - MARGIN_L - MARGIN_R
    ph = HEIGHT - MARGIN_T - MARGIN_B

    def sx(x):
        return MARGIN_L + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return MARGIN_T + (1 - (y - y0) / (y1 - y0)) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" '
        f'width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{MARGIN_L}" y="{MARGIN_T - 15}" font-size="14">{escape(title)}</text>',
        f'<line x1="{MARGIN_L}" y1="{sy(y0):.2f}" x2="{MARGIN_L + pw}" y2="{sy(y0):.2f}" stroke="black"/>',
        f'<line x1="{MARGIN_L}" y1="{MARGIN_T}" x2="{MARGIN_L}" y2="{MARGIN_T + ph}" stroke="black"/>',
    ]
    for t in _ticks(x0, x1):
        out.append(f'<text x="{sx(t):.2f}" y="{MARGIN_T + ph + 18}" text-anchor="middle">{t:.0f}</text>')
    for t in _ticks(y0, y1):
        out.append(f'<text x="{MARGIN_L - 8}" y="{sy(t) + 4:.2f}" text-anchor="end">{t:.2f}</text>')
        out.append(f'<line x1="{MARGIN_L}" y1="{sy(t):.2f}" x2="{MARGIN_L + pw}" y2="{sy(t):.2f}" '
                   'stroke="#dddddd"/>')
    out.append(f'<text x="{MARGIN_L + pw / 2}" y="{HEIGHT - 15}" text-anchor="middle">n</text>')

    for idx, (label, attr, colour) in enumerate(SERIES):
        pts = [(r.n, getattr(r, attr)) for r in rows if getattr(r, attr) is not None]
        if not pts:
            continue
        if len(pts) == 1:
            (x, y), = pts
            out.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="3" fill="{colour}"/>')
        else:
            path = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
            out.append(f'<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{path}"/>')
        ly = MARGIN_T + 10 + 20 * idx
        lx = WIDTH - MARGIN_R + 15
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 25}" y2="{ly}" stroke="{colour}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 32}" y="{ly + 4}">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
