"""Static SVG figures of confidence regions in the gamma-plane.

Output is plain text with fixed 600x600 viewport and three-decimal
coordinates, so identical inputs give identical bytes.

Markers: filled circle for the true value, open circle for the centre of a
region containing it, open square for the centre of one that misses.
Without a true value every centre is drawn as an open circle.
"""
from __future__ import annotations

from .regions import ConfidenceDisc, ConfidenceIntervals, ConfidenceSquare

SIZE = 600
MARGIN = 50
MARK = 4.0


def _bounds(regions, truth):
    xs, ys = [], []
    for r in regions:
        if isinstance(r, ConfidenceDisc):
            c, h = r.center, r.radius
            xs += [c.real - h, c.real + h]
            ys += [c.imag - h, c.imag + h]
        elif isinstance(r, ConfidenceSquare):
            c, h = r.center, r.half_side
            xs += [c.real - h, c.real + h]
            ys += [c.imag - h, c.imag + h]
        else:
            xs += [r.mu_lo, r.mu_hi]
            ys += [r.sigma_lo, r.sigma_hi]
    if truth is not None:
        xs.append(truth.real)
        ys.append(truth.imag)
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, 1e-9) * 1.1
    cx, cy = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
    return cx - span / 2, cy - span / 2, span


def _f(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def render(regions, truth: complex | None = None, title: str = "") -> str:
    regions = list(regions)
    if not regions:
        raise ValueError("nothing to draw")
    left, bottom, span = _bounds(regions, truth)
    scale = (SIZE - 2 * MARGIN) / span

    def px(z: complex) -> tuple[float, float]:
        return (MARGIN + (z.real - left) * scale,
                SIZE - MARGIN - (z.imag - bottom) * scale)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{MARGIN}" y="{MARGIN // 2}" font-family="sans-serif" '
                   f'font-size="14">{title}</text>')
    # real-axis label positions: left/right bounds of the plotted window
    out.append(f'<text x="{MARGIN}" y="{SIZE - 15}" font-family="sans-serif" font-size="11">'
               f'{_f(left)}</text>')
    out.append(f'<text x="{SIZE - MARGIN}" y="{SIZE - 15}" font-family="sans-serif" '
               f'font-size="11" text-anchor="end">{_f(left + span)}</text>')
    for r in regions:
        if isinstance(r, ConfidenceDisc):
            x, y = px(r.center)
            out.append(f'<circle class="disc" cx="{_f(x)}" cy="{_f(y)}" r="{_f(r.radius * scale)}" '
                       f'fill="none" stroke="steelblue" stroke-width="1"/>')
        elif isinstance(r, ConfidenceSquare):
            x, y = px(r.center - complex(r.half_side, -r.half_side))
            side = 2 * r.half_side * scale
            out.append(f'<rect class="square" x="{_f(x)}" y="{_f(y)}" width="{_f(side)}" '
                       f'height="{_f(side)}" fill="none" stroke="darkorange" stroke-width="1"/>')
        elif isinstance(r, ConfidenceIntervals):
            x, y = px(complex(r.mu_lo, r.sigma_hi))
            w = (r.mu_hi - r.mu_lo) * scale
            h = (r.sigma_hi - r.sigma_lo) * scale
            out.append(f'<rect class="intervals" x="{_f(x)}" y="{_f(y)}" width="{_f(w)}" '
                       f'height="{_f(h)}" fill="none" stroke="seagreen" stroke-dasharray="4 2"/>')
        x, y = px(r.center)
        if truth is None or r.contains(truth):
            out.append(f'<circle class="centre-hit" cx="{_f(x)}" cy="{_f(y)}" r="{_f(MARK)}" '
                       f'fill="white" stroke="black"/>')
        else:
            out.append(f'<rect class="centre-miss" x="{_f(x - MARK)}" y="{_f(y - MARK)}" '
                       f'width="{_f(2 * MARK)}" height="{_f(2 * MARK)}" fill="white" stroke="black"/>')
    if truth is not None:
        x, y = px(truth)
        out.append(f'<circle class="truth" cx="{_f(x)}" cy="{_f(y)}" r="{_f(MARK)}" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
