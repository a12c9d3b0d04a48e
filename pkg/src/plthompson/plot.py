"""Graph output for maps: CSV of breakpoints and a small standalone SVG."""

from __future__ import annotations

from typing import Sequence

from .numbers import format_rational
from .plmaps import PLMap


def to_csv(x: PLMap) -> str:
    """``x,y`` rows (exact rationals) plus a float copy for spreadsheet tools."""
    rows = ["x,y,x_float,y_float"]
    for u, v in x.breakpoints:
        rows.append(f"{format_rational(u)},{format_rational(v)},{float(u):.12g},{float(v):.12g}")
    return "\n".join(rows) + "\n"


def to_svg(maps: Sequence[PLMap], size: int = 400, margin: int = 30,
           colors: Sequence[str] = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")) -> str:
    """One polyline per map over the square ``[0; r]^2``, the diagonal dashed,
    and axis ticks at the breakpoints of every map."""
    if not maps:
        raise ValueError("nothing to draw")
    r = float(maps[0].ctx.r)
    scale = size / r

    def px(u) -> float:
        return margin + float(u) * scale

    def py(v) -> float:
        return margin + size - float(v) * scale

    total = size + 2 * margin
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{total}" height="{total}" '
           f'viewBox="0 0 {total} {total}">',
           f'<rect x="{margin}" y="{margin}" width="{size}" height="{size}" fill="none" stroke="#888"/>',
           f'<line x1="{px(0):.3f}" y1="{py(0):.3f}" x2="{px(r):.3f}" y2="{py(r):.3f}" '
           f'stroke="#bbb" stroke-dasharray="4 4"/>']
    xticks = sorted({u for x in maps for u in x.xs})
    yticks = sorted({v for x in maps for v in x.ys})
    for u in xticks:
        out.append(f'<line x1="{px(u):.3f}" y1="{py(0):.3f}" x2="{px(u):.3f}" y2="{py(0) + 5:.3f}" stroke="#444"/>')
    for v in yticks:
        out.append(f'<line x1="{px(0) - 5:.3f}" y1="{py(v):.3f}" x2="{px(0):.3f}" y2="{py(v):.3f}" stroke="#444"/>')
    for i, x in enumerate(maps):
        pts = " ".join(f"{px(u):.3f},{py(v):.3f}" for u, v in x.breakpoints)
        color = colors[i % len(colors)]
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="2"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
