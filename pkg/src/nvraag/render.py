"""SVG drawings of 2-dimensional elements: domain pattern left, range pattern right.

Rectangle coordinates are written as exact decimals (every dyadic rational has a
finite decimal expansion), so the output is lossless and byte-for-byte
deterministic.  The first axis runs left to right, the second bottom to top.
"""

from __future__ import annotations

from pathlib import Path
from xml.sax.saxutils import escape

from .dyadic import DyadicRational, Rectangle
from .nv import Element

SCALE = 256
MARGIN = 16
GAP = 64
CAPTION = 28


class RenderError(ValueError):
    pass


def _coord(x: DyadicRational, offset: int) -> str:
    return (x * SCALE + offset).to_decimal()


def _rect_svg(r: Rectangle, x0: int, y0: int, label: str) -> list[str]:
    ax, ay = r
    left = _coord(ax.lo, x0)
    # flip the second axis so that it grows upwards
    top = _coord(DyadicRational(1) - ay.hi, y0)
    width = (ax.length * SCALE).to_decimal()
    height = (ay.length * SCALE).to_decimal()
    cx = _coord(ax.lo + ax.length * DyadicRational(1, 1), x0)
    cy = _coord(DyadicRational(1) - ay.hi + ay.length * DyadicRational(1, 1), y0)
    size = min(float(ax.length), float(ay.length)) * SCALE
    font = max(1.0, min(14.0, 0.45 * size))
    return [
        f'  <rect x="{left}" y="{top}" width="{width}" height="{height}" class="piece"/>',
        f'  <text x="{cx}" y="{cy}" font-size="{font:.3f}" class="label">{escape(label)}</text>',
    ]


def element_to_svg(f: Element, title: str | None = None) -> str:
    if f.dim != 2:
        raise RenderError(f"can only draw 2-dimensional elements, got dimension {f.dim}")
    left_x = MARGIN
    right_x = MARGIN + SCALE + GAP
    y0 = MARGIN
    width = 2 * MARGIN + 2 * SCALE + GAP
    height = 2 * MARGIN + SCALE + CAPTION
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
    ]
    if title:
        out.append(f"  <title>{escape(title)}</title>")
    out += [
        "  <style>",
        "    .piece { fill: none; stroke: #000000; stroke-width: 1; }",
        "    .frame { fill: #ffffff; stroke: #000000; stroke-width: 1.5; }",
        "    .label { font-family: serif; text-anchor: middle; dominant-baseline: central; }",
        "    .caption { font-family: sans-serif; font-size: 14px; text-anchor: middle; }",
        "  </style>",
        f'  <rect x="{left_x}" y="{y0}" width="{SCALE}" height="{SCALE}" class="frame"/>',
        f'  <rect x="{right_x}" y="{y0}" width="{SCALE}" height="{SCALE}" class="frame"/>',
        '  <g id="domain">',
    ]
    for i, r in enumerate(f.domains):
        out += _rect_svg(r, left_x, y0, str(i))
    out += ["  </g>", '  <g id="range">']
    for i, r in enumerate(f.ranges):
        out += _rect_svg(r, right_x, y0, str(i))
    mid_y = y0 + SCALE // 2
    a0 = left_x + SCALE + GAP // 4
    a1 = right_x - GAP // 4
    out += [
        "  </g>",
        f'  <path d="M {a0} {mid_y} L {a1} {mid_y} M {a1 - 8} {mid_y - 5} L {a1} {mid_y} '
        f'L {a1 - 8} {mid_y + 5}" fill="none" stroke="#000000" stroke-width="1.5"/>',
        f'  <text x="{left_x + SCALE // 2}" y="{y0 + SCALE + CAPTION - 6}" class="caption">domain</text>',
        f'  <text x="{right_x + SCALE // 2}" y="{y0 + SCALE + CAPTION - 6}" class="caption">range</text>',
        "</svg>",
    ]
    return "\n".join(out) + "\n"


def write_svg(f: Element, path, title: str | None = None) -> None:
    Path(path).write_text(element_to_svg(f, title), encoding="utf-8")
