"""SVG output for floorplans and placements."""

from __future__ import annotations

from typing import Sequence
from xml.sax.saxutils import escape

from .floorplan import MosaicFloorplan

CANVAS = 512


def _fmt(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return s if s != "-0" else "0"


def _document(boxes: Sequence[tuple[int, float, float, float, float]], width: float, height: float) -> str:
    scale = CANVAS / max(width, height)
    w, h = width * scale, height * scale
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_fmt(w)}" height="{_fmt(h)}" '
        f'viewBox="0 0 {_fmt(w)} {_fmt(h)}">',
    ]
    for rid, x, y, bw, bh in sorted(boxes):
        sx, sy, sw, sh = x * scale, y * scale, bw * scale, bh * scale
        lines.append(
            f'  <rect id="room-{rid}" x="{_fmt(sx)}" y="{_fmt(sy)}" width="{_fmt(sw)}" height="{_fmt(sh)}" '
            'fill="#e8eef7" stroke="#1f2d3d" stroke-width="2"/>'
        )
        lines.append(
            f'  <text x="{_fmt(sx + sw / 2)}" y="{_fmt(sy + sh / 2)}" text-anchor="middle" '
            f'dominant-baseline="central" font-family="sans-serif" font-size="14">{escape(str(rid))}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_svg(f: MosaicFloorplan) -> str:
    """One rect per room on a 512-unit canvas, rooms in id order."""
    X1, Y1, X2, Y2 = f.bbox
    boxes = [(r.id, r.x1 - X1, r.y1 - Y1, r.x2 - r.x1, r.y2 - r.y1) for r in f.rooms]
    return _document(boxes, X2 - X1, Y2 - Y1)


def render_placement_svg(placement, width: float, height: float) -> str:
    """Same layout for packed modules (objects with id, x, y, w, h)."""
    boxes = [(p.id, p.x, p.y, p.w, p.h) for p in placement]
    return _document(boxes, width, height)
