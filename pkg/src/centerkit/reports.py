"""Deterministic result records, CSV tables, and static SVG scenes.

All numeric output is printed with 12 significant digits and records carry
the tolerances they were produced with, so results are self-describing and
byte-identical across repeated runs.
"""

from __future__ import annotations

import csv
import io
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .feasibility import Ball
from .spaces import NormKind, NormSpec

__all__ = ["fmt", "render_record", "csv_table", "SvgScene", "sweep_svg"]


def fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.12g}"
    return str(v)


def _render_value(v) -> str:
    if isinstance(v, (list, tuple, np.ndarray)):
        return "[" + ", ".join(fmt(x) for x in np.asarray(v).reshape(-1)) + "]"
    return fmt(v)


def render_record(pairs: Iterable[Tuple[str, object]], indent: int = 0) -> str:
    """key: value lines; a nested list of pairs renders as an indented block."""
    pad = "  " * indent
    out: List[str] = []
    for key, value in pairs:
        if isinstance(value, list) and value and isinstance(value[0], tuple):
            out.append(f"{pad}{key}:")
            out.append(render_record(value, indent + 1))
        else:
            out.append(f"{pad}{key}: {_render_value(value)}")
    return "\n".join(out)


def csv_table(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


class SvgScene:
    """Minimal SVG 1.1 canvas mapping a data bounding box to pixels."""

    def __init__(self, width: int = 560, height: int = 560, margin: int = 30):
        self.width = width
        self.height = height
        self.margin = margin
        self.elements: List[str] = []
        self._xs: List[float] = []
        self._ys: List[float] = []
        self._pending: List[Tuple] = []

    # data-space primitives; transforms resolve at render time -------------

    def _track(self, xs, ys):
        self._xs.extend(xs)
        self._ys.extend(ys)

    def ball(self, space: NormSpec, ball: Ball, stroke: str, fill: str = "none"):
        c, r = ball.center, ball.radius
        self._track([c[0] - r, c[0] + r], [c[1] - r, c[1] + r])
        self._pending.append(("ball", space.kind, tuple(c), r, getattr(space, "scale", None), stroke, fill))

    def point(self, xy, color: str = "#1f3d7a", label: Optional[str] = None):
        self._track([xy[0]], [xy[1]])
        self._pending.append(("point", tuple(xy), color, label))

    def cross(self, xy, color: str = "#b03030"):
        self._track([xy[0]], [xy[1]])
        self._pending.append(("cross", tuple(xy), color))

    def segment(self, a, b, color: str = "#999999"):
        self._track([a[0], b[0]], [a[1], b[1]])
        self._pending.append(("segment", tuple(a), tuple(b), color))

    # rendering -------------------------------------------------------------

    def _mapper(self):
        if not self._xs:
            self._xs, self._ys = [0.0, 1.0], [0.0, 1.0]
        x0, x1 = min(self._xs), max(self._xs)
        y0, y1 = min(self._ys), max(self._ys)
        span = max(x1 - x0, y1 - y0, 1e-9)
        inner = min(self.width, self.height) - 2 * self.margin
        scale = inner / span
        cx, cy = 0.5 * (x0 + x1), 0.5 * (y0 + y1)

        def to_px(x, y):
            return (
                self.width / 2 + (x - cx) * scale,
                self.height / 2 - (y - cy) * scale,
            )

        return to_px, scale

    def render(self) -> str:
        to_px, scale = self._mapper()
        body: List[str] = []
        for item in self._pending:
            if item[0] == "ball":
                _, kind, c, r, sc, stroke, fill = item
                px, py = to_px(c[0], c[1])
                style = f'stroke="{stroke}" fill="{fill}" fill-opacity="0.15" stroke-width="1.5"'
                if kind is NormKind.L2:
                    body.append(f'<circle cx="{fmt(px)}" cy="{fmt(py)}" r="{fmt(r * scale)}" {style}/>')
                elif kind is NormKind.L1:
                    pts = [(c[0] + r, c[1]), (c[0], c[1] + r), (c[0] - r, c[1]), (c[0], c[1] - r)]
                    coords = " ".join(f"{fmt(u)},{fmt(v)}" for u, v in (to_px(*p) for p in pts))
                    body.append(f'<polygon points="{coords}" {style}/>')
                else:
                    hx = r / (sc[0] if sc is not None else 1.0)
                    hy = r / (sc[1] if sc is not None else 1.0)
                    qx, qy = to_px(c[0] - hx, c[1] + hy)
                    body.append(
                        f'<rect x="{fmt(qx)}" y="{fmt(qy)}" width="{fmt(2 * hx * scale)}" '
                        f'height="{fmt(2 * hy * scale)}" {style}/>'
                    )
            elif item[0] == "point":
                _, xy, color, label = item
                px, py = to_px(*xy)
                body.append(f'<circle cx="{fmt(px)}" cy="{fmt(py)}" r="3" fill="{color}"/>')
                if label:
                    body.append(f'<text x="{fmt(px + 5)}" y="{fmt(py - 5)}" font-size="11">{label}</text>')
            elif item[0] == "cross":
                _, xy, color = item
                px, py = to_px(*xy)
                body.append(
                    f'<path d="M {fmt(px - 5)} {fmt(py)} L {fmt(px + 5)} {fmt(py)} '
                    f'M {fmt(px)} {fmt(py - 5)} L {fmt(px)} {fmt(py + 5)}" stroke="{color}" stroke-width="2"/>'
                )
            else:
                _, a, b, color = item
                ax, ay = to_px(*a)
                bx, by = to_px(*b)
                body.append(
                    f'<line x1="{fmt(ax)}" y1="{fmt(ay)}" x2="{fmt(bx)}" y2="{fmt(by)}" '
                    f'stroke="{color}" stroke-width="1"/>'
                )
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{self.width}" height="{self.height}">\n'
            f'<rect width="{self.width}" height="{self.height}" fill="white"/>\n'
            + "\n".join(body)
            + "\n</svg>\n"
        )


def sweep_svg(dims: Sequence[int], radii: Sequence[float]) -> str:
    """Line plot of radius against truncation dimension."""
    w, h, m = 560, 360, 45
    d0, d1 = min(dims), max(dims)
    r1 = max(radii)
    r0 = min(radii)
    dspan = max(d1 - d0, 1)
    rspan = max(r1 - r0, 1e-12)

    def px(d, r):
        return (
            m + (d - d0) / dspan * (w - 2 * m),
            h - m - (r - r0) / rspan * (h - 2 * m),
        )

    pts = " ".join(f"{fmt(x)},{fmt(y)}" for x, y in (px(d, r) for d, r in zip(dims, radii)))
    marks = "\n".join(
        f'<circle cx="{fmt(px(d, r)[0])}" cy="{fmt(px(d, r)[1])}" r="3" fill="#1f3d7a"/>'
        for d, r in zip(dims, radii)
    )
    labels = "\n".join(
        f'<text x="{fmt(px(d, r0)[0])}" y="{fmt(h - m + 16)}" font-size="11" text-anchor="middle">{d}</text>'
        for d in dims
    )
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}">\n'
        f'<rect width="{w}" height="{h}" fill="white"/>\n'
        f'<line x1="{m}" y1="{h - m}" x2="{w - m}" y2="{h - m}" stroke="black"/>\n'
        f'<line x1="{m}" y1="{m}" x2="{m}" y2="{h - m}" stroke="black"/>\n'
        f'<polyline points="{pts}" fill="none" stroke="#b03030" stroke-width="1.5"/>\n'
        f"{marks}\n{labels}\n"
        f'<text x="{w // 2}" y="{h - 8}" font-size="12" text-anchor="middle">truncation dimension</text>\n'
        f'<text x="14" y="{h // 2}" font-size="12" text-anchor="middle" '
        f'transform="rotate(-90 14 {h // 2})">radius</text>\n'
        f"</svg>\n"
    )
