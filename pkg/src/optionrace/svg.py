"""Minimal SVG writer with fixed-precision coordinates, so output is byte-stable."""

from __future__ import annotations

from xml.sax.saxutils import escape


def _n(x: float) -> str:
    return f"{x:.2f}"


class SvgCanvas:
    def __init__(self, width: int, height: int):
        self.width = width
        self.height = height
        self._items: list[str] = []

    def _attrs(self, style: dict) -> str:
        return "".join(f' {k.replace("_", "-")}="{v}"' for k, v in style.items())

    def rect(self, x, y, w, h, **style):
        self._items.append(f'<rect x="{_n(x)}" y="{_n(y)}" width="{_n(w)}" height="{_n(h)}"{self._attrs(style)}/>')

    def line(self, x1, y1, x2, y2, **style):
        self._items.append(
            f'<line x1="{_n(x1)}" y1="{_n(y1)}" x2="{_n(x2)}" y2="{_n(y2)}"{self._attrs(style)}/>')

    def polyline(self, points, **style):
        pts = " ".join(f"{_n(x)},{_n(y)}" for x, y in points)
        self._items.append(f'<polyline points="{pts}" fill="none"{self._attrs(style)}/>')

    def polygon(self, points, **style):
        pts = " ".join(f"{_n(x)},{_n(y)}" for x, y in points)
        self._items.append(f'<polygon points="{pts}"{self._attrs(style)}/>')

    def circle(self, cx, cy, r, **style):
        self._items.append(f'<circle cx="{_n(cx)}" cy="{_n(cy)}" r="{_n(r)}"{self._attrs(style)}/>')

    def text(self, x, y, s, **style):
        self._items.append(f'<text x="{_n(x)}" y="{_n(y)}"{self._attrs(style)}>{escape(s)}</text>')

    def render(self) -> str:
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" height="{self.height}" '
                f'viewBox="0 0 {self.width} {self.height}" font-family="sans-serif" font-size="12">')
        return "\n".join([head, *self._items, "</svg>"]) + "\n"
