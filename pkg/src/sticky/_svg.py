"""Minimal deterministic SVG writer shared by the diagram and trajectory plots."""

from __future__ import annotations

from fractions import Fraction
from xml.sax.saxutils import escape


def fmt(value) -> str:
    # fixed precision keeps output byte-stable across platforms
    text = f"{float(value):.3f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


class Canvas:
    """Maps a data box onto an SVG viewport with y pointing up."""

    def __init__(self, x_range, y_range, width=480, height=360, margin=40):
        self.width = width
        self.height = height
        self.margin = margin
        x0, x1 = (Fraction(v) for v in x_range)
        y0, y1 = (Fraction(v) for v in y_range)
        if x1 == x0:
            x0, x1 = x0 - 1, x1 + 1
        if y1 == y0:
            y0, y1 = y0 - 1, y1 + 1
        self.x0, self.x1, self.y0, self.y1 = x0, x1, y0, y1
        self.parts: list[str] = []

    def sx(self, x) -> str:
        span = self.width - 2 * self.margin
        return fmt(self.margin + (Fraction(x) - self.x0) / (self.x1 - self.x0) * span)

    def sy(self, y) -> str:
        span = self.height - 2 * self.margin
        return fmt(self.height - self.margin - (Fraction(y) - self.y0) / (self.y1 - self.y0) * span)

    def polyline(self, points, stroke, width=1.5, dash=None, cls=None):
        coords = " ".join(f"{self.sx(x)},{self.sy(y)}" for x, y in points)
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        klass = f' class="{cls}"' if cls else ""
        self.parts.append(
            f'<polyline{klass} points="{coords}" fill="none" stroke="{stroke}" '
            f'stroke-width="{width}"{extra}/>'
        )

    def marker(self, x, y, fill, r=3, cls=None):
        klass = f' class="{cls}"' if cls else ""
        self.parts.append(
            f'<circle{klass} cx="{self.sx(x)}" cy="{self.sy(y)}" r="{r}" fill="{fill}"/>'
        )

    def line(self, x0, y0, x1, y1, stroke="#000000", width=1):
        self.parts.append(
            f'<line x1="{self.sx(x0)}" y1="{self.sy(y0)}" x2="{self.sx(x1)}" '
            f'y2="{self.sy(y1)}" stroke="{stroke}" stroke-width="{width}"/>'
        )

    def text(self, x, y, label, anchor="start"):
        self.parts.append(
            f'<text x="{self.sx(x)}" y="{self.sy(y)}" font-family="sans-serif" '
            f'font-size="11" text-anchor="{anchor}">{escape(label)}</text>'
        )

    def axes(self, x_label, y_label):
        ax_y = min(max(Fraction(0), self.y0), self.y1)
        ax_x = min(max(Fraction(0), self.x0), self.x1)
        self.line(self.x0, ax_y, self.x1, ax_y)
        self.line(ax_x, self.y0, ax_x, self.y1)
        self.text(self.x1, ax_y, x_label, anchor="end")
        self.text(ax_x, self.y1, y_label)

    def render(self, title: str) -> str:
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{self.width}" height="{self.height}" '
            f'viewBox="0 0 {self.width} {self.height}">\n'
            f"<title>{escape(title)}</title>\n"
            f'<rect x="0" y="0" width="{self.width}" height="{self.height}" fill="#ffffff"/>\n'
        )
        return head + "\n".join(self.parts) + "\n</svg>\n"
