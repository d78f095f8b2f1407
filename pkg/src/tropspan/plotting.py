"""Static SVG pictures of two-dimensional solution sets.

Conventions follow the usual max-plus plane geometry: scalar multiples of a
vector slide its endpoint along a 45-degree line, so a column span is the
strip between the extreme 45-degree lines through the generator endpoints.
Generators with a zero component sit at infinity; their boundary line
disappears and the strip opens into a half-plane, drawn clipped to the
viewing window.  Hatch marks sit on the inner side of each boundary line,
mirroring the usual hand-drawn figures.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import UnsupportedDimension
from .semifield import ZERO
from .solvers import interval_to_generators
from .spanopt import (
    SpanProblem,
    complete_solution,
    extended_interval,
)

_INF = float("inf")


def _as_float(value) -> float:
    if value is ZERO:
        return -_INF
    return float(value) if isinstance(value, Fraction) else float(value)


def _offsets(columns) -> tuple[float, float]:
    """Extreme values of x2 - x1 over the span of the given 2-D columns."""
    lo, hi = _INF, -_INF
    for col in columns:
        a, b = col[0], col[1]
        if a is ZERO:
            hi = _INF
            continue
        if b is ZERO:
            lo = -_INF
            continue
        off = float(b) - float(a)
        lo = min(lo, off)
        hi = max(hi, off)
    return lo, hi


def _clip_halfplane(points, keep):
    """Sutherland-Hodgman step: keep(p) true for points on the kept side."""
    out = []
    m = len(points)
    for i in range(m):
        cur, nxt = points[i], points[(i + 1) % m]
        cur_in, nxt_in = keep(cur), keep(nxt)
        if cur_in:
            out.append(cur)
        if cur_in != nxt_in:
            # intersection with the line x2 - x1 = c is found by the caller
            out.append(keep.crossing(cur, nxt))
    return out


class _DiagonalCut:
    """Half-plane x2 - x1 <= c (or >=), with its crossing computation."""

    def __init__(self, c: float, below: bool):
        self.c = c
        self.below = below

    def __call__(self, p):
        d = p[1] - p[0]
        return d <= self.c + 1e-9 if self.below else d >= self.c - 1e-9

    def crossing(self, p, q):
        # solve (p2 + t(q2-p2)) - (p1 + t(q1-p1)) = c
        dp = (p[1] - p[0]) - self.c
        dq = (q[1] - q[0]) - self.c
        t = dp / (dp - dq)
        return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


def _region_polygon(lo: float, hi: float, w0: float, w1: float):
    points = [(w0, w0), (w1, w0), (w1, w1), (w0, w1)]
    if hi < _INF:
        points = _clip_halfplane(points, _DiagonalCut(hi, below=True))
    if points and lo > -_INF:
        points = _clip_halfplane(points, _DiagonalCut(lo, below=False))
    return points


class _Svg:
    def __init__(self, window: tuple[float, float], size: int):
        self.w0, self.w1 = window
        self.size = size
        self.margin = 30.0
        self.scale = (size - 2 * self.margin) / (self.w1 - self.w0)
        self.parts: list[str] = []

    def sx(self, x: float) -> float:
        return self.margin + (x - self.w0) * self.scale

    def sy(self, y: float) -> float:
        return self.size - self.margin - (y - self.w0) * self.scale

    def fmt(self, v: float) -> str:
        return f"{v:.2f}"

    def line(self, a, b, *, width=1.0, color="#333", dash=None, marker=False):
        attrs = (f'x1="{self.fmt(self.sx(a[0]))}" y1="{self.fmt(self.sy(a[1]))}" '
                 f'x2="{self.fmt(self.sx(b[0]))}" y2="{self.fmt(self.sy(b[1]))}" '
                 f'stroke="{color}" stroke-width="{width}"')
        if dash:
            attrs += f' stroke-dasharray="{dash}"'
        if marker:
            attrs += ' marker-end="url(#arrow)"'
        self.parts.append(f"<line {attrs} />")

    def polygon(self, points, *, fill, opacity="0.25"):
        coords = " ".join(f"{self.fmt(self.sx(x))},{self.fmt(self.sy(y))}"
                          for x, y in points)
        self.parts.append(f'<polygon points="{coords}" fill="{fill}" '
                          f'fill-opacity="{opacity}" stroke="none" />')

    def text(self, pos, label, *, color="#111"):
        self.parts.append(f'<text x="{self.fmt(self.sx(pos[0]) + 4)}" '
                          f'y="{self.fmt(self.sy(pos[1]) - 4)}" '
                          f'font-size="12" fill="{color}">{label}</text>')

    def hatches(self, c: float, inward: int):
        """Short ticks along the diagonal x2 - x1 = c on its inner side."""
        step = (self.w1 - self.w0) / 24.0
        tick = step * 0.45 * inward
        t = self.w0
        while t <= self.w1:
            x, y = t, t + c
            if self.w0 <= y <= self.w1:
                self.line((x, y), (x + tick, y), width=0.7, color="#555")
            t += step

    def document(self) -> str:
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.size}" '
                f'height="{self.size}" viewBox="0 0 {self.size} {self.size}">')
        defs = ('<defs><marker id="arrow" markerWidth="8" markerHeight="8" '
                'refX="6" refY="3" orient="auto">'
                '<path d="M0,0 L6,3 L0,6 z" fill="#111" /></marker></defs>')
        bg = f'<rect width="{self.size}" height="{self.size}" fill="white" />'
        return "\n".join([head, defs, bg, *self.parts, "</svg>"]) + "\n"


def _draw_ray(svg: _Svg, col, label: str, *, color="#111"):
    a, b = col[0], col[1]
    if a is ZERO:
        svg.line((0, 0), (svg.w0 * 0.9, 0), width=1.8, color=color,
                 dash="4 3", marker=True)
        svg.text((svg.w0 * 0.9, 0.4), label, color=color)
        return
    if b is ZERO:
        svg.line((0, 0), (0, svg.w0 * 0.9), width=1.8, color=color,
                 dash="4 3", marker=True)
        svg.text((0.4, svg.w0 * 0.9), label, color=color)
        return
    tip = (float(a), float(b))
    svg.line((0, 0), tip, width=1.8, color=color, marker=True)
    svg.text(tip, label, color=color)


def render_span_svg(prob: SpanProblem, *, window: tuple[float, float] = (-10, 10),
                    size: int = 520,
                    budget: int | None = None) -> str:
    """Picture of the extended interval and the complete solution strip."""
    if prob.A.cols != 2:
        raise UnsupportedDimension(
            f"plotting needs a 2-column problem, got {prob.A.cols} columns")
    interval = extended_interval(prob)
    kwargs = {} if budget is None else {"budget": budget}
    sol = complete_solution(prob, **kwargs)
    s0 = sol.generators.generators

    svg = _Svg(window, size)
    w0, w1 = svg.w0, svg.w1
    # axes
    svg.line((w0, 0), (w1, 0), width=1.0, color="#999")
    svg.line((0, w0), (0, w1), width=1.0, color="#999")

    # complete solution strip: span of S0 columns
    lo, hi = _offsets(s0.columns())
    region = _region_polygon(lo, hi, w0, w1)
    if region:
        svg.polygon(region, fill="#7ba7d7")
    if hi < _INF:
        svg.line((w0, w0 + hi), (w1, w1 + hi), width=2.2, color="#333")
        svg.hatches(hi, inward=1)
    if lo > -_INF:
        svg.line((w0, w0 + lo), (w1, w1 + lo), width=2.2, color="#333")
        svg.hatches(lo, inward=-1)

    # extended strip between x' and x'' (a subset of the region above);
    # its width is read off the generators of I (+) g h^-, whose extreme
    # offsets are g2 - h1 and h2 - g1
    extended = interval_to_generators(interval)
    ext_lo, ext_hi = _offsets(extended.generators.columns())
    ext_region = _region_polygon(ext_lo, ext_hi, w0, w1)
    if ext_region:
        svg.polygon(ext_region, fill="#e0a060", opacity="0.30")
    for off in sorted({ext_lo, ext_hi}):
        if -_INF < off < _INF:
            svg.line((w0, w0 + off), (w1, w1 + off), width=1.2,
                     color="#b3541e", dash="6 4")

    # extended interval rays x' and x''
    _draw_ray(svg, interval.lower, "x&#8242;", color="#b3541e")
    _draw_ray(svg, interval.upper, "x&#8243;", color="#b3541e")

    # generator rays
    for j, col in enumerate(s0.columns(), start=1):
        _draw_ray(svg, col, f"s{j}")

    return svg.document()
