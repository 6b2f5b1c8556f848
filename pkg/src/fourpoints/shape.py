"""Curvilinear triangles of a 4-point set, their angles, and SVG figures."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Union
from xml.sax.saxutils import escape

from .errors import ConcyclicInput, DegenerateInput, DomainError
from .moebius import FourPoints, as_four_points, cross_ratio
from .numerics import INF, SpherePoint, is_inf

__all__ = [
    "Circle",
    "Line",
    "GeneralizedCircle",
    "Shape",
    "SvgOptions",
    "circumcircle",
    "is_concyclic",
    "concyclicity",
    "triangle_angles",
    "shape_of",
    "curvilinear_triangles",
    "apex_from_angles",
    "cross_ratio_geometric",
    "shape_svg",
]

CONCYCLIC_TOL = 1e-9
NEAR_CONCYCLIC_TOL = 1e-6


@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise DomainError("circle radius must be positive")

    def distance(self, z: complex) -> float:
        return abs(abs(z - self.center) - self.radius)


@dataclass(frozen=True)
class Line:
    point: complex
    direction: complex

    def __post_init__(self):
        d = complex(self.direction)
        if d == 0:
            raise DomainError("line direction must be nonzero")
        object.__setattr__(self, "direction", d / abs(d))

    def distance(self, z: complex) -> float:
        return abs(((z - self.point) * self.direction.conjugate()).imag)


GeneralizedCircle = Union[Circle, Line]


def circumcircle(z1, z2, z3) -> GeneralizedCircle:
    """Circle through three finite points, or the line through them if collinear."""
    z1, z2, z3 = (complex(z) for z in (z1, z2, z3))
    b, c = z2 - z1, z3 - z1
    scale = max(abs(b), abs(c), abs(z3 - z2))
    if min(abs(b), abs(c), abs(z3 - z2)) <= 1e-12 * max(1.0, scale):
        raise DegenerateInput("circumcircle needs three distinct points")
    cross = (b.conjugate() * c).imag
    if abs(cross) <= 1e-12 * abs(b) * abs(c):
        return Line(z1, b)
    w = (abs(b) ** 2 * c - abs(c) ** 2 * b) / (b.conjugate() * c - b * c.conjugate())
    return Circle(z1 + w, abs(w))


def concyclicity(pts) -> float:
    """|Im| of the cross ratio; zero exactly when the points share a generalized circle."""
    pts = as_four_points(pts)
    return abs(cross_ratio(*pts).imag)


def is_concyclic(pts) -> bool:
    return concyclicity(pts) <= CONCYCLIC_TOL


def triangle_angles(w1: complex, w2: complex, w3: complex) -> tuple[float, float, float]:
    """Interior angles at w1, w2, w3 of a euclidean triangle."""

    def at(p, q, r):
        return abs(cmath.phase((r - p) / (q - p)))

    return at(w1, w2, w3), at(w2, w3, w1), at(w3, w1, w2)


def _orientation(w1, w2, w3) -> float:
    return ((w2 - w1).conjugate() * (w3 - w1)).imag


def _send_to_infinity(p4: SpherePoint):
    if is_inf(p4):
        return lambda z: z
    return lambda z: 0j if is_inf(z) else 1 / (z - p4)


@dataclass(frozen=True)
class Shape:
    """Angles of a positively oriented curvilinear triangle.

    ``vertices`` lists the triangle's corners in counterclockwise order and
    ``angles[i]`` is the angle at ``vertices[i]``; ``apex`` is the omitted point.
    """

    angles: tuple
    vertices: tuple
    apex: SpherePoint
    relabeled: bool = False
    near_concyclic: bool = False
    orientation: int = field(default=1, init=False)

    def canonical_key(self) -> tuple:
        """Lexicographically smallest cyclic rotation of the angle triple."""
        a = self.angles
        return min((a[i], a[(i + 1) % 3], a[(i + 2) % 3]) for i in range(3))

    def same_angles(self, other: "Shape", tol: float = 1e-7) -> bool:
        return all(abs(x - y) <= tol for x, y in zip(self.canonical_key(), other.canonical_key()))


def _triangle_shape(vertices, apex, near) -> Shape:
    f = _send_to_infinity(apex)
    w = [f(v) for v in vertices]
    relabeled = False
    if _orientation(*w) < 0:
        # swap the last two corners to make the triangle counterclockwise
        vertices = (vertices[0], vertices[2], vertices[1])
        w = [w[0], w[2], w[1]]
        relabeled = True
    return Shape(triangle_angles(*w), tuple(vertices), apex, relabeled, near)


def shape_of(pts) -> Shape:
    """Shape of the curvilinear triangle on p1, p2, p3 (p4 sent to inf by 1/(z - p4))."""
    pts = as_four_points(pts)
    im = concyclicity(pts)
    if im <= CONCYCLIC_TOL:
        raise ConcyclicInput(f"points lie on one generalized circle (|Im chi| = {im:.3g})")
    return _triangle_shape((pts.p1, pts.p2, pts.p3), pts.p4, im <= NEAR_CONCYCLIC_TOL)


def curvilinear_triangles(pts) -> tuple[Shape, Shape, Shape, Shape]:
    """The four triangles, the i-th omitting point i + 1."""
    pts = as_four_points(pts)
    im = concyclicity(pts)
    if im <= CONCYCLIC_TOL:
        raise ConcyclicInput(f"points lie on one generalized circle (|Im chi| = {im:.3g})")
    p = tuple(pts)
    out = []
    for i in range(4):
        rest = tuple(p[j] for j in range(4) if j != i)
        out.append(_triangle_shape(rest, p[i], im <= NEAR_CONCYCLIC_TOL))
    return tuple(out)


def apex_from_angles(alpha: float, beta: float) -> complex:
    """Apex lam of the counterclockwise triangle (0, 1, lam) with angle alpha at 0, beta at 1."""
    gamma = math.pi - alpha - beta
    if not (0 < alpha < math.pi and 0 < beta < math.pi and gamma > 0):
        raise DomainError(f"angles ({alpha}, {beta}) do not form a triangle")
    return math.sin(beta) / math.sin(gamma) * cmath.exp(1j * alpha)


def cross_ratio_geometric(pts) -> complex:
    """Cross ratio obtained from the angles of the first curvilinear triangle.

    With (v1, v2, v3) the counterclockwise corners and angles (alpha, beta, _),
    the result equals cross_ratio(v1, v2, p4, v3).
    """
    s = shape_of(pts)
    return apex_from_angles(s.angles[0], s.angles[1])


# ---------------------------------------------------------------- SVG output


@dataclass(frozen=True)
class SvgOptions:
    width: int = 640
    height: int = 640
    padding: float = 1.2
    arc_samples: int = 64
    title: str = ""
    labels: tuple = ("z1", "z2", "z3", "z4")

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0 or self.padding < 1 or self.arc_samples < 2:
            raise DomainError("invalid SVG canvas options")


_TRIANGLE_COLORS = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd")


class _Canvas:
    def __init__(self, finite, opts: SvgOptions):
        xs = [z.real for z in finite]
        ys = [z.imag for z in finite]
        cx, cy = (max(xs) + min(xs)) / 2, (max(ys) + min(ys)) / 2
        half = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9) / 2 * opts.padding
        # keep the aspect ratio of the plane
        self.scale = min(opts.width, opts.height) / (2 * half)
        self.cx, self.cy = cx, cy
        self.opts = opts
        self.half_w = opts.width / (2 * self.scale)
        self.half_h = opts.height / (2 * self.scale)

    def xy(self, z: complex) -> tuple[float, float]:
        x = (z.real - self.cx) * self.scale + self.opts.width / 2
        y = self.opts.height / 2 - (z.imag - self.cy) * self.scale
        return x, y

    def reach(self) -> float:
        """A distance in plane units that leaves the viewport from anywhere inside it."""
        return 4 * (self.half_w + self.half_h)


def _fmt(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def _polyline(canvas, zs, **attrs) -> str:
    pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in (canvas.xy(z) for z in zs))
    extra = "".join(f' {k.replace("_", "-")}="{v}"' for k, v in attrs.items())
    return f'<polyline points="{pts}" fill="none"{extra}/>'


def _circle_through(p, q, r):
    """Generalized circle through three sphere points (at most one is inf)."""
    finite = [z for z in (p, q, r) if not is_inf(z)]
    if len(finite) == 2:
        return Line(finite[0], finite[1] - finite[0])
    return circumcircle(p, q, r)


def _arc_avoiding(canvas, p, q, avoid):
    """Points along the arc of circle(p, q, avoid) from p to q that misses ``avoid``."""
    n = canvas.opts.arc_samples
    gc = _circle_through(p, q, avoid)
    if isinstance(gc, Circle):
        c = gc.center
        tp, tq = cmath.phase(p - c), cmath.phase(q - c)
        ta = cmath.phase(avoid - c)
        ccw = (tq - tp) % (2 * math.pi)
        if (ta - tp) % (2 * math.pi) < ccw:
            sweep = ccw - 2 * math.pi
        else:
            sweep = ccw
        return [[c + gc.radius * cmath.exp(1j * (tp + sweep * t / n)) for t in range(n + 1)]]
    far = canvas.reach()
    if is_inf(p) or is_inf(q):
        # ray from the finite end pointing away from the avoided point
        start = q if is_inf(p) else p
        d = start - avoid
        return [[start, start + far * d / abs(d)]]
    if is_inf(avoid):
        return [[p, q]]
    d = q - p
    t = ((avoid - p) * d.conjugate()).real / abs(d) ** 2
    if 0 < t < 1:
        # avoided point lies between p and q: the side runs through inf
        u = d / abs(d)
        return [[p, p - far * u], [q, q + far * u]]
    return [[p, q]]


def _draw_generalized_circle(canvas, gc, color) -> str:
    if isinstance(gc, Circle):
        x, y = canvas.xy(gc.center)
        r = gc.radius * canvas.scale
        return (
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(r)}" fill="none" '
            f'stroke="{color}" stroke-width="0.8" stroke-dasharray="4 3"/>'
        )
    far = canvas.reach()
    return _polyline(
        canvas,
        [gc.point - far * gc.direction, gc.point + far * gc.direction],
        stroke=color,
        stroke_width="0.8",
        stroke_dasharray="4 3",
    )


def shape_svg(pts, options: SvgOptions | None = None) -> str:
    """SVG 1.1 figure of the four points, their circumcircles and curvilinear triangles."""
    opts = options or SvgOptions()
    pts = as_four_points(pts)
    triangles = curvilinear_triangles(pts)
    p = tuple(pts)
    finite = [z for z in p if not is_inf(z)]
    canvas = _Canvas(finite, opts)

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{opts.width}" height="{opts.height}" '
        f'viewBox="0 0 {opts.width} {opts.height}">',
    ]
    if opts.title:
        out.append(f"<title>{escape(opts.title)}</title>")
    out.append(f'<rect x="0" y="0" width="{opts.width}" height="{opts.height}" fill="white"/>')
    out.append(f'<clipPath id="view"><rect x="0" y="0" width="{opts.width}" height="{opts.height}"/></clipPath>')
    out.append('<g id="circumcircles" clip-path="url(#view)">')
    for i in range(4):
        triple = [p[j] for j in range(4) if j != i]
        out.append(_draw_generalized_circle(canvas, _circle_through(*triple), "#888888"))
    out.append("</g>")

    out.append('<g id="triangles" clip-path="url(#view)">')
    for i, tri in enumerate(triangles):
        color = _TRIANGLE_COLORS[i]
        deg = ", ".join(f"{math.degrees(a):.2f}" for a in tri.angles)
        out.append(f'<g class="triangle" data-omits="{opts.labels[i]}" data-angles="{deg}">')
        v = tri.vertices
        for a, b in ((v[0], v[1]), (v[1], v[2]), (v[2], v[0])):
            for piece in _arc_avoiding(canvas, a, b, tri.apex):
                out.append(_polyline(canvas, piece, stroke=color, stroke_width="2", stroke_opacity="0.75"))
        out.append("</g>")
    out.append("</g>")

    out.append('<g id="points" font-family="sans-serif" font-size="13">')
    for label, z in zip(opts.labels, p):
        name = escape(label)
        if is_inf(z):
            out.append(
                f'<text x="{opts.width - 8}" y="18" text-anchor="end">{name} = ∞</text>'
            )
            continue
        x, y = canvas.xy(z)
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="4" fill="black"/>')
        out.append(f'<text x="{_fmt(x + 6)}" y="{_fmt(y - 6)}">{name}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
