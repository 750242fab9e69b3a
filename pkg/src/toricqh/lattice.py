"""Integer lattice point sets, convex hulls and primitive edge lines."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable

LatticePoint = tuple[int, int]


class DegenerateHull(ValueError):
    pass


class InvalidDepth(ValueError):
    pass


@dataclass(frozen=True)
class EdgeLine:
    """Affine function alpha*u + beta*v + gamma with a primitive inward normal."""

    alpha: int
    beta: int
    gamma: int

    def __call__(self, u, v):
        return self.alpha * u + self.beta * v + self.gamma

    def as_poly(self):
        from .poly import Poly2

        return Poly2.linear(self.alpha, self.beta, self.gamma)

    def __str__(self):
        parts = []
        for coef, name in ((self.alpha, "u"), (self.beta, "v")):
            if coef:
                parts.append(f"{coef}*{name}" if abs(coef) != 1 else ("-" if coef < 0 else "") + name)
        if self.gamma or not parts:
            parts.append(str(self.gamma))
        return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class LatticePolygon:
    points: tuple[LatticePoint, ...]
    hull_vertices: tuple[LatticePoint, ...]
    edges: tuple[EdgeLine, ...]

    def __contains__(self, point) -> bool:
        return all(e(*point) >= 0 for e in self.edges)

    def area(self) -> Fraction:
        return Fraction(_twice_area(self.hull_vertices), 2)

    def centroid(self) -> tuple[Fraction, Fraction]:
        """Area centroid of the hull (exact)."""
        a2 = _twice_area(self.hull_vertices)
        cx = cy = 0
        vs = self.hull_vertices
        for k in range(len(vs)):
            (x0, y0), (x1, y1) = vs[k], vs[(k + 1) % len(vs)]
            cross = x0 * y1 - x1 * y0
            cx += (x0 + x1) * cross
            cy += (y0 + y1) * cross
        return Fraction(cx, 3 * a2), Fraction(cy, 3 * a2)

    def edge_values(self, point) -> tuple:
        return tuple(e(*point) for e in self.edges)

    def fan(self, start: int = 0) -> list[tuple[LatticePoint, LatticePoint, LatticePoint]]:
        """Counterclockwise fan triangulation of the hull from vertex ``start``."""
        n = len(self.hull_vertices)
        vs = [self.hull_vertices[(start + k) % n] for k in range(n)]
        return [(vs[0], vs[k], vs[k + 1]) for k in range(1, n - 1)]


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _twice_area(vs) -> int:
    return sum(vs[k][0] * vs[(k + 1) % len(vs)][1] - vs[(k + 1) % len(vs)][0] * vs[k][1]
               for k in range(len(vs)))


def _as_points(points: Iterable) -> list[LatticePoint]:
    out = set()
    for p in points:
        i, j = p
        if int(i) != i or int(j) != j:
            raise TypeError(f"lattice point {p!r} has non-integer coordinates")
        out.add((int(i), int(j)))
    return sorted(out)


def edge_line(a: LatticePoint, b: LatticePoint) -> EdgeLine:
    """Edge line through a and b, positive to the left of the direction a -> b."""
    dx, dy = b[0] - a[0], b[1] - a[1]
    g = gcd(dx, dy)
    alpha, beta = -dy // g, dx // g
    return EdgeLine(alpha, beta, -(alpha * a[0] + beta * a[1]))


def convex_hull(points: Iterable) -> LatticePolygon:
    pts = _as_points(points)
    if not pts:
        raise DegenerateHull("empty point set")
    # Andrew's monotone chain; collinear points are dropped from the hull.
    lower: list[LatticePoint] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[LatticePoint] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise DegenerateHull(f"points span fewer than 3 extreme points: {hull}")
    # monotone chain starts at the lexicographic minimum already
    edges = tuple(edge_line(hull[k], hull[(k + 1) % len(hull)]) for k in range(len(hull)))
    return LatticePolygon(tuple(pts), tuple(hull), edges)


def classify(polygon: LatticePolygon) -> tuple[frozenset, frozenset]:
    """Split the polygon's points into (boundary, inner)."""
    boundary = frozenset(p for p in polygon.points if any(e(*p) == 0 for e in polygon.edges))
    inner = frozenset(polygon.points) - boundary
    return boundary, inner


def minkowski_sum(a: Iterable, b: Iterable) -> set[LatticePoint]:
    a, b = _as_points(a), _as_points(b)
    if not a or not b:
        raise ValueError("Minkowski sum of an empty set")
    return {(p[0] + q[0], p[1] + q[1]) for p in a for q in b}


def dilate(sigma: Iterable, d: int) -> set[LatticePoint]:
    """d-fold Minkowski sum of sigma with itself."""
    if d < 1:
        raise InvalidDepth(f"depth must be >= 1, got {d}")
    sigma = set(_as_points(sigma))
    return reduce(lambda acc, _: minkowski_sum(acc, sigma), range(d - 1), sigma)


def trapezoid_points(n: int, m: int, p: int) -> set[LatticePoint]:
    """Lattice points {(i, j): 0 <= j <= n, 0 <= i <= m + p*n - p*j}."""
    if n < 1 or p < 1 or m < 0:
        raise ValueError("trapezoid family needs n >= 1, p >= 1, m >= 0")
    return {(i, j) for j in range(n + 1) for i in range(m + p * n - p * j + 1)}


def hexagon_points() -> set[LatticePoint]:
    return {(0, 0), (1, 0), (0, 1), (1, 1), (1, 2), (2, 1), (2, 2)}


def unit_square_points() -> set[LatticePoint]:
    return {(0, 0), (1, 0), (0, 1), (1, 1)}
