"""Exact planar helpers: orientation, hulls, areas, membership.

Coordinates may be ints or Fractions; nothing here ever touches floats.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Point = tuple


def cross(o: Point, a: Point, b: Point):
    """Twice the signed area of the triangle (o, a, b)."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Iterable[Point]) -> list:
    """Counterclockwise hull vertices (Andrew's monotone chain).

    Collinear boundary points are dropped, so the result is strictly
    convex. Degenerate inputs return 1 or 2 points.
    """
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return hull


def signed_area2(vertices: Sequence[Point]):
    """Twice the signed shoelace area (positive for counterclockwise)."""
    total = 0
    n = len(vertices)
    for k in range(n):
        x0, y0 = vertices[k]
        x1, y1 = vertices[(k + 1) % n]
        total += x0 * y1 - x1 * y0
    return total


def in_closed_polygon(vertices: Sequence[Point], pt: Point) -> bool:
    """Membership in a closed convex CCW polygon."""
    n = len(vertices)
    return all(cross(vertices[k], vertices[(k + 1) % n], pt) >= 0 for k in range(n))


def in_open_polygon(vertices: Sequence[Point], pt: Point) -> bool:
    """Strict interior membership in a convex CCW polygon with >= 3 vertices."""
    n = len(vertices)
    if n < 3:
        return False
    return all(cross(vertices[k], vertices[(k + 1) % n], pt) > 0 for k in range(n))


def clip_halfplane(poly: list, a, b, c) -> list:
    """Clip a convex polygon to {(x, y) : a*x + b*y >= c} (Sutherland-Hodgman).

    Exact for rational inputs. Repeated vertices are removed.
    """
    if not poly:
        return []
    out: list = []
    n = len(poly)
    for k in range(n):
        cur = poly[k]
        nxt = poly[(k + 1) % n]
        fc = a * cur[0] + b * cur[1] - c
        fn = a * nxt[0] + b * nxt[1] - c
        if fc >= 0:
            out.append(cur)
        if (fc > 0 and fn < 0) or (fc < 0 and fn > 0):
            t = Fraction(fc) / (fc - fn)
            out.append((cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1])))
    return simplify_polygon(out)


def simplify_polygon(poly: list) -> list:
    """Drop consecutive duplicates and collinear middle vertices."""
    pts: list = []
    for p in poly:
        if not pts or pts[-1] != p:
            pts.append(p)
    while len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        for k in range(len(pts)):
            if cross(pts[k - 1], pts[k], pts[(k + 1) % len(pts)]) == 0:
                del pts[k]
                changed = True
                break
    return pts
