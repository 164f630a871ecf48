"""Newton polytope of a diagram and the dual dominance regions.

The polytope is the convex hull of the diagram points each translated by the
positive orthant. Only its faces with normals (a, b, 1), a, b >= 0 matter;
the vertical faces are ignored. Faces are found by brute force over candidate
normals coming from point triples and pairs, all in exact rationals.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from .diagram import NewtonDiagram
from .errors import ConsistencyError
from .geometry import clip_halfplane, cross, signed_area2


@dataclass(frozen=True)
class Face:
    """Face {a p + b r + q = d} of the Newton polytope with its members."""

    normal_a: Fraction
    normal_b: Fraction
    offset: Fraction
    member_indices: tuple

    @property
    def normal(self) -> tuple:
        return (self.normal_a, self.normal_b)

    @property
    def is_trivial(self) -> bool:
        return self.offset == 0

    def value(self, point) -> Fraction:
        return self.normal_a * point.p + self.normal_b * point.r + point.q


@dataclass(frozen=True)
class DominanceRegion:
    """Cell of the quadrant where one monomial dominates.

    ``corners`` are the finite polygon vertices (counterclockwise), ``rays``
    primitive integer directions of the recession cone (empty if bounded).
    """

    vertex_index: int
    corners: tuple
    rays: tuple
    full_dimensional: bool = True

    @property
    def bounded(self) -> bool:
        return not self.rays


@dataclass(frozen=True)
class NewtonPolytope:
    diagram: NewtonDiagram
    faces: tuple
    vertex_flags: tuple
    trivial_faces: tuple = ()

    @property
    def vertices(self) -> list:
        return [k for k, flag in enumerate(self.vertex_flags) if flag]


def _candidate_normals(diagram: NewtonDiagram) -> set:
    pts = diagram.points
    cands = {(Fraction(0), Fraction(0))}
    for i, j in combinations(range(len(pts)), 2):
        a, b = pts[i], pts[j]
        if a.p != b.p:
            cands.add((Fraction(b.q - a.q) / (a.p - b.p), Fraction(0)))
        if a.r != b.r:
            cands.add((Fraction(0), Fraction(b.q - a.q) / (a.r - b.r)))
    for i, j, k in combinations(range(len(pts)), 3):
        a, b, c = pts[i], pts[j], pts[k]
        det = (b.p - a.p) * (c.r - a.r) - (c.p - a.p) * (b.r - a.r)
        if det == 0:
            continue
        rhs1 = a.q - b.q
        rhs2 = a.q - c.q
        na = Fraction(rhs1 * (c.r - a.r) - rhs2 * (b.r - a.r), det)
        nb = Fraction((b.p - a.p) * rhs2 - (c.p - a.p) * rhs1, det)
        cands.add((na, nb))
    return {c for c in cands if c[0] >= 0 and c[1] >= 0}


def _face_rank(diagram: NewtonDiagram, members, a, b) -> int:
    """Dimension of the face: span of member differences plus zero-cost recession."""
    base = diagram.points[members[0]]
    vecs = [
        (pt.p - base.p, pt.r - base.r, pt.q - base.q)
        for pt in (diagram.points[m] for m in members[1:])
    ]
    if a == 0:
        vecs.append((1, 0, 0))
    if b == 0:
        vecs.append((0, 1, 0))
    for u, v in combinations(vecs, 2):
        cr = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])
        if any(cr):
            return 2
    return 1 if any(any(v) for v in vecs) else 0


def face_members(face: Face, diagram: NewtonDiagram) -> list:
    """Indices of every diagram point lying on the face plane."""
    return [k for k, pt in enumerate(diagram.points) if face.value(pt) == face.offset]


def lower_hull(diagram: NewtonDiagram) -> NewtonPolytope:
    """Faces of the Newton polytope with normals (a, b, 1), a, b >= 0.

    Each face carries its full member list (non-vertex points on the plane
    included). Faces with offset 0 can only have normal (0, 0); they are
    kept apart in ``trivial_faces``.
    """
    pts = diagram.points
    faces = []
    trivial = []
    for a, b in sorted(_candidate_normals(diagram)):
        values = [a * pt.p + b * pt.r + pt.q for pt in pts]
        d = min(values)
        members = tuple(k for k, v in enumerate(values) if v == d)
        if len(members) < 2 or _face_rank(diagram, members, a, b) != 2:
            continue
        face = Face(a, b, d, members)
        if d == 0:
            if (a, b) != (0, 0):
                raise ConsistencyError(f"face with normal {(a, b)} has offset 0")
            trivial.append(face)
        elif d < 0:
            raise ConsistencyError(f"face with normal {(a, b)} has negative offset {d}")
        else:
            faces.append(face)
    flags = tuple(dominance_region(diagram, v).full_dimensional for v in range(len(pts)))
    return NewtonPolytope(diagram, tuple(faces), flags, tuple(trivial))


def _lines(diagram: NewtonDiagram, v: int) -> list:
    """Half-planes (A, B, C) meaning A*alpha + B*beta >= C for region v."""
    pv = diagram.points[v]
    out = [(Fraction(1), Fraction(0), Fraction(0)), (Fraction(0), Fraction(1), Fraction(0))]
    for j, pj in enumerate(diagram.points):
        if j == v:
            continue
        out.append((Fraction(pj.p - pv.p), Fraction(pj.r - pv.r), Fraction(pv.q - pj.q)))
    return out


def _box_size(diagram: NewtonDiagram, v: int) -> Fraction:
    """A bound strictly larger than every finite corner coordinate of region v."""
    lines = _lines(diagram, v)
    big = Fraction(1)
    for (a1, b1, c1), (a2, b2, c2) in combinations(lines, 2):
        det = a1 * b2 - a2 * b1
        if det == 0:
            continue
        x = (c1 * b2 - c2 * b1) / det
        y = (a1 * c2 - a2 * c1) / det
        big = max(big, abs(x), abs(y))
    return 2 * big + 1


def _region_polygon(diagram: NewtonDiagram, v: int, box: Fraction):
    poly = [(Fraction(0), Fraction(0)), (box, Fraction(0)), (box, box), (Fraction(0), box)]
    for a, b, c in _lines(diagram, v)[2:]:
        poly = clip_halfplane(poly, a, b, c)
        if not poly:
            return None
    return poly


def _primitive(vec) -> tuple:
    x, y = vec
    den = 1
    for c in (x, y):
        den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
    xi, yi = int(x * den), int(y * den)
    g = gcd(xi, yi) or 1
    return (xi // g, yi // g)


def _recession_rays(diagram: NewtonDiagram, v: int) -> tuple:
    pv = diagram.points[v]
    normals = [(pj.p - pv.p, pj.r - pv.r) for j, pj in enumerate(diagram.points) if j != v]
    cands = [(1, 0), (0, 1)]
    for nx, ny in normals:
        for d in ((ny, -nx), (-ny, nx)):
            if d[0] >= 0 and d[1] >= 0 and d != (0, 0):
                cands.append(_primitive(d))
    feasible = sorted({d for d in cands if all(nx * d[0] + ny * d[1] >= 0 for nx, ny in normals)})
    if not feasible:
        return ()
    origin = (0, 0)
    # extreme rays: smallest and largest polar angle within the quadrant
    first = feasible[0]
    last = feasible[0]
    for d in feasible[1:]:
        if cross(origin, first, d) < 0:
            first = d
        if cross(origin, last, d) > 0:
            last = d
    return (first,) if first == last else (first, last)


def dominance_region(diagram: NewtonDiagram, v: int) -> DominanceRegion:
    """Region {alpha, beta >= 0 : q_j + p_j alpha + r_j beta >= q_v + p_v alpha + r_v beta}."""
    box = _box_size(diagram, v)
    poly = _region_polygon(diagram, v, box) or []
    corners = tuple(pt for pt in poly if pt[0] < box and pt[1] < box)
    rays = _recession_rays(diagram, v) if poly else ()
    full = len(poly) >= 3 and signed_area2(poly) != 0
    return DominanceRegion(v, corners, rays, full)


def dominance_regions(polytope: NewtonPolytope) -> list:
    """One region per vertex of the polytope; together they tile the quadrant."""
    return [dominance_region(polytope.diagram, v) for v in polytope.vertices]


def dominating_indices(diagram: NewtonDiagram, alpha, beta) -> list:
    """Indices minimizing q_j + p_j alpha + r_j beta (the dominant monomials)."""
    values = [pt.q + pt.p * alpha + pt.r * beta for pt in diagram.points]
    low = min(values)
    return [k for k, val in enumerate(values) if val == low]


def region_contains(diagram: NewtonDiagram, v: int, alpha, beta) -> bool:
    """Exact closed membership of (alpha, beta) in the dominance region of v."""
    if alpha < 0 or beta < 0:
        return False
    return all(a * alpha + b * beta >= c for a, b, c in _lines(diagram, v)[2:])
