"""Polarized toric surfaces, their monomial bases and test-configuration weights.

A lattice polygon in the first quadrant containing the origin fixes a toric
surface with a monomial basis of sections, one per lattice point. A Bergman
geodesic is specified by a nonnegative weight on each lattice point; the
weighted exponent points form the Newton diagram. Everything in this module
is exact rational arithmetic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DiagramError, PolygonError
from .geometry import convex_hull, cross, in_closed_polygon, signed_area2


def as_fraction(value) -> Fraction:
    """Exact rational from an int, Fraction, string like ``"1/2"`` or float."""
    if isinstance(value, bool):
        raise TypeError("booleans are not weights")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        if not math.isfinite(value):
            raise DiagramError(f"non-finite weight {value!r}")
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational number")


@dataclass(frozen=True)
class LatticePolygon:
    """Convex lattice polygon, vertices stored counterclockwise.

    Clockwise input is reoriented. Raises PolygonError for anything that is
    not a strictly convex polygon in the closed first quadrant containing
    the origin.
    """

    vertices: tuple

    def __post_init__(self):
        verts = []
        for v in self.vertices:
            if len(v) != 2:
                raise PolygonError(f"vertex {v!r} is not a 2-vector")
            p, r = v
            if not (isinstance(p, int) and isinstance(r, int)) or isinstance(p, bool):
                raise PolygonError(f"vertex {v!r} is not an integer point")
            verts.append((p, r))
        if len(set(verts)) != len(verts):
            raise PolygonError("polygon vertices are not pairwise distinct")
        if len(verts) < 3 or signed_area2(verts) == 0:
            raise PolygonError("polygon has no interior")
        if signed_area2(verts) < 0:
            verts.reverse()
        n = len(verts)
        for k in range(n):
            turn = cross(verts[k - 1], verts[k], verts[(k + 1) % n])
            if turn <= 0:
                raise PolygonError(
                    f"polygon is not strictly convex at vertex {verts[k]}"
                )
        if any(p < 0 or r < 0 for p, r in verts):
            raise PolygonError("polygon must lie in the closed first quadrant")
        if not in_closed_polygon(verts, (0, 0)):
            raise PolygonError("polygon must contain the origin")
        object.__setattr__(self, "vertices", tuple(verts))


@dataclass(frozen=True, order=True)
class WeightedPoint:
    p: int
    r: int
    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "q", as_fraction(self.q))
        if self.p < 0 or self.r < 0:
            raise DiagramError(f"exponents must be nonnegative, got ({self.p}, {self.r})")
        if self.q < 0:
            raise DiagramError(f"negative weight {self.q} at ({self.p}, {self.r})")

    @property
    def pair(self) -> tuple:
        return (self.p, self.r)


def hull_volume(pairs: Iterable[tuple]) -> Fraction:
    """V = 2 x Euclidean area of the convex hull of the exponent pairs."""
    hull = convex_hull(pairs)
    if len(hull) < 3:
        return Fraction(0)
    return Fraction(signed_area2(hull))


@dataclass(frozen=True)
class NewtonDiagram:
    """Weighted exponent points of a test configuration.

    Points are stored sorted by exponent pair, so two diagrams built from the
    same data in any order compare (and hash) equal. ``shift`` records a
    uniform amount subtracted from user weights during normalization.
    """

    points: tuple
    volume: Fraction = None
    shift: Fraction = Fraction(0)

    def __post_init__(self):
        pts = tuple(sorted(
            pt if isinstance(pt, WeightedPoint) else WeightedPoint(*pt)
            for pt in self.points
        ))
        if len(pts) < 3:
            raise DiagramError("a Newton diagram needs at least 3 points")
        pairs = [pt.pair for pt in pts]
        if len(set(pairs)) != len(pairs):
            dup = sorted({pr for pr in pairs if pairs.count(pr) > 1})
            raise DiagramError(f"repeated exponent pairs: {dup}")
        if min(pt.q for pt in pts) != 0:
            raise DiagramError("the minimum weight of a Newton diagram must be 0")
        vol = hull_volume(pairs)
        if vol <= 0:
            raise DiagramError("diagram exponents are collinear (zero volume)")
        if self.volume is not None and as_fraction(self.volume) != vol:
            raise DiagramError(
                f"volume {self.volume} does not match 2*area of the hull ({vol})"
            )
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "volume", vol)
        object.__setattr__(self, "shift", as_fraction(self.shift))

    @classmethod
    def from_triples(cls, triples: Iterable[Sequence]) -> "NewtonDiagram":
        """Build from ``(p, r, q)`` triples; weights are normalized to min 0."""
        pts = [(int(p), int(r), as_fraction(q)) for p, r, q in triples]
        low = min(q for _, _, q in pts)
        return cls(tuple(WeightedPoint(p, r, q - low) for p, r, q in pts), shift=low)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def pairs(self) -> list:
        return [pt.pair for pt in self.points]

    @property
    def weights(self) -> list:
        return [pt.q for pt in self.points]

    def index_of(self, pair) -> int:
        return self.pairs.index(tuple(pair))

    def scaled(self, factor) -> "NewtonDiagram":
        """Same exponents, every weight multiplied by ``factor`` > 0."""
        factor = as_fraction(factor)
        if factor <= 0:
            raise DiagramError("scale factor must be positive")
        return NewtonDiagram(
            tuple(WeightedPoint(pt.p, pt.r, pt.q * factor) for pt in self.points)
        )


@dataclass(frozen=True)
class CentralWeights:
    """The sum-zero weights a_j of the one-parameter subgroup."""

    a: tuple

    def __post_init__(self):
        if sum(self.a, Fraction(0)) != 0:
            raise DiagramError("central weights must sum to zero")

    @property
    def lowest(self) -> Fraction:
        return min(self.a)

    def nonnegative(self) -> tuple:
        """Recover q_j = a_j - min_k a_k."""
        low = self.lowest
        return tuple(x - low for x in self.a)


def enumerate_lattice_points(polygon: LatticePolygon) -> list:
    """All integer points of the closed polygon, sorted lexicographically."""
    verts = polygon.vertices
    if signed_area2(verts) == 0:
        raise PolygonError("polygon has no interior")
    xs = [v[0] for v in verts]
    ys = [v[1] for v in verts]
    found = []
    for p in range(min(xs), max(xs) + 1):
        for r in range(min(ys), max(ys) + 1):
            if in_closed_polygon(verts, (p, r)):
                found.append((p, r))
    return found


def polygon_volume(polygon: LatticePolygon) -> Fraction:
    """V = 2 x shoelace area, i.e. the integral of omega_0^2."""
    return Fraction(signed_area2(polygon.vertices))


def build_diagram(polygon: LatticePolygon, weights: Mapping) -> NewtonDiagram:
    """Attach one nonnegative weight to every lattice point of ``polygon``.

    If the smallest supplied weight is positive it is subtracted from all of
    them (the geodesic is unchanged); the amount is kept in ``shift``.
    """
    lattice = enumerate_lattice_points(polygon)
    given = {}
    for key, value in weights.items():
        key = tuple(int(c) for c in key)
        given[key] = as_fraction(value)
    missing = [pt for pt in lattice if pt not in given]
    extra = sorted(pt for pt in given if pt not in set(lattice))
    if missing or extra:
        parts = []
        if missing:
            parts.append(f"missing weights for lattice points {missing}")
        if extra:
            parts.append(f"weights given for non-lattice points {extra}")
        raise DiagramError("; ".join(parts))
    negative = sorted(pt for pt in lattice if given[pt] < 0)
    if negative:
        raise DiagramError(f"negative weights at {negative}")
    low = min(given[pt] for pt in lattice)
    pts = tuple(WeightedPoint(p, r, given[(p, r)] - low) for p, r in lattice)
    diagram = NewtonDiagram(pts, shift=low)
    if diagram.volume != polygon_volume(polygon):
        raise DiagramError("lattice points do not span the polygon")
    return diagram


def central_weights(diagram: NewtonDiagram) -> CentralWeights:
    """a_j = q_j - mean(q); -2 min a_j then equals twice the mean weight."""
    qs = diagram.weights
    mean = sum(qs, Fraction(0)) / len(qs)
    return CentralWeights(tuple(q - mean for q in qs))


def trivial_slope_term(diagram: NewtonDiagram) -> Fraction:
    """Lowest-weight contribution -2 a_N = 2 * mean(q)."""
    return -2 * central_weights(diagram).lowest
