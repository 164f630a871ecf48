"""Asymptotic slope of the Aubin-Yau functional from the Newton polytope.

    mu = 2 mean(q) - 1/(3V) * sum_faces 16 d_c * sum_selections D4 * I

The first term is the lowest-weight contribution; each nontrivial face adds
a nonnegative correction built from its member exponents.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .diagram import NewtonDiagram, trivial_slope_term
from .errors import ConsistencyError
from .polytope import Face, NewtonPolytope, lower_hull
from .quadrature import (
    DEFAULT_REL_TOL,
    FaceIntegralSpec,
    QuadratureResult,
    convergence_check,
    face_integral,
)
from .symbols import IndexSelection, enumerate_selections

# n + 1 for complex surfaces
DIMENSION_FACTOR = 3
FACE_WEIGHT = 16


@dataclass(frozen=True)
class SelectionTerm:
    selection: IndexSelection
    integral: QuadratureResult
    spec: FaceIntegralSpec

    @property
    def product(self) -> float:
        return float(self.selection.d4) * self.integral.value

    @property
    def error(self) -> float:
        return float(self.selection.d4) * self.integral.abs_error_estimate


@dataclass(frozen=True)
class FaceContribution:
    """One face's share 16 d_c sum D4 I, with the terms that built it.

    Selection indices refer to ``face.member_indices`` positions.
    """

    face: Face
    selection_terms: tuple
    subtotal: float
    error_bound: float

    @property
    def weighted_sum(self) -> float:
        """sum D4 * I over the face's selections."""
        return sum(t.product for t in self.selection_terms)


@dataclass(frozen=True)
class SlopeReport:
    trivial_term: Fraction
    nontrivial_total: float
    mu: float
    per_face: tuple
    error_bound: float
    volume: Fraction
    diagnostics: tuple = ()

    def to_dict(self) -> dict:
        return {
            "mu": self.mu,
            "trivial_term": str(self.trivial_term),
            "trivial_term_float": float(self.trivial_term),
            "nontrivial_total": self.nontrivial_total,
            "error_bound": self.error_bound,
            "volume": str(self.volume),
            "faces": [
                {
                    "normal": [str(fc.face.normal_a), str(fc.face.normal_b)],
                    "offset": str(fc.face.offset),
                    "members": list(fc.face.member_indices),
                    "subtotal": fc.subtotal,
                    "weighted_sum": fc.weighted_sum,
                    "error_bound": fc.error_bound,
                    "selections": [
                        {
                            "indices": [fc.face.member_indices[k] for k in t.selection.indices],
                            "d4": str(t.selection.d4),
                            "P": t.selection.sum_p,
                            "R": t.selection.sum_r,
                            "integral": t.integral.value,
                            "integral_error": t.integral.abs_error_estimate,
                        }
                        for t in fc.selection_terms
                    ],
                }
                for fc in self.per_face
            ],
            "diagnostics": list(self.diagnostics),
        }


def _spec_for(selection: IndexSelection, pairs) -> FaceIntegralSpec:
    return FaceIntegralSpec(selection.sum_p, selection.sum_r, tuple(pairs))


def face_contribution(
    face: Face,
    diagram: NewtonDiagram,
    rel_tol: float = DEFAULT_REL_TOL,
    *,
    cache: dict | None = None,
) -> FaceContribution:
    """Integrate every surviving selection of the face and weight by 16 d_c.

    Every selection integral gets the same relative tolerance, so the face
    subtotal (a positive combination) inherits it. ``cache`` maps
    FaceIntegralSpec to results and may be shared across faces.
    """
    if cache is None:
        cache = {}
    pairs = [diagram.points[k].pair for k in face.member_indices]
    terms = []
    for sel in enumerate_selections(pairs):
        spec = _spec_for(sel, pairs)
        if not convergence_check(spec):
            raise ConsistencyError(
                f"selection {sel.indices} on face {face.normal} fails the convergence test"
            )
        if spec not in cache:
            cache[spec] = face_integral(spec, rel_tol)
        terms.append(SelectionTerm(sel, cache[spec], spec))
    weight = FACE_WEIGHT * float(face.offset)
    subtotal = weight * sum(t.product for t in terms)
    error = weight * sum(t.error for t in terms)
    return FaceContribution(face, tuple(terms), subtotal, error)


def compute_slope(
    diagram: NewtonDiagram,
    rel_tol: float = DEFAULT_REL_TOL,
    polytope: NewtonPolytope | None = None,
) -> SlopeReport:
    """Asymptotic slope mu of the Aubin-Yau functional along the geodesic."""
    if polytope is None:
        polytope = lower_hull(diagram)
    notes = []
    if diagram.shift:
        notes.append(f"weights normalized by subtracting {diagram.shift}")
    for face in polytope.trivial_faces:
        notes.append(
            f"face with normal ({face.normal_a}, {face.normal_b}) has offset 0; "
            f"contributes nothing (members {list(face.member_indices)})"
        )
    cache: dict = {}
    contributions = []
    for face in sorted(polytope.faces, key=lambda f: f.normal):
        fc = face_contribution(face, diagram, rel_tol, cache=cache)
        if not fc.selection_terms:
            notes.append(
                f"face with normal ({face.normal_a}, {face.normal_b}) has no "
                "non-collinear selection; contributes nothing"
            )
        contributions.append(fc)
    trivial = trivial_slope_term(diagram)
    scale = 1.0 / (DIMENSION_FACTOR * float(diagram.volume))
    nontrivial = scale * sum(fc.subtotal for fc in contributions)
    error = scale * sum(fc.error_bound for fc in contributions)
    notes.append(f"{len(cache)} distinct face integrals evaluated at rel_tol {rel_tol:g}")
    return SlopeReport(
        trivial_term=trivial,
        nontrivial_total=nontrivial,
        mu=float(trivial) - nontrivial,
        per_face=tuple(contributions),
        error_bound=error,
        volume=diagram.volume,
        diagnostics=tuple(notes),
    )
