"""Asymptotic slope of the Aubin-Yau functional along Bergman geodesics on
toric surfaces, from the Newton polytope, with a direct numerical oracle."""

from .diagram import (
    CentralWeights,
    LatticePolygon,
    NewtonDiagram,
    WeightedPoint,
    build_diagram,
    central_weights,
    enumerate_lattice_points,
    polygon_volume,
)
from .errors import (
    ConsistencyError,
    DiagramError,
    DivergentIntegralError,
    PolygonError,
    QuadratureError,
    ToricSlopeError,
)
from .polytope import Face, NewtonPolytope, dominance_regions, face_members, lower_hull
from .quadrature import FaceIntegralSpec, convergence_check, face_integral
from .slope import SlopeReport, compute_slope, face_contribution
from .symbols import bracket, d3, d4, enumerate_selections, symbol_ijkl

__version__ = "0.1.0"
