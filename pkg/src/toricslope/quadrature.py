"""Convergent singular face integrals.

    I = int_0^inf int_0^inf x^(2P-1) y^(2R-1) / (sum_a x^(2p_a) y^(2r_a))^4 dx dy

After u = x^2, v = y^2 and s = log u, w = log v this becomes

    I = 1/4 * int_R2 exp(P s + R w - 4 LSE(s, w)) ds dw,

with LSE the log-sum-exp of the face monomials. The transformed integrand is
smooth and decays exponentially in every direction, at a rate fixed by how
deep (P/4, R/4) sits inside the hull of the face exponents.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cubature import integrate_2d
from .errors import DivergentIntegralError, QuadratureError
from .geometry import convex_hull, cross

DEFAULT_REL_TOL = 1e-10


@dataclass(frozen=True)
class FaceIntegralSpec:
    sum_p: int
    sum_r: int
    denom_pairs: tuple
    power: int = 4

    def __post_init__(self):
        pairs = tuple(sorted((int(p), int(r)) for p, r in self.denom_pairs))
        if not pairs:
            raise ValueError("denominator needs at least one monomial")
        if len(set(pairs)) != len(pairs):
            raise ValueError("denominator monomials must be distinct")
        object.__setattr__(self, "denom_pairs", pairs)

    @property
    def center(self) -> tuple:
        """(P, R) / power, the point that must be interior."""
        return (Fraction(self.sum_p, self.power), Fraction(self.sum_r, self.power))

    def transposed(self) -> "FaceIntegralSpec":
        return FaceIntegralSpec(
            self.sum_r, self.sum_p, tuple((r, p) for p, r in self.denom_pairs), self.power
        )


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    evaluations: int


def _edge_margins(spec: FaceIntegralSpec) -> list:
    """Per hull edge: (outward integer normal, power*support - normal.(P,R))."""
    hull = convex_hull(spec.denom_pairs)
    if len(hull) < 3:
        return []
    k = spec.power
    out = []
    for i in range(len(hull)):
        a = hull[i]
        b = hull[(i + 1) % len(hull)]
        nx, ny = b[1] - a[1], a[0] - b[0]
        margin = k * (nx * a[0] + ny * a[1]) - (nx * spec.sum_p + ny * spec.sum_r)
        out.append(((nx, ny), margin))
    return out


def convergence_check(spec: FaceIntegralSpec) -> bool:
    """True iff (P/4, R/4) lies strictly inside the hull of the denominator exponents."""
    margins = _edge_margins(spec)
    return bool(margins) and all(m > 0 for _, m in margins)


def decay_rate(spec: FaceIntegralSpec) -> float:
    """Slowest exponential decay rate of the log-coordinate integrand."""
    margins = _edge_margins(spec)
    if not margins or any(m <= 0 for _, m in margins):
        return 0.0
    return min(m / math.hypot(*n) for n, m in margins)


def _integrand(spec: FaceIntegralSpec):
    pairs = np.array(spec.denom_pairs, dtype=float)
    P, R, k = float(spec.sum_p), float(spec.sum_r), float(spec.power)

    def f(s, w):
        z = pairs[:, 0:1] * s[None, :] + pairs[:, 1:2] * w[None, :]
        top = z.max(axis=0)
        lse = top + np.log(np.exp(z - top).sum(axis=0))
        return np.exp(P * s + R * w - k * lse)

    return f


def truncation_half_width(spec: FaceIntegralSpec, rel_tol: float) -> float:
    delta = decay_rate(spec)
    return (math.log(1.0 / rel_tol) + 40.0) / delta


def face_integral(
    spec: FaceIntegralSpec,
    rel_tol: float = DEFAULT_REL_TOL,
    *,
    order: int = 8,
    max_evals: int = 20_000_000,
) -> QuadratureResult:
    """Evaluate the face integral to relative accuracy ``rel_tol``."""
    if not 0 < rel_tol < 1:
        raise ValueError("rel_tol must lie in (0, 1)")
    if not convergence_check(spec):
        raise DivergentIntegralError(
            "integral diverges: numerator exponent outside open Newton region"
        )
    half = truncation_half_width(spec, rel_tol)
    # initial panels about 2 units wide, the scale of the integrand's features
    n0 = int(min(max(math.ceil(2 * half / 2.0), 8), 160))
    try:
        res = integrate_2d(
            _integrand(spec), (-half, half, -half, half),
            rel_tol=0.5 * rel_tol, order=order, initial=(n0, n0), max_evals=max_evals,
        )
    except QuadratureError as exc:
        best = None if exc.best is None else 0.25 * float(exc.best[0])
        raise QuadratureError(
            f"face integral did not converge: {exc}", best=best,
            error=None if exc.error is None else 0.25 * float(exc.error[0]),
            evaluations=exc.evaluations,
        ) from exc
    return QuadratureResult(0.25 * float(res.value[0]), 0.25 * float(res.error[0]), res.evaluations)


def dirichlet_reference(sum_p: int, sum_r: int, power: int = 4) -> float:
    """Closed form for the unit-triangle denominator 1 + x^2 + y^2.

    1/4 * int u^(P-1) v^(R-1) / (1+u+v)^k du dv = Gamma(P)Gamma(R)Gamma(k-P-R) / (4 Gamma(k)).
    """
    return (
        math.gamma(sum_p) * math.gamma(sum_r) * math.gamma(power - sum_p - sum_r)
        / (4 * math.gamma(power))
    )
