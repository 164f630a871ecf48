"""Direct numerical evaluation of the Aubin-Yau and J functionals.

On the dense torus of a toric surface, with s = log|x|^2 and w = log|y|^2,
each Kahler potential becomes a log-sum-exp g(s, w) and the wedge product of
two Kahler forms integrates (after the angular variables) to the mixed
discriminant of the two real Hessians:

    int_X omega_a ^ omega_b = int_R2 MD(H_a, H_b) ds dw,
    MD(A, B) = A_ss B_ww + A_ww B_ss - 2 A_sw B_sw.

The constant is 1; ``mixed_volume_numeric`` checks it against
int omega^2 = V = 2 * area(polygon). This module is an independent oracle
for the polytope formula: it never looks at faces or selections.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .cubature import integrate_2d
from .diagram import NewtonDiagram, central_weights
from .errors import QuadratureError


@dataclass(frozen=True)
class LogPotential:
    """g(s, w) = log sum_j exp(log_c_j + p_j s + r_j w).

    Coefficients are stored as logarithms so large |t|-powers never overflow.
    """

    log_coefficients: tuple
    exponents: tuple

    @property
    def coefficients(self) -> np.ndarray:
        return np.exp(np.asarray(self.log_coefficients, dtype=float))

    @classmethod
    def reference(cls, diagram: NewtonDiagram) -> "LogPotential":
        return cls(tuple(0.0 for _ in diagram.points), tuple(diagram.pairs))

    @classmethod
    def geodesic(cls, diagram: NewtonDiagram, u: float) -> "LogPotential":
        """|t|^(2 a_j) weights with u = log(1/|t|)."""
        a = central_weights(diagram).a
        return cls(tuple(-2.0 * u * float(x) for x in a), tuple(diagram.pairs))


@dataclass(frozen=True)
class HessianSample:
    """Value, gradient and Hessian of a LogPotential (scalars or arrays)."""

    g: object
    g_s: object
    g_w: object
    g_ss: object
    g_sw: object
    g_ww: object

    @property
    def grad(self) -> tuple:
        return (self.g_s, self.g_w)


def potential_derivs(pot: LogPotential, s, w) -> HessianSample:
    """Softmax mean and covariance of the exponent vectors at (s, w)."""
    s = np.asarray(s, dtype=float)
    w = np.asarray(w, dtype=float)
    exps = np.asarray(pot.exponents, dtype=float)
    logc = np.asarray(pot.log_coefficients, dtype=float)
    shape = np.broadcast(s, w).shape
    s = np.broadcast_to(s, shape).ravel()
    w = np.broadcast_to(w, shape).ravel()
    z = logc[:, None] + exps[:, 0:1] * s[None, :] + exps[:, 1:2] * w[None, :]
    top = z.max(axis=0)
    e = np.exp(z - top)
    tot = e.sum(axis=0)
    pi = e / tot
    g = top + np.log(tot)
    p = exps[:, 0:1]
    r = exps[:, 1:2]
    gs = (p * pi).sum(axis=0)
    gw = (r * pi).sum(axis=0)
    # centred second moments avoid cancellation in E[x^2] - E[x]^2
    dp = p - gs[None, :]
    dr = r - gw[None, :]
    gss = (dp * dp * pi).sum(axis=0)
    gww = (dr * dr * pi).sum(axis=0)
    gsw = (dp * dr * pi).sum(axis=0)
    out = [g, gs, gw, gss, gsw, gww]
    if shape == ():
        out = [float(x[0]) for x in out]
    else:
        out = [x.reshape(shape) for x in out]
    return HessianSample(*out)


def mixed_discriminant(a: HessianSample, b: HessianSample):
    """Polarized determinant; MD(H, H) = 2 det H."""
    return a.g_ss * b.g_ww + a.g_ww * b.g_ss - 2.0 * a.g_sw * b.g_sw


@dataclass(frozen=True)
class QuadParams:
    """Cubature settings for the oracle integrals."""

    rel_tol: float = 1e-9
    abs_tol: float = 1e-11
    order: int = 8
    max_evals: int = 400_000_000
    half_width: float | None = None


DEFAULT_QUAD = QuadParams()

# order of the integrated components
_COMPONENTS = (
    "phi_md00", "phi_md0u", "phi_mduu",
    "vol00", "vol0u", "voluu",
    "md_g_u", "md_g_0",
)


@dataclass(frozen=True)
class EnergySample:
    """All oracle integrals at one value of u = log(1/|t|).

    ``mixed[i]`` is (1/V) int phi omega_0^i ^ omega_phi^(2-i); volumes are the
    raw integrals int MD/2 ds dw.
    """

    u: float
    f0: float
    j: float
    mixed: tuple
    volume_uu: float
    volume_0u: float
    volume_00: float
    error: float
    tail: float
    evaluations: int
    half_width: float


def box_half_width(diagram: NewtonDiagram, u: float, quad: QuadParams = DEFAULT_QUAD) -> float:
    if quad.half_width is not None:
        return float(quad.half_width)
    reach = max(abs(p) + abs(r) + 1 for p, r in diagram.pairs)
    return max(30.0, 4.0 * (u + 1.0) * reach)


def _integrand(diagram: NewtonDiagram, u: float):
    ref = LogPotential.reference(diagram)
    geo = LogPotential.geodesic(diagram, u)

    def f(s, w):
        h0 = potential_derivs(ref, s, w)
        hu = potential_derivs(geo, s, w)
        phi = hu.g - h0.g
        ps = hu.g_s - h0.g_s
        pw = hu.g_w - h0.g_w
        md00 = mixed_discriminant(h0, h0)
        md0u = mixed_discriminant(h0, hu)
        mduu = mixed_discriminant(hu, hu)
        # MD(G, H) for the rank-one G = grad(phi) grad(phi)^T
        mdgu = ps * ps * hu.g_ww + pw * pw * hu.g_ss - 2.0 * ps * pw * hu.g_sw
        mdg0 = ps * ps * h0.g_ww + pw * pw * h0.g_ss - 2.0 * ps * pw * h0.g_sw
        return np.stack([
            phi * md00, phi * md0u, phi * mduu,
            0.5 * md00, 0.5 * md0u, 0.5 * mduu,
            mdgu, mdg0,
        ])

    return f


def _tail_estimate(f, half: float, n: int = 2001) -> float:
    """Boundary sup of the integrand times the box perimeter."""
    t = np.linspace(-half, half, n)
    edge = np.full(n, half)
    s = np.concatenate([t, t, edge, -edge])
    w = np.concatenate([edge, -edge, t, t])
    return float(np.abs(f(s, w)).max() * 8.0 * half)


@lru_cache(maxsize=512)
def energy_sample(diagram: NewtonDiagram, u: float, quad: QuadParams = DEFAULT_QUAD) -> EnergySample:
    """Integrate every oracle component at parameter ``u`` in one adaptive pass."""
    u = float(u)
    if u < 0:
        raise ValueError("u must be nonnegative")
    half = box_half_width(diagram, u, quad)
    f = _integrand(diagram, u)
    n0 = max(8, int(math.ceil(2 * half / 4.0)))
    res = integrate_2d(
        f, (-half, half, -half, half),
        rel_tol=quad.rel_tol, abs_tol=quad.abs_tol, order=quad.order,
        initial=(n0, n0), max_evals=quad.max_evals,
    )
    tail = _tail_estimate(f, half)
    allowed = quad.rel_tol * float(np.abs(res.value).max()) + quad.abs_tol
    if tail > allowed:
        raise QuadratureError(
            f"truncation tail {tail:.3e} exceeds tolerance {allowed:.3e} "
            f"at u={u} (box half-width {half})",
            best=res.value, error=res.error, evaluations=res.evaluations,
        )
    v = dict(zip(_COMPONENTS, res.value))
    vol = float(diagram.volume)
    mixed = (v["phi_mduu"] / vol, v["phi_md0u"] / vol, v["phi_md00"] / vol)
    f0 = (v["phi_md00"] + v["phi_md0u"] + v["phi_mduu"]) / (3.0 * vol)
    j = (v["md_g_u"] / 3.0 + 2.0 * v["md_g_0"] / 3.0) / vol
    return EnergySample(
        u=u, f0=f0, j=j, mixed=mixed,
        volume_uu=v["voluu"], volume_0u=v["vol0u"], volume_00=v["vol00"],
        error=float(res.error.max()), tail=tail, evaluations=res.evaluations,
        half_width=half,
    )


def aubin_yau_numeric(diagram: NewtonDiagram, u: float, quad: QuadParams = DEFAULT_QUAD) -> float:
    """F0(phi_u) = 1/(3V) int phi (omega_0^2 + omega_0 ^ omega_phi + omega_phi^2)."""
    if u == 0:
        return 0.0
    return energy_sample(diagram, u, quad).f0


def mixed_energy_numeric(
    diagram: NewtonDiagram, u: float, i: int, quad: QuadParams = DEFAULT_QUAD
) -> float:
    """(1/V) int phi omega_0^i ^ omega_phi^(2-i) for i in {0, 1, 2}."""
    if i not in (0, 1, 2):
        raise ValueError("i must be 0, 1 or 2")
    if u == 0:
        return 0.0
    return energy_sample(diagram, u, quad).mixed[i]


def j_functional_numeric(diagram: NewtonDiagram, u: float, quad: QuadParams = DEFAULT_QUAD) -> float:
    """J(phi_u) = (1/V) int [MD(G, H_u)/3 + 2 MD(G, H_0)/3], G = grad phi grad phi^T."""
    if u == 0:
        return 0.0
    return energy_sample(diagram, u, quad).j


def mixed_volume_numeric(
    diagram: NewtonDiagram, u: float, pair: str = "uu", quad: QuadParams = DEFAULT_QUAD
) -> float:
    """int MD(H_a, H_b)/2 ds dw for pair in {"00", "0u", "uu"}; equals V/2."""
    sample = energy_sample(diagram, u, quad)
    return {"00": sample.volume_00, "0u": sample.volume_0u, "uu": sample.volume_uu}[pair]


@dataclass(frozen=True)
class SlopeFit:
    slope: float
    stderr: float
    quotients: tuple
    non_monotone: bool


def slope_fit(samples: Sequence, tol: float = 1e-6) -> SlopeFit:
    """Slope from the last difference quotient of ``(u, value)`` samples.

    The constant part of the O(1) remainder cancels in differences. ``stderr``
    is the spread of the last three quotients; ``non_monotone`` is set when
    those quotients do not settle monotonically beyond ``tol``.
    """
    pts = sorted((float(u), float(v)) for u, v in samples)
    if len(pts) < 3:
        raise ValueError("slope_fit needs at least 3 samples")
    us = np.array([p[0] for p in pts])
    vs = np.array([p[1] for p in pts])
    if np.any(np.diff(us) <= 0):
        raise ValueError("sample u values must be strictly increasing")
    if us[-1] < 8:
        raise ValueError("largest u must be at least 8")
    dq = np.diff(vs) / np.diff(us)
    last = dq[-3:]
    stderr = float(np.std(last, ddof=1)) if len(last) > 1 else 0.0
    steps = np.diff(last)
    scale = tol * max(1.0, abs(float(dq[-1])))
    big = steps[np.abs(steps) > scale + stderr]
    non_monotone = bool(len(big) > 1 and np.any(np.sign(big[1:]) != np.sign(big[:-1])))
    return SlopeFit(float(dq[-1]), stderr, tuple(float(x) for x in dq), non_monotone)
