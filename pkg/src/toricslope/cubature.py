"""Adaptive tensor-product Gauss-Legendre cubature on rectangles.

Each panel is integrated with an n x n Gauss rule and again on its four
quadrants; the discrepancy is the panel's error estimate and the quadrant sum
is kept as its value. Panels are bisected in order of decreasing error until
the summed estimate meets the tolerance. Integrands may be vector valued and
must accept flat coordinate arrays.

The refinement order is fixed (stable sorts, no threading), so results are
bit-reproducible for a given rule order and tolerance.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import QuadratureError


@lru_cache(maxsize=None)
def _gauss(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


@dataclass(frozen=True)
class CubatureResult:
    value: np.ndarray
    error: np.ndarray
    evaluations: int
    panels: int


def _panel_rule(f, panels: np.ndarray, order: int) -> np.ndarray:
    """Gauss estimate on every panel; returns shape (ncomp, npanels)."""
    x, w = _gauss(order)
    x0, x1, y0, y1 = panels.T
    hx = 0.5 * (x1 - x0)
    hy = 0.5 * (y1 - y0)
    cx = 0.5 * (x1 + x0)
    cy = 0.5 * (y1 + y0)
    xs = cx[:, None] + hx[:, None] * x[None, :]
    ys = cy[:, None] + hy[:, None] * x[None, :]
    S = np.repeat(xs, order, axis=1)
    W = np.tile(ys, (1, order))
    vals = np.asarray(f(S.ravel(), W.ravel()), dtype=float)
    if vals.ndim == 1:
        vals = vals[None, :]
    vals = vals.reshape(vals.shape[0], len(panels), order * order)
    ww = np.outer(w, w).ravel()
    return (vals @ ww) * (hx * hy)[None, :]


def _split(panels: np.ndarray) -> np.ndarray:
    """Four children per panel, ordered panel-major."""
    x0, x1, y0, y1 = panels.T
    xm = 0.5 * (x0 + x1)
    ym = 0.5 * (y0 + y1)
    kids = np.stack([
        np.stack([x0, xm, y0, ym], axis=1),
        np.stack([xm, x1, y0, ym], axis=1),
        np.stack([x0, xm, ym, y1], axis=1),
        np.stack([xm, x1, ym, y1], axis=1),
    ], axis=1)
    return kids.reshape(-1, 4)


def _assess(f, panels, coarse, order, batch):
    """Refined value and error for panels whose coarse estimate is known."""
    values = []
    errors = []
    kids_all = []
    for start in range(0, len(panels), batch):
        chunk = panels[start:start + batch]
        kids = _split(chunk)
        kq = _panel_rule(f, kids, order)
        ncomp = kq.shape[0]
        kq4 = kq.reshape(ncomp, len(chunk), 4)
        fine = kq4.sum(axis=2)
        values.append(fine)
        errors.append(np.abs(fine - coarse[:, start:start + batch]))
        kids_all.append(kq)
    return (np.concatenate(values, axis=1), np.concatenate(errors, axis=1),
            np.concatenate(kids_all, axis=1))


def integrate_2d(
    f: Callable,
    box: tuple,
    *,
    rel_tol: float = 1e-10,
    abs_tol: float = 0.0,
    order: int = 8,
    initial: tuple = (8, 8),
    max_evals: int = 50_000_000,
    batch: int = 4096,
) -> CubatureResult:
    """Integrate ``f(s, w)`` over ``box = (x0, x1, y0, y1)``.

    Stops once, for every component k, the summed error estimate is below
    ``rel_tol * |value_k| + abs_tol``. Raises QuadratureError (carrying the
    best estimate) when ``max_evals`` integrand evaluations are exhausted.
    """
    x0, x1, y0, y1 = map(float, box)
    nx, ny = initial
    xe = np.linspace(x0, x1, nx + 1)
    ye = np.linspace(y0, y1, ny + 1)
    panels = np.array(
        [(xe[i], xe[i + 1], ye[j], ye[j + 1]) for i in range(nx) for j in range(ny)]
    )
    per_panel = order * order
    evals = 0
    coarse = np.concatenate(
        [_panel_rule(f, panels[s:s + batch], order) for s in range(0, len(panels), batch)],
        axis=1,
    )
    evals += len(panels) * per_panel
    value, error, kids_q = _assess(f, panels, coarse, order, batch)
    evals += 4 * len(panels) * per_panel

    # converged panels are folded into these running sums
    done_value = np.zeros(value.shape[0])
    done_error = np.zeros(value.shape[0])
    while True:
        total = done_value + value.sum(axis=1)
        total_err = done_error + error.sum(axis=1)
        tol = rel_tol * np.abs(total) + abs_tol
        if np.all(total_err <= tol):
            return CubatureResult(total, total_err, evals, len(panels))
        if evals >= max_evals:
            raise QuadratureError(
                f"cubature did not converge within {max_evals} evaluations "
                f"(error {total_err.max():.3e} > tolerance {tol.min():.3e})",
                best=total, error=total_err, evaluations=evals,
            )
        safe_tol = np.where(tol > 0, tol, np.finfo(float).tiny)
        score = (error / safe_tol[:, None]).max(axis=0)
        order_idx = np.argsort(-score, kind="stable")
        budget = 0.25  # retained normalized error after splitting
        cum = np.cumsum(score[order_idx][::-1])[::-1]
        # split the worst panels until what is left sums to <= budget
        n_split = int(np.searchsorted(-cum, -budget, side="left"))
        n_split = max(n_split, 1)
        split_idx = np.sort(order_idx[:n_split])
        keep_idx = np.sort(order_idx[n_split:])
        # panels with negligible error are retired permanently
        retire = keep_idx[score[keep_idx] < 1e-3 / max(len(score), 1)]
        keep_idx = np.setdiff1d(keep_idx, retire, assume_unique=True)
        done_value += value[:, retire].sum(axis=1)
        done_error += error[:, retire].sum(axis=1)

        children = _split(panels[split_idx])
        ncomp = value.shape[0]
        child_coarse = kids_q.reshape(ncomp, len(panels), 4)[:, split_idx, :].reshape(ncomp, -1)
        c_value, c_error, c_kids = _assess(f, children, child_coarse, order, batch)
        evals += 4 * len(children) * per_panel

        kq3 = kids_q.reshape(ncomp, len(panels), 4)
        panels = np.concatenate([panels[keep_idx], children])
        value = np.concatenate([value[:, keep_idx], c_value], axis=1)
        error = np.concatenate([error[:, keep_idx], c_error], axis=1)
        kids_q = np.concatenate(
            [kq3[:, keep_idx, :].reshape(ncomp, -1), c_kids], axis=1
        )
