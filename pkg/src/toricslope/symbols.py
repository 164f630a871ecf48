"""Exact combinatorics of the lowest-order volume form.

Brackets [ij] = p_i r_j - p_j r_i, the four-index symbol (ijkl), the squared
parallelogram areas D3 and their four-point combination D4, and enumeration
of the index selections that weight each face integral.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import NamedTuple, Sequence


class ExponentPair(NamedTuple):
    p: int
    r: int


def bracket(a, b) -> int:
    """[ab] = p_a r_b - p_b r_a."""
    return a[0] * b[1] - b[0] * a[1]


def symbol_ijkl(i, j, k, l) -> int:
    """(ijkl) in factored form (p_i r_k - p_k r_i)(p_i - p_j)(r_k - r_l)."""
    return bracket(i, k) * (i[0] - j[0]) * (k[1] - l[1])


def symbol_ijkl_expanded(i, j, k, l) -> int:
    """(ijkl) as it falls out of the wedge product, before factoring."""
    pi, ri = i
    pj, rj = j
    pk, rk = k
    rl = l[1]
    return (pi * pi - pi * pj) * (rk * rk - rk * rl) - (pi * ri - pj * ri) * (pk * rk - pk * rl)


def d3(i, j, k) -> int:
    """([ij] - [ik] + [jk])^2: squared doubled area of the triangle ijk."""
    return (bracket(i, j) - bracket(i, k) + bracket(j, k)) ** 2


def d4(i, j, k, l) -> Fraction:
    """Cyclic D3 sum, halved when one index is repeated.

    With a single repeat this reduces to D3 of the three distinct points.
    """
    total = d3(i, j, k) + d3(j, k, l) + d3(k, l, i) + d3(l, i, j)
    distinct = len({tuple(i), tuple(j), tuple(k), tuple(l)})
    if distinct == 4:
        return Fraction(total)
    if distinct == 3:
        return Fraction(total, 2)
    raise ValueError("d4 needs at least three distinct points")


@dataclass(frozen=True)
class IndexSelection:
    """Unordered 4-multiset of face-member indices and its data.

    ``indices`` is sorted; ``sum_p``/``sum_r`` are the exponent sums P, R.
    """

    indices: tuple
    d4: Fraction
    sum_p: int
    sum_r: int

    @property
    def repeated(self) -> bool:
        return len(set(self.indices)) == 3


def raw_selection_count(m: int) -> int:
    """C(m,4) all-distinct plus 3*C(m,3) one-repeat candidates."""
    return comb(m, 4) + 3 * comb(m, 3)


def enumerate_selections(pairs: Sequence) -> list:
    """All 4-multisets with >= 3 distinct members and nonzero D4.

    Patterns {i,i,j,j} are never produced: their symbols cancel pairwise.
    Indices refer to positions in ``pairs``.
    """
    pairs = [ExponentPair(int(p), int(r)) for p, r in pairs]
    if len(set(pairs)) != len(pairs):
        raise ValueError("face member pairs must be distinct")
    out = []
    n = len(pairs)
    multisets = list(combinations(range(n), 4))
    for tri in combinations(range(n), 3):
        for rep in tri:
            multisets.append(tuple(sorted(tri + (rep,))))
    for ms in sorted(multisets):
        pts = [pairs[k] for k in ms]
        value = d4(*pts)
        if value == 0:
            continue
        out.append(IndexSelection(
            ms, value, sum(pt.p for pt in pts), sum(pt.r for pt in pts)
        ))
    return out
