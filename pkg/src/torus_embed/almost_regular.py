"""Realization of almost-regular distance matrices in products of regular
simplices, and their embedding into equal-order polygonal tori.

A symmetric matrix with zero diagonal and positive off-diagonal entries
qualifies as almost regular when, writing a_max for its largest entry,

    sum over i < j of (a_max^2 - a_ij^2)  <  a_max^2.

The slack of this inequality is the squared side of a base regular simplex
with one vertex per point. Every pair (i, j) whose entry falls short of
a_max contributes one more simplex factor, of side sqrt(a_max^2 - a_ij^2)
and with one vertex fewer, in which points i and j share a vertex. Squared
distances add over factors, and the pair (s, t) misses exactly its own
factor's contribution, which reproduces a_st^2 on the nose.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import InputError, NotAlmostRegular
from .simplex import embed_regular_simplex, regular_simplex
from .torus import TorusPoint, TorusSpec

# pair factors with side below this fraction of a_max are dropped rather
# than realized as zero-radius polygons
ZERO_SIDE_RTOL = 1e-13


class AlmostRegularCheck(NamedTuple):
    valid: bool
    margin: float


@dataclass(frozen=True)
class PairFactor:
    """One collapsing simplex factor: points i and j share a vertex."""

    i: int
    j: int
    side: float


@dataclass(frozen=True)
class RealizationPlan:
    """Recipe for the product-of-simplices realization."""

    n_points: int
    base_side: float
    pair_factors: tuple[PairFactor, ...]

    @property
    def factor_count(self) -> int:
        return 1 + len(self.pair_factors)


def collapse_index(i: int, j: int, s: int) -> int:
    """Vertex of the (i, j) pair factor used by point s (0-based, i < j).

    Point j is folded onto point i's vertex; points above j slide down one
    slot, so the n points use only n - 1 vertices.
    """
    if s == j:
        return i
    return s if s < j else s - 1


def _checked_entries(entries) -> np.ndarray:
    arr = np.asarray(entries, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise InputError("distance matrix must be square and nonempty")
    if not np.all(np.isfinite(arr)):
        raise InputError("distance matrix contains non-finite entries")
    scale = float(np.abs(arr).max()) or 1.0
    if float(np.abs(arr - arr.T).max()) > 1e-12 * scale:
        raise InputError("distance matrix is not symmetric")
    if float(np.abs(np.diag(arr)).max(initial=0.0)) > 1e-12 * scale:
        raise InputError("distance matrix has a nonzero diagonal")
    n = arr.shape[0]
    off = ~np.eye(n, dtype=bool)
    if n > 1 and float(arr[off].min()) <= 0.0:
        raise InputError("off-diagonal entries must be strictly positive")
    out = 0.5 * (arr + arr.T)
    np.fill_diagonal(out, 0.0)
    return out


def check_almost_regular(entries) -> AlmostRegularCheck:
    """Evaluate the almost-regularity condition.

    margin = a_max^2 - sum_{i<j} (a_max^2 - a_ij^2); valid iff margin > 0.
    """
    a = _checked_entries(entries)
    n = a.shape[0]
    if n == 1:
        return AlmostRegularCheck(False, 0.0)
    iu = np.triu_indices(n, k=1)
    amax = float(a[iu].max())
    margin = amax**2 - float(np.sum(amax**2 - a[iu] ** 2))
    return AlmostRegularCheck(margin > 0.0, margin)


def realization_plan(entries) -> RealizationPlan:
    """Factor sides and collapse structure for an almost-regular matrix."""
    a = _checked_entries(entries)
    n = a.shape[0]
    if n == 1:
        return RealizationPlan(1, 0.0, ())
    valid, margin = check_almost_regular(a)
    if not valid:
        raise NotAlmostRegular(
            f"almost-regularity margin is {margin:.6e}, must be positive"
        )
    amax = float(a[np.triu_indices(n, k=1)].max())
    pair_factors = []
    for i in range(n):
        for j in range(i + 1, n):
            side_sq = max(amax**2 - float(a[i, j]) ** 2, 0.0)
            side = math.sqrt(side_sq)
            if side > ZERO_SIDE_RTOL * amax:
                pair_factors.append(PairFactor(i, j, side))
    return RealizationPlan(n, math.sqrt(margin), tuple(pair_factors))


def realize_almost_regular(entries) -> tuple[np.ndarray, RealizationPlan]:
    """Point realization of an almost-regular matrix.

    Returns affinely independent points whose pairwise distances reproduce
    the matrix, as the coordinate-wise concatenation of one base regular
    simplex and one collapsing simplex per pair factor.
    """
    plan = realization_plan(entries)
    n = plan.n_points
    if n == 1:
        return np.zeros((1, 0)), plan
    blocks = [regular_simplex(n, plan.base_side)]
    for f in plan.pair_factors:
        verts = regular_simplex(n - 1, f.side)
        blocks.append(verts[[collapse_index(f.i, f.j, s) for s in range(n)]])
    return np.hstack(blocks), plan


def embed_almost_regular(entries, m: int) -> tuple[TorusSpec, list[TorusPoint]]:
    """Embed the realization into a torus whose factors all have order m.

    Each simplex factor of the plan goes through its own block of m-gon
    factors; per-point torus coordinates are concatenated along the plan's
    collapse maps, so pairwise distances match the matrix exactly.
    """
    plan = realization_plan(entries)
    n = plan.n_points
    if n == 1:
        spec, points = embed_regular_simplex(1, 1.0, m)
        return spec, points
    spec, base_points = embed_regular_simplex(n, plan.base_side, m)
    factors = list(spec.factors)
    rows = [list(p.indices) for p in base_points]
    for f in plan.pair_factors:
        sub_spec, sub_points = embed_regular_simplex(n - 1, f.side, m)
        factors.extend(sub_spec.factors)
        for s in range(n):
            rows[s].extend(sub_points[collapse_index(f.i, f.j, s)].indices)
    return TorusSpec(tuple(factors)), [TorusPoint(tuple(row)) for row in rows]
