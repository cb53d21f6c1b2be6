"""Deterministic input generators used by the CLI and the test suite."""

from __future__ import annotations

import numpy as np

from .errors import InputError
from .geometry import is_simplex, squared_distances
from .simplex import regular_simplex

KINDS = ("regular", "random", "perturbed")

_MIN_GAP = 1e-3
_MAX_TRIES = 1000


def _min_distance(points: np.ndarray) -> float:
    n = points.shape[0]
    if n < 2:
        return np.inf
    d2 = squared_distances(points)
    return float(np.sqrt(d2[~np.eye(n, dtype=bool)].min()))


def generate_points(kind: str, n: int, seed: int = 0, noise: float = 0.01) -> np.ndarray:
    """Generate a simplex input of the requested kind, deterministic per seed.

    regular: regular simplex with unit side.
    random: n points drawn uniformly in [-1, 1]^(n-1), resampled until they
        are affinely independent with pairwise distances >= 1e-3.
    perturbed: unit regular simplex with uniform coordinate noise in
        [-noise, noise], resampled until affinely independent.
    """
    if kind not in KINDS:
        raise InputError(f"unknown input kind {kind!r}, expected one of {KINDS}")
    if not isinstance(n, int) or n < 1:
        raise InputError(f"point count must be an integer >= 1, got {n!r}")
    if kind == "regular":
        return regular_simplex(n, 1.0)
    rng = np.random.default_rng(seed)
    for _ in range(_MAX_TRIES):
        if kind == "random":
            pts = rng.uniform(-1.0, 1.0, (n, n - 1))
            if not (is_simplex(pts) and _min_distance(pts) >= _MIN_GAP):
                continue
        else:
            pts = regular_simplex(n, 1.0) + rng.uniform(-noise, noise, (n, max(n - 1, 0)))
            if not is_simplex(pts):
                continue
        return pts
    raise InputError(f"failed to generate a {kind} simplex with n={n} after {_MAX_TRIES} tries")
