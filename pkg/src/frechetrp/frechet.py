"""Continuous Fréchet distance: decision procedure, bisection search, discrete
oracle, and the parallel pairwise distance matrix.

The decision procedure follows the classical free-space formulation: per-cell
boundary intervals are obtained by solving a quadratic along each boundary,
and reachability is propagated monotonically from the bottom-left to the
top-right corner of the diagram. The distance itself is found by bisection
between the endpoint lower bound and the discrete-Fréchet upper bound.

All functions are pure; ``distance_matrix`` parallelizes across curve pairs
with worker threads (the compiled kernels release the GIL) and is bit-exact
for any worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .curves import as_curve, as_curve_set
from .exceptions import DimensionMismatch, ValidationError

__all__ = [
    "DistanceQuery",
    "FreeSpaceDiagram",
    "decide_frechet",
    "free_space_diagram",
    "frechet_distance",
    "discrete_frechet",
    "distance_matrix",
]

# default bisection tolerance: relative to the initial upper bound, floored
_REL_TOLERANCE = 1e-9
_TOL_FLOOR = 1e-12


def default_workers() -> int:
    """Worker count from FRECHET_THREADS, falling back to the machine's cores."""
    env = os.environ.get("FRECHET_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


@dataclass(frozen=True)
class DistanceQuery:
    """Tolerance and parallelism settings for distance computations.

    ``tolerance`` is the absolute bisection tolerance; ``None`` selects
    ``max(1e-9 * upper_bound, 1e-12)`` per pair. ``workers`` is the thread
    count used for pair-level parallelism; results are identical for every
    value.
    """

    tolerance: float | None = None
    workers: int = 1

    def __post_init__(self):
        if self.tolerance is not None and not self.tolerance > 0.0:
            raise ValidationError("tolerance must be positive")
        if self.workers < 1:
            raise ValidationError("workers must be >= 1")


@dataclass(frozen=True)
class FreeSpaceDiagram:
    """Boundary intervals and reachability of one decision run.

    ``vertical_free[i, j]`` is the free interval on the boundary where vertex
    ``i`` of the first curve meets edge ``j`` of the second (the left
    boundary of cell ``(i, j)``); ``horizontal_free[i, j]`` is edge ``i``
    against vertex ``j`` (the bottom boundary of cell ``(i, j)``). The
    ``*_reach`` arrays hold the reachable sub-intervals. Intervals are
    ``(lo, hi)`` pairs with ``lo > hi`` meaning empty.
    """

    epsilon: float
    vertical_free: np.ndarray
    horizontal_free: np.ndarray
    vertical_reach: np.ndarray
    horizontal_reach: np.ndarray
    reachable: bool

    @property
    def cell_grid(self) -> tuple:
        return (max(self.vertical_free.shape[0] - 1, 0),
                max(self.horizontal_free.shape[1] - 1, 0))


def _vertex_pair(a, b):
    a = as_curve(a)
    b = as_curve(b)
    if a.dim != b.dim:
        raise DimensionMismatch(f"curves have dimensions {a.dim} and {b.dim}")
    return np.ascontiguousarray(a.vertices), np.ascontiguousarray(b.vertices)


def _canonical_pair(P, Q):
    """Order the two vertex arrays by a fixed total order.

    Computing on the canonical ordering makes the distance bit-exactly
    symmetric in its arguments.
    """
    if P.shape[0] != Q.shape[0]:
        return (P, Q) if P.shape[0] < Q.shape[0] else (Q, P)
    pa, qa = P.tobytes(), Q.tobytes()
    return (P, Q) if pa <= qa else (Q, P)


def decide_frechet(a, b, epsilon: float) -> bool:
    """True iff the continuous Fréchet distance of the two curves is <= epsilon."""
    if epsilon < 0.0:
        raise ValidationError("epsilon must be >= 0")
    P, Q = _vertex_pair(a, b)
    geo = _kernels.pair_geometry(P, Q)
    return bool(_kernels.decide(*geo, float(epsilon)))


def free_space_diagram(a, b, epsilon: float) -> FreeSpaceDiagram:
    """Run the decision at ``epsilon`` and keep all boundary intervals."""
    if epsilon < 0.0:
        raise ValidationError("epsilon must be >= 0")
    P, Q = _vertex_pair(a, b)
    geo = _kernels.pair_geometry(P, Q)
    M, N = P.shape[0], Q.shape[0]
    vfree = np.empty((M, max(N - 1, 0), 2))
    hfree = np.empty((max(M - 1, 0), N, 2))
    vreach = np.empty_like(vfree)
    hreach = np.empty_like(hfree)
    ok = _kernels.fill_diagram(*geo, float(epsilon), vfree, hfree, vreach, hreach)
    for arr in (vfree, hfree, vreach, hreach):
        arr.setflags(write=False)
    return FreeSpaceDiagram(
        epsilon=float(epsilon),
        vertical_free=vfree,
        horizontal_free=hfree,
        vertical_reach=vreach,
        horizontal_reach=hreach,
        reachable=bool(ok),
    )


def frechet_distance(a, b, query: DistanceQuery | None = None) -> float:
    """Continuous Fréchet distance up to the query's bisection tolerance.

    The search starts from the endpoint-distance lower bound and the
    discrete-Fréchet upper bound (valid because the discrete distance on the
    same vertex sequences upper-bounds the continuous one), then bisects on
    the decision procedure. Single-vertex curves reduce to the maximum
    distance from the point to the other curve and are returned exactly.
    """
    q = query or DistanceQuery()
    P, Q = _vertex_pair(a, b)
    P, Q = _canonical_pair(P, Q)
    tol = -1.0 if q.tolerance is None else float(q.tolerance)
    return float(_kernels.frechet_distance_kernel(P, Q, tol, _REL_TOLERANCE, _TOL_FLOOR))


def discrete_frechet(a, b) -> float:
    """Discrete Fréchet distance: min over monotone couplings of the max vertex distance."""
    P, Q = _vertex_pair(a, b)
    P, Q = _canonical_pair(P, Q)
    sqd = _kernels.pair_geometry(P, Q)[0]
    return float(_kernels.discrete_frechet_from_sqd(sqd))


def _matrix_entry(args):
    curves, i, j, query = args
    return i, j, frechet_distance(curves[i], curves[j], query)


def distance_matrix(curves, query: DistanceQuery | None = None) -> np.ndarray:
    """Symmetric matrix of pairwise continuous Fréchet distances.

    Only the upper triangle is computed (then mirrored) and the diagonal is
    exactly zero. With ``query.workers > 1`` the pairs are distributed over a
    thread pool; every entry is computed by the same per-pair routine, so the
    result is bit-identical for any worker count.
    """
    T = as_curve_set(curves)
    q = query or DistanceQuery()
    n = len(T)
    out = np.zeros((n, n))
    jobs = [(T, i, j, q) for i in range(n) for j in range(i + 1, n)]
    if q.workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=q.workers) as pool:
            results = list(pool.map(_matrix_entry, jobs))
    else:
        results = [_matrix_entry(job) for job in jobs]
    for i, j, dist in results:
        out[i, j] = dist
        out[j, i] = dist
    return out
