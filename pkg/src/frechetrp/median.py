"""Discrete 1-median of a curve set under the Fréchet distance.

The exhaustive search costs O(n^2) distance computations. The sampling
scheme draws a small candidate set S and an independent witness set W and
returns the candidate with the lowest witness cost; with
``l_S = ceil(2 ln(2/delta) / eps)`` candidates and
``l_W = ceil(64 eps^-2 ln(2 l_S / delta))`` witnesses this is a
(2+eps)-approximation with probability 1-delta on any input. When the input
has at least ``(1-eps) gamma n`` far outliers (the beyond-worst-case regime),
``l_S = ceil(ln(2/delta) / (1/2 - gamma))`` candidates suffice for a
(1+eps)-approximation. Either way the work is ``l_S * l_W + n`` distance
computations, sublinear in the n^2 of the exhaustive search.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import math

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin

from .curves import as_curve, as_curve_set
from .exceptions import EmptySet, NoEligiblePair, ValidationError
from .frechet import DistanceQuery, distance_matrix, frechet_distance

__all__ = [
    "MedianParams",
    "MedianResult",
    "median_cost",
    "exhaustive_median",
    "sample_sizes",
    "sampled_median",
    "witness_tail_check",
    "FrechetMedian",
]

WORST_CASE = "worst_case"
BEYOND_WORST_CASE = "beyond_worst_case"


@dataclass(frozen=True)
class MedianParams:
    """Sampling parameters for :func:`sampled_median`.

    ``gamma`` only matters in beyond-worst-case mode; it should be set a
    little below 1/2 rather than estimated from data (default 3/8).
    """

    epsilon: float
    delta: float
    mode: str = WORST_CASE
    gamma: float = 0.375
    seed: int = 0
    with_replacement: bool = True

    def __post_init__(self):
        # epsilon = 1/2 is accepted: the guarantees degrade continuously and
        # the standard parametrization uses exactly that value
        if not (0.0 < self.epsilon <= 0.5):
            raise ValidationError("epsilon must be in (0, 1/2]")
        if not (0.0 < self.delta < 0.5):
            raise ValidationError("delta must be in (0, 1/2)")
        if self.mode not in (WORST_CASE, BEYOND_WORST_CASE):
            raise ValidationError(f"unknown mode {self.mode!r}")
        if not (0.0 < self.gamma < 0.5):
            raise ValidationError("gamma must be in (0, 1/2)")


@dataclass(frozen=True)
class MedianResult:
    """Chosen center with its full cost and the sampling bookkeeping."""

    center_index: int
    cost: float
    witness_cost: float
    l_s: int
    l_w: int
    candidate_indices: tuple = field(default=())
    witness_indices: tuple = field(default=())


def median_cost(curves, center, query: DistanceQuery | None = None) -> float:
    """Sum of Fréchet distances from ``center`` to every curve of the set."""
    T = as_curve_set(curves)
    c = as_curve(center)
    q = query or DistanceQuery()
    if q.workers > 1 and len(T) > 1:
        with ThreadPoolExecutor(max_workers=q.workers) as pool:
            dists = list(pool.map(lambda t: frechet_distance(c, t, q), T))
    else:
        dists = [frechet_distance(c, t, q) for t in T]
    # exactly-rounded sum: order- and worker-count-independent, and
    # bit-consistent with the row sums of exhaustive_median
    return float(math.fsum(dists))


def exhaustive_median(curves, query: DistanceQuery | None = None) -> MedianResult:
    """Optimal discrete 1-median by trying every input curve as the center.

    Ties are broken towards the smallest index.
    """
    T = as_curve_set(curves)
    q = query or DistanceQuery()
    dmat = distance_matrix(T, q)
    costs = np.array([math.fsum(row) for row in dmat])
    center = int(np.argmin(costs))
    n = len(T)
    idx = tuple(range(n))
    return MedianResult(
        center_index=center,
        cost=float(costs[center]),
        witness_cost=float(costs[center]),
        l_s=n,
        l_w=n,
        candidate_indices=idx,
        witness_indices=idx,
    )


def sample_sizes(n: int, params: MedianParams) -> tuple:
    """Candidate and witness sample sizes ``(l_S, l_W)``, both capped at n.

    The witness size uses the capped candidate count in its logarithm, which
    is the union bound actually needed.
    """
    if n < 1:
        raise EmptySet("need at least one curve")
    eps, delta = params.epsilon, params.delta
    if params.mode == WORST_CASE:
        l_s = math.ceil(2.0 * math.log(2.0 / delta) / eps)
    else:
        l_s = math.ceil(math.log(2.0 / delta) / (0.5 - params.gamma))
    l_s = min(int(l_s), n)
    l_w = math.ceil(64.0 / (eps * eps) * math.log(2.0 * l_s / delta))
    l_w = min(int(l_w), n)
    return l_s, l_w


def _draw(rng, n, size, with_replacement):
    if with_replacement:
        return rng.integers(0, n, size=size)
    return rng.choice(n, size=size, replace=False)


def sampled_median(curves, params: MedianParams,
                   query: DistanceQuery | None = None) -> MedianResult:
    """Candidate/witness sampling approximation of the discrete 1-median.

    Draws ``l_S`` candidate and ``l_W`` witness indices uniformly (with
    replacement by default; candidates first, then witnesses, from one
    seeded stream) and returns the candidate minimizing the witness cost,
    ties broken towards the smallest index into the input. ``cost`` is the
    full cost of the winner over the whole set, recomputed for evaluation.
    """
    T = as_curve_set(curves)
    q = query or DistanceQuery()
    n = len(T)
    l_s, l_w = sample_sizes(n, params)
    rng = np.random.default_rng(params.seed)
    cand = _draw(rng, n, l_s, params.with_replacement)
    wit = _draw(rng, n, l_w, params.with_replacement)

    def witness_cost(c_idx):
        return math.fsum(frechet_distance(T[c_idx], T[w], q) for w in wit)

    if q.workers > 1 and l_s > 1:
        with ThreadPoolExecutor(max_workers=q.workers) as pool:
            wcosts = list(pool.map(witness_cost, [int(c) for c in cand]))
    else:
        wcosts = [witness_cost(int(c)) for c in cand]

    best_cost, best_idx = min(zip(wcosts, (int(c) for c in cand)))
    full = median_cost(T, T[best_idx], q)
    return MedianResult(
        center_index=best_idx,
        cost=full,
        witness_cost=float(best_cost),
        l_s=l_s,
        l_w=l_w,
        candidate_indices=tuple(int(c) for c in cand),
        witness_indices=tuple(int(w) for w in wit),
    )


def witness_tail_check(curves, epsilon: float, witness_size: int, trials: int,
                       seed: int = 0, query: DistanceQuery | None = None,
                       pair: tuple | None = None,
                       with_replacement: bool = True) -> float:
    """Empirical failure rate of witness sampling on a cost-gapped pair.

    Picks an ordered pair (a, b) whose full costs satisfy
    ``cost(a) > (1 + epsilon) cost(b)`` (the eligible pair with the tightest
    ratio, or the given ``pair``), then over ``trials`` fresh witness samples
    of ``witness_size`` measures how often a's witness cost is <= b's. The
    returned rate is the quantity bounded by ``exp(-epsilon^2 |W| / 64)``.

    ``with_replacement=False`` caps the witness size at n; at exactly n the
    witnesses are all of the input and the rate is identically zero.
    """
    T = as_curve_set(curves)
    if len(T) < 2:
        raise EmptySet("need at least two curves")
    if witness_size < 1 or trials < 1:
        raise ValidationError("witness_size and trials must be >= 1")
    q = query or DistanceQuery()
    dmat = distance_matrix(T, q)
    costs = np.array([math.fsum(row) for row in dmat])
    n = len(T)
    if pair is not None:
        a, b = pair
        if not costs[a] > (1.0 + epsilon) * costs[b]:
            raise NoEligiblePair(
                f"pair ({a}, {b}) has cost ratio {costs[a] / costs[b]:.4f} <= 1+eps"
            )
    else:
        a = b = -1
        best_ratio = np.inf
        for i in range(n):
            for j in range(n):
                if i == j or costs[j] <= 0.0:
                    continue
                ratio = costs[i] / costs[j]
                if ratio > 1.0 + epsilon and ratio < best_ratio:
                    best_ratio, a, b = ratio, i, j
        if a < 0:
            raise NoEligiblePair("no pair satisfies the cost-gap premise")
    if not with_replacement and witness_size > n:
        raise ValidationError("witness_size cannot exceed n without replacement")
    row_a = dmat[a]
    row_b = dmat[b]
    rng = np.random.default_rng(seed)
    failures = 0
    for _ in range(trials):
        idx = _draw(rng, n, witness_size, with_replacement)
        if row_a[idx].sum() <= row_b[idx].sum():
            failures += 1
    return failures / trials


class FrechetMedian(BaseEstimator, ClusterMixin):
    """Discrete 1-median as a scikit-learn style estimator.

    ``method="sampled"`` runs the candidate/witness scheme,
    ``method="exhaustive"`` the O(n^2) search. After ``fit``:
    ``center_index_``, ``center_``, ``cost_``, ``result_`` and single-cluster
    ``labels_``.
    """

    def __init__(self, method: str = "sampled", epsilon: float = 0.25,
                 delta: float = 0.25, mode: str = WORST_CASE,
                 gamma: float = 0.375, seed: int = 0,
                 with_replacement: bool = True,
                 tolerance: float | None = None, workers: int = 1):
        self.method = method
        self.epsilon = epsilon
        self.delta = delta
        self.mode = mode
        self.gamma = gamma
        self.seed = seed
        self.with_replacement = with_replacement
        self.tolerance = tolerance
        self.workers = workers

    def fit(self, X, y=None):
        T = as_curve_set(X)
        query = DistanceQuery(tolerance=self.tolerance, workers=self.workers)
        if self.method == "exhaustive":
            result = exhaustive_median(T, query)
        elif self.method == "sampled":
            params = MedianParams(
                epsilon=self.epsilon, delta=self.delta, mode=self.mode,
                gamma=self.gamma, seed=self.seed,
                with_replacement=self.with_replacement,
            )
            result = sampled_median(T, params, query)
        else:
            raise ValidationError(f"unknown method {self.method!r}")
        self.result_ = result
        self.center_index_ = result.center_index
        self.center_ = T[result.center_index]
        self.cost_ = result.cost
        self.labels_ = np.zeros(len(T), dtype=int)
        return self
