"""Gaussian random projection of curve vertices, distortion bounds, and the PCA baseline.

A curve is embedded by applying one linear map to every vertex and
re-connecting the images in the given order. For a Gaussian map with entry
variance ``1/d'`` the pairwise vertex distances concentrate within a
``(1 +- eps)`` factor, and the continuous Fréchet distance of the embedded
curves then satisfies

``sqrt((1-eps)^2 dF^2 - 2 eps a^2)  <=  dF'  <=  sqrt((1+eps)^2 dF^2 + 2 eps a^2)``

where ``a`` is the longest edge among the two curves. The additive term is
the price of interpolating between vertices; it cannot be removed.

``GaussianEmbedding`` and ``PCAEmbedding`` wrap the functional core in
scikit-learn transformers so curve pipelines compose with the wider
ecosystem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .curves import Curve, CurveSet, alpha, as_curve, as_curve_set
from .exceptions import (
    DimensionMismatch,
    InsufficientData,
    InvalidEpsilon,
    ValidationError,
)
from .frechet import DistanceQuery, distance_matrix

__all__ = [
    "target_dimension",
    "ProjectionMatrix",
    "gaussian_projection",
    "pca_projection",
    "embed_curve",
    "embed_curveset",
    "distortion_bounds",
    "DistortionRecord",
    "measure_distortion",
    "GaussianEmbedding",
    "PCAEmbedding",
]


def target_dimension(n: int, m: int, epsilon: float, constant: float = 2.0) -> int:
    """Embedding dimension ``ceil(constant * eps^-2 * ln(n m))``.

    ``n`` is the number of curves and ``m`` their complexity, so ``n * m``
    counts the vertices the map must treat uniformly. The default constant 2
    is the empirical choice; the conservative proof constants are larger.
    """
    if not (0.0 < epsilon < 1.0):
        raise InvalidEpsilon(f"epsilon must be in (0, 1), got {epsilon}")
    if n < 1 or m < 1 or n * m < 2:
        raise ValidationError("need at least two vertices in total")
    return int(math.ceil(constant * math.log(n * m) / (epsilon * epsilon)))


@dataclass(frozen=True)
class ProjectionMatrix:
    """A linear vertex map from ``source_dim`` to ``target_dim`` dimensions.

    ``kind`` is ``"gaussian"`` (entries i.i.d. N(0, 1/target_dim), seeded) or
    ``"pca"`` (orthonormal principal directions with a centering vector).
    """

    matrix: np.ndarray
    kind: str
    seed: int | None = None
    center: np.ndarray | None = None

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
            raise ValidationError(f"projection matrix must be 2d, got shape {m.shape}")
        if not np.isfinite(m).all():
            raise ValidationError("projection matrix entries must be finite")
        if self.kind not in ("gaussian", "pca"):
            raise ValidationError(f"unknown projection kind {self.kind!r}")
        if m is self.matrix:
            m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        if self.center is not None:
            c = np.asarray(self.center, dtype=np.float64).copy()
            if c.shape != (m.shape[1],):
                raise DimensionMismatch("center must match the source dimension")
            c.setflags(write=False)
            object.__setattr__(self, "center", c)

    @property
    def source_dim(self) -> int:
        return self.matrix.shape[1]

    @property
    def target_dim(self) -> int:
        return self.matrix.shape[0]


def gaussian_projection(source_dim: int, target_dim: int, seed: int = 0) -> ProjectionMatrix:
    """Seeded Gaussian projection with entries N(0, 1/target_dim).

    Entries are drawn in row-major order from a PCG64 stream, so the matrix
    is fully determined by the seed.
    """
    if source_dim < 1 or target_dim < 1:
        raise ValidationError("dimensions must be >= 1")
    rng = np.random.default_rng(seed)
    entries = rng.standard_normal((target_dim, source_dim)) / math.sqrt(target_dim)
    return ProjectionMatrix(matrix=entries, kind="gaussian", seed=int(seed))


def pca_projection(curves, target_dim: int) -> ProjectionMatrix:
    """Top principal directions of the mean-centered vertices of all curves.

    The rows are orthonormal; the global vertex mean is stored as the
    centering vector and subtracted before projecting.
    """
    T = as_curve_set(curves)
    X = np.vstack([c.vertices for c in T])
    if target_dim < 1:
        raise ValidationError("target_dim must be >= 1")
    if X.shape[0] < target_dim:
        raise InsufficientData(
            f"{X.shape[0]} vertices cannot support {target_dim} principal directions"
        )
    if target_dim > X.shape[1]:
        raise ValidationError("target_dim cannot exceed the ambient dimension")
    mean = X.mean(axis=0)
    _, _, vt = np.linalg.svd(X - mean, full_matrices=False)
    return ProjectionMatrix(matrix=vt[:target_dim].copy(), kind="pca", center=mean)


def embed_curve(curve, projection: ProjectionMatrix) -> Curve:
    """Apply the map to every vertex, preserving vertex count and order."""
    c = as_curve(curve)
    if c.dim != projection.source_dim:
        raise DimensionMismatch(
            f"curve has d={c.dim}, projection expects d={projection.source_dim}"
        )
    v = c.vertices
    if projection.center is not None:
        v = v - projection.center
    return Curve(v @ projection.matrix.T)


def embed_curveset(curves, projection: ProjectionMatrix) -> CurveSet:
    """Embed every curve of a set with the same map."""
    T = as_curve_set(curves)
    return CurveSet([embed_curve(c, projection) for c in T], labels=T.labels)


def distortion_bounds(d_f: float, epsilon: float, alpha_pair: float) -> tuple:
    """Fréchet-distance bounds after a ``(1 +- eps)`` vertex embedding.

    Returns ``(lower, upper)`` with
    ``upper = sqrt((1+eps)^2 dF^2 + 2 eps a^2)`` and the lower bound's
    radicand clamped at zero (it can go negative once the additive term
    dominates).
    """
    if d_f < 0.0 or alpha_pair < 0.0:
        raise ValidationError("distance and edge length must be >= 0")
    add = 2.0 * epsilon * alpha_pair * alpha_pair
    upper = math.sqrt((1.0 + epsilon) ** 2 * d_f * d_f + add)
    lower_sq = (1.0 - epsilon) ** 2 * d_f * d_f - add
    lower = math.sqrt(lower_sq) if lower_sq > 0.0 else 0.0
    return lower, upper


@dataclass(frozen=True)
class DistortionRecord:
    """Observed distortion of one curve pair under one embedding."""

    original: float
    embedded: float
    lower_bound: float
    upper_bound: float
    relative_error: float
    alpha_pair: float

    @property
    def within_bounds(self) -> bool:
        return self.lower_bound <= self.embedded <= self.upper_bound


def measure_distortion(curves, projection: ProjectionMatrix, epsilon: float,
                       query: DistanceQuery | None = None) -> list:
    """Distortion records for every unordered curve pair.

    For each pair the original and embedded Fréchet distances are computed,
    together with the bounds from :func:`distortion_bounds` at the pair's
    longest edge. The relative error is ``|embedded - original| / original``
    (or the embedded distance itself when the original is zero). Records are
    ordered ``(0,1), (0,2), ..., (n-2,n-1)``.
    """
    T = as_curve_set(curves)
    if T.dim != projection.source_dim:
        raise DimensionMismatch(
            f"curves have d={T.dim}, projection expects d={projection.source_dim}"
        )
    q = query or DistanceQuery()
    emb = embed_curveset(T, projection)
    d_orig = distance_matrix(T, q)
    d_emb = distance_matrix(emb, q)
    alphas = [alpha(c) for c in T]
    records = []
    n = len(T)
    for i in range(n):
        for j in range(i + 1, n):
            orig = float(d_orig[i, j])
            new = float(d_emb[i, j])
            a = max(alphas[i], alphas[j])
            lower, upper = distortion_bounds(orig, epsilon, a)
            rel = abs(new - orig) / orig if orig > 0.0 else new
            records.append(DistortionRecord(
                original=orig, embedded=new, lower_bound=lower,
                upper_bound=upper, relative_error=rel, alpha_pair=a,
            ))
    return records


class _BaseEmbedding(BaseEstimator, TransformerMixin):
    """Shared fit/transform plumbing of the embedding transformers."""

    def _resolve_dim(self, T: CurveSet) -> int:
        if self.target_dim is not None:
            return int(self.target_dim)
        if self.epsilon is None:
            raise ValidationError("either target_dim or epsilon is required")
        m = max(len(c) for c in T)
        return target_dimension(len(T), m, self.epsilon, self.constant)

    def transform(self, X) -> CurveSet:
        if not hasattr(self, "projection_"):
            raise NotFittedError("call fit before transform")
        return embed_curveset(as_curve_set(X), self.projection_)

    def fit_transform(self, X, y=None):
        return self.fit(X, y).transform(X)


class GaussianEmbedding(_BaseEmbedding):
    """Seeded Gaussian vertex projection as a transformer.

    The target dimension is either given directly or derived from the fitted
    data as ``target_dimension(n, max complexity, epsilon)``.

    Attributes (after fit): ``projection_``, ``target_dim_``.
    """

    def __init__(self, epsilon: float | None = 0.5, target_dim: int | None = None,
                 seed: int = 0, constant: float = 2.0):
        self.epsilon = epsilon
        self.target_dim = target_dim
        self.seed = seed
        self.constant = constant

    def fit(self, X, y=None):
        T = as_curve_set(X)
        self.target_dim_ = self._resolve_dim(T)
        self.projection_ = gaussian_projection(T.dim, self.target_dim_, self.seed)
        return self


class PCAEmbedding(_BaseEmbedding):
    """PCA baseline: project vertices onto the top principal directions.

    Attributes (after fit): ``projection_``, ``target_dim_``.
    """

    def __init__(self, epsilon: float | None = 0.5, target_dim: int | None = None,
                 constant: float = 2.0):
        self.epsilon = epsilon
        self.target_dim = target_dim
        self.constant = constant

    def fit(self, X, y=None):
        T = as_curve_set(X)
        self.target_dim_ = min(self._resolve_dim(T), T.dim)
        self.projection_ = pca_projection(T, self.target_dim_)
        return self
