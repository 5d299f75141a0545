"""Polygonal curves, curve sets, and the elementary geometry shared by all modules.

A polygonal curve is stored as its ordered vertex array of shape ``(m, d)``;
the curve itself is the piecewise-linear interpolation of consecutive
vertices. Curves are immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .exceptions import (
    DimensionMismatch,
    EmptyCurve,
    EmptySet,
    NonFiniteCoordinate,
    ValidationError,
)

__all__ = [
    "Curve",
    "CurveSet",
    "validate_curve",
    "as_curve",
    "as_curve_set",
    "alpha",
    "segment_pair_distance_sq",
]


def _as_vertex_array(vertices) -> np.ndarray:
    try:
        arr = np.asarray(vertices, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        # ragged vertex lists fail the array conversion
        raise DimensionMismatch(f"invalid vertex data: {exc}") from None
    if arr.ndim == 1:
        # a sequence of scalars is a 1-dimensional curve
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise DimensionMismatch(
            f"vertex data must be a (m, d) array, got shape {arr.shape}"
        )
    if arr.shape[0] == 0:
        raise EmptyCurve("a curve needs at least one vertex")
    if arr.shape[1] == 0:
        raise DimensionMismatch("vertices need at least one coordinate")
    if not np.isfinite(arr).all():
        raise NonFiniteCoordinate("curve coordinates must be finite")
    return arr


class Curve:
    """An immutable polygonal curve given by its vertices.

    Parameters
    ----------
    vertices : array_like
        Shape ``(m, d)`` (or a flat sequence for ``d = 1``). Consecutive
        duplicate vertices and collinear runs are permitted; the distance
        machinery handles zero-length edges.
    """

    __slots__ = ("_vertices",)

    def __init__(self, vertices):
        arr = _as_vertex_array(vertices)
        if isinstance(vertices, np.ndarray) and arr is vertices:
            arr = arr.copy()
        arr.setflags(write=False)
        self._vertices = arr

    @property
    def vertices(self) -> np.ndarray:
        """Read-only ``(m, d)`` vertex array."""
        return self._vertices

    @property
    def complexity(self) -> int:
        """Number of vertices ``m``."""
        return self._vertices.shape[0]

    @property
    def dim(self) -> int:
        """Ambient dimension ``d``."""
        return self._vertices.shape[1]

    def __len__(self) -> int:
        return self._vertices.shape[0]

    def __getitem__(self, i) -> np.ndarray:
        return self._vertices[i]

    def translated(self, shift) -> "Curve":
        """The curve with ``shift`` added to every vertex."""
        shift = np.asarray(shift, dtype=np.float64)
        if shift.shape != (self.dim,):
            raise DimensionMismatch(
                f"shift has dimension {shift.shape}, curve has d={self.dim}"
            )
        return Curve(self._vertices + shift)

    def __repr__(self) -> str:
        return f"Curve(m={self.complexity}, d={self.dim})"


def validate_curve(vertices) -> Curve:
    """Validate vertex data and return a :class:`Curve`.

    Rejects empty input, ragged or non-2d data, and non-finite coordinates;
    everything else (duplicate consecutive vertices, collinear triples,
    single-vertex curves) is accepted.
    """
    return Curve(vertices)


def as_curve(obj) -> Curve:
    """Coerce a :class:`Curve` or array-like into a :class:`Curve`."""
    if isinstance(obj, Curve):
        return obj
    return Curve(obj)


class CurveSet:
    """A non-empty, immutable collection of curves of one ambient dimension.

    Parameters
    ----------
    curves : iterable of Curve or array_like
    labels : sequence of str, optional
        One name per curve (for example source filenames).
    """

    __slots__ = ("_curves", "_labels")

    def __init__(self, curves: Iterable, labels: Sequence[str] | None = None):
        curves = tuple(as_curve(c) for c in curves)
        if not curves:
            raise EmptySet("a curve set needs at least one curve")
        d = curves[0].dim
        for k, c in enumerate(curves):
            if c.dim != d:
                raise DimensionMismatch(
                    f"curve {k} has d={c.dim}, expected d={d}"
                )
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != len(curves):
                raise ValidationError(
                    f"{len(labels)} labels for {len(curves)} curves"
                )
        self._curves = curves
        self._labels = labels

    @property
    def curves(self) -> tuple:
        return self._curves

    @property
    def labels(self) -> tuple | None:
        return self._labels

    @property
    def dim(self) -> int:
        return self._curves[0].dim

    def label_of(self, i: int) -> str:
        if self._labels is not None:
            return self._labels[i]
        return str(i)

    def __len__(self) -> int:
        return len(self._curves)

    def __getitem__(self, i) -> Curve:
        return self._curves[i]

    def __iter__(self):
        return iter(self._curves)

    def __repr__(self) -> str:
        return f"CurveSet(n={len(self)}, d={self.dim})"


def as_curve_set(obj) -> CurveSet:
    """Coerce a :class:`CurveSet`, or an iterable of curves/arrays, into a set."""
    if isinstance(obj, CurveSet):
        return obj
    if isinstance(obj, Curve):
        return CurveSet([obj])
    return CurveSet(obj)


def alpha(curve: Curve) -> float:
    """Longest edge of the curve: max distance of two consecutive vertices.

    Returns 0 for single-vertex curves. This quantity governs the additive
    term of the projection error bounds (:func:`frechetrp.embedding.distortion_bounds`).
    """
    v = as_curve(curve).vertices
    if v.shape[0] < 2:
        return 0.0
    return float(np.sqrt(((v[1:] - v[:-1]) ** 2).sum(axis=1).max()))


def alpha_pair(a: Curve, b: Curve) -> float:
    """``max(alpha(a), alpha(b))`` for a pair of curves."""
    return max(alpha(a), alpha(b))


def segment_pair_distance_sq(p1, p2, q1, q2, lam_p: float, lam_q: float) -> float:
    """Squared distance of two interpolated segment points from vertex distances only.

    With ``p = (1-lam_p) p1 + lam_p p2`` and ``q = (1-lam_q) q1 + lam_q q2``,
    ``||p - q||^2`` equals a fixed combination of the six pairwise squared
    vertex distances:

    ``- (lam_p - lam_p^2) ||p1-p2||^2 - (lam_q - lam_q^2) ||q1-q2||^2
    + (1 - lam_p - lam_q + lam_p lam_q) ||p1-q1||^2
    + (lam_q - lam_p lam_q) ||p1-q2||^2 + (lam_p - lam_p lam_q) ||p2-q1||^2
    + lam_p lam_q ||p2-q2||^2``

    This identity is what lets per-point distortion guarantees for the
    vertices carry over to every interpolated point of an embedded curve.
    """
    pts = [np.asarray(x, dtype=np.float64).reshape(-1) for x in (p1, p2, q1, q2)]
    d = pts[0].shape[0]
    for k, x in enumerate(pts[1:], start=2):
        if x.shape[0] != d:
            raise DimensionMismatch(f"point {k} has dimension {x.shape[0]}, expected {d}")
    if not (0.0 <= lam_p <= 1.0) or not (0.0 <= lam_q <= 1.0):
        raise ValidationError("interpolation parameters must lie in [0, 1]")
    a, b, c, e = pts

    def sq(u, v):
        w = u - v
        return float(w @ w)

    lp, lq = float(lam_p), float(lam_q)
    return (
        -(lp - lp * lp) * sq(a, b)
        - (lq - lq * lq) * sq(c, e)
        + (1.0 - lp - lq + lp * lq) * sq(a, c)
        + (lq - lp * lq) * sq(a, e)
        + (lp - lp * lq) * sq(b, c)
        + lp * lq * sq(b, e)
    )
