"""Synthetic instance families: simplex-random curves, the additive-error
pair, bit-string gadget curves, and planted 1-median test sets.

All generators are deterministic given their seed and inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curves import Curve, CurveSet
from .exceptions import DimensionTooSmall, ValidationError

__all__ = [
    "simplex_curves",
    "additive_error_pair",
    "equality_gadget",
    "disjointness_gadget",
    "median_test_set",
    "MedianTestSet",
]


def simplex_curves(n: int, m: int, dim: int, scale: float = 1.0, seed: int = 0) -> CurveSet:
    """Curves whose vertices are uniform on a scaled ``dim+1``-vertex simplex.

    A uniform point of the standard simplex is ``dim + 1`` i.i.d. standard
    exponentials normalized to sum one; dropping the last barycentric
    coordinate lands in the corner simplex of R^dim. Such curves have high
    intrinsic dimension, which makes them hard inputs for any projection.
    """
    if n < 1 or m < 1 or dim < 1:
        raise ValidationError("n, m and dim must be >= 1")
    if not scale > 0.0:
        raise ValidationError("scale must be positive")
    rng = np.random.default_rng(seed)
    e = rng.standard_exponential((n, m, dim + 1))
    bary = e / e.sum(axis=-1, keepdims=True)
    verts = bary[:, :, :dim] * scale
    return CurveSet([Curve(verts[i]) for i in range(n)],
                    labels=[f"{i:04d}" for i in range(n)])


def additive_error_pair(alpha: float, dim: int = 3) -> tuple:
    """The segment/tent pair whose Fréchet distance is sqrt(5) for every alpha.

    ``p`` is the segment from the origin to ``(alpha, 0, ..., 0)``; ``q``
    rises to ``(alpha/2, 2, 1, 0, ..., 0)`` between ``(0, 1, 0, ...)`` and
    ``(alpha, 1, 0, ...)``. Its edges grow with alpha while the Fréchet
    distance stays constant, which is what exposes the additive error of any
    vertex embedding.
    """
    if not alpha > 0.0:
        raise ValidationError("alpha must be positive")
    if dim < 3:
        raise DimensionTooSmall("the pair needs ambient dimension >= 3")
    p = np.zeros((2, dim))
    p[1, 0] = alpha
    q = np.zeros((3, dim))
    q[0, 1] = 1.0
    q[1, 0] = alpha / 2.0
    q[1, 1] = 2.0
    q[1, 2] = 1.0
    q[2, 0] = alpha
    q[2, 1] = 1.0
    return Curve(p), Curve(q)


def _as_bits(bits) -> list:
    if isinstance(bits, str):
        vals = [int(ch) for ch in bits]
    else:
        vals = [int(b) for b in bits]
    if not vals:
        raise ValidationError("bit string must be non-empty")
    if any(v not in (0, 1) for v in vals):
        raise ValidationError("bits must be 0 or 1")
    return vals


def equality_gadget(bits) -> Curve:
    """One-dimensional gadget curve encoding a bit string.

    Bit i (1-based) becomes four vertices on the segment [2i, 2i+2]: a
    straight run for 0 and a zigzag for 1. Equal strings produce identical
    curves; strings differing anywhere have Fréchet distance >= 1.
    """
    vals = _as_bits(bits)
    verts = []
    for i, b in enumerate(vals, start=1):
        x = 2.0 * i
        if b:
            verts.extend([x, x + 2.0, x, x + 2.0])
        else:
            verts.extend([x, x + 2.0 / 3.0, x + 4.0 / 3.0, x + 2.0])
    return Curve(np.asarray(verts).reshape(-1, 1))


def disjointness_gadget(bits, side: str) -> Curve:
    """Two-dimensional gadget curve for set disjointness.

    Bit i (1-based) spans x in [4i, 4i+4]: a straight run (with duplicated
    endpoints) for 0, a notch for 1 -- upward for ``side="alice"``, downward
    for ``side="bob"``. A common 1-bit forces distance >= 2; disjoint
    supports keep the distance below sqrt(2).
    """
    if side not in ("alice", "bob"):
        raise ValidationError(f"side must be 'alice' or 'bob', got {side!r}")
    y = 1.0 if side == "alice" else -1.0
    vals = _as_bits(bits)
    verts = []
    for i, b in enumerate(vals, start=1):
        x = 4.0 * i
        if b:
            verts.extend([(x, 0.0), (x, y), (x + 4.0, y), (x + 4.0, 0.0)])
        else:
            verts.extend([(x, 0.0), (x, 0.0), (x + 4.0, 0.0), (x + 4.0, 0.0)])
    return Curve(np.asarray(verts))


@dataclass(frozen=True)
class MedianTestSet:
    """A curve set with a planted optimal 1-median and known outlier structure."""

    curves: CurveSet
    center_index: int
    outlier_indices: tuple
    r1: float
    r2: float


def median_test_set(n: int, gamma: float, epsilon: float, dim: int,
                    seed: int = 0, complexity: int = 4) -> MedianTestSet:
    """Translates of one base curve with far/medium/close structure.

    All curves are translates, so every pairwise Fréchet distance equals the
    norm of the translation difference and the planted structure is exact.
    ``ceil((1-epsilon) * gamma * n)`` curves are placed beyond the outlier
    radius ``r1 = cost/( gamma n)``, a minority at medium range, the rest
    within ``r2 = 2 epsilon cost / n`` of the base curve at index 0.

    Non-center translations come in opposite-direction pairs, which makes
    index 0 a provably optimal center: for any point t and any pair x, y with
    the origin on the segment [x, y], ``|x-t| + |y-t| >= |x| + |y|``.
    """
    if not (0.0 < gamma < 0.5):
        raise ValidationError("gamma must be in (0, 1/2)")
    if not (0.0 < epsilon < 1.0):
        raise ValidationError("epsilon must be in (0, 1)")
    if n < 3 or dim < 1:
        raise ValidationError("need n >= 3 and dim >= 1")
    n_far = math.ceil((1.0 - epsilon) * gamma * n)
    if n_far < 1:
        raise ValidationError("parameters yield no outliers")
    n_med = max(1, n // 10)
    n_close = n - 1 - n_far - n_med
    if n_close < 0:
        raise ValidationError(f"n={n} too small for {n_far} outliers")

    rng = np.random.default_rng(seed)
    base = rng.standard_normal((complexity, dim))

    # Far norms stay within a (1 + delta) band so that even the nearest
    # outlier clears r1 = cost / (gamma n); medium and close norms are then
    # rescaled into half the remaining budget gamma*n - sum(far norms).
    delta = min(0.25, 0.5 * epsilon / (1.0 - epsilon))
    far = 1.0 + delta * rng.random(n_far)
    budget = gamma * n - far.sum()
    if budget <= 0.0:
        raise ValidationError(
            f"gamma*n = {gamma * n:.3f} cannot absorb {n_far} outliers"
        )
    med = 0.3 + 0.2 * rng.random(n_med)
    close = 0.02 * rng.random(n_close) if n_close else np.zeros(0)
    rest = med.sum() + close.sum()
    if rest > 0.5 * budget:
        shrink = 0.5 * budget / rest
        med = med * shrink
        close = close * shrink

    norms = np.concatenate([far, med, close])
    roles = ["far"] * n_far + ["medium"] * n_med + ["close"] * n_close
    k = len(norms)
    if k % 2:
        # unpaired leftover becomes a duplicate of the base curve
        norms[-1] = 0.0
        roles[-1] = "close"
    dirs = rng.standard_normal(((k + 1) // 2, dim))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    shifts = np.zeros((n, dim))
    for idx in range(k):
        u = dirs[idx // 2]
        sign = 1.0 if idx % 2 == 0 else -1.0
        shifts[idx + 1] = sign * norms[idx] * u

    cost0 = float(norms.sum())
    r1 = cost0 / (gamma * n)
    r2 = 2.0 * epsilon * cost0 / n
    dist_to_center = np.linalg.norm(shifts, axis=1)
    outliers = tuple(int(i) for i in np.flatnonzero(dist_to_center > r1))
    if len(outliers) < n_far:
        raise ValidationError(
            f"internal: only {len(outliers)} of {n_far} planted outliers clear r1"
        )

    labels = [f"{i:04d}-center" if i == 0 else f"{i:04d}-{roles[i - 1]}"
              for i in range(n)]
    curves = CurveSet([Curve(base + shifts[i]) for i in range(n)], labels=labels)
    return MedianTestSet(curves=curves, center_index=0,
                         outlier_indices=outliers, r1=r1, r2=r2)
