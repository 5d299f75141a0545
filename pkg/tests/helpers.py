"""Independent oracles and small utilities shared by the tests.

The oracles deliberately avoid the library's own code paths: interpolated
distances are evaluated directly, and the discrete Fréchet oracle enumerates
every monotone coupling instead of running a DP.
"""

import numpy as np

from frechetrp import Curve, CurveSet


def direct_interpolated_sqdist(p1, p2, q1, q2, lam_p, lam_q):
    """||((1-lp) p1 + lp p2) - ((1-lq) q1 + lq q2)||^2 evaluated directly."""
    p1, p2, q1, q2 = (np.asarray(x, dtype=float) for x in (p1, p2, q1, q2))
    p = (1.0 - lam_p) * p1 + lam_p * p2
    q = (1.0 - lam_q) * q1 + lam_q * q2
    return float(((p - q) ** 2).sum())


def coupling_enumeration_frechet(P, Q):
    """Discrete Fréchet distance by exhaustive enumeration of all couplings.

    Walks every monotone path through the vertex-pair grid (steps right, up,
    or diagonally) and takes the minimum over paths of the maximum pairwise
    distance. Exponential; only for tiny curves.
    """
    P = np.asarray(P, dtype=float)
    Q = np.asarray(Q, dtype=float)
    if P.ndim == 1:
        P = P.reshape(-1, 1)
    if Q.ndim == 1:
        Q = Q.reshape(-1, 1)
    dist = np.sqrt(((P[:, None, :] - Q[None, :, :]) ** 2).sum(-1))
    m, n = dist.shape
    best = np.inf

    stack = [(0, 0, dist[0, 0])]
    while stack:
        i, j, cur = stack.pop()
        if i == m - 1 and j == n - 1:
            if cur < best:
                best = cur
            continue
        if i + 1 < m:
            stack.append((i + 1, j, max(cur, dist[i + 1, j])))
        if j + 1 < n:
            stack.append((i, j + 1, max(cur, dist[i, j + 1])))
        if i + 1 < m and j + 1 < n:
            stack.append((i + 1, j + 1, max(cur, dist[i + 1, j + 1])))
    return float(best)


def subdivide(curve, k):
    """Split every edge into k equal parts (m -> (m-1)k + 1 vertices)."""
    v = curve.vertices if isinstance(curve, Curve) else np.asarray(curve, dtype=float)
    if len(v) == 1:
        return Curve(v)
    parts = [v[:1]]
    for i in range(len(v) - 1):
        steps = np.linspace(0.0, 1.0, k + 1)[1:, None]
        parts.append(v[i] + steps * (v[i + 1] - v[i]))
    return Curve(np.vstack(parts))


def random_curve(rng, m, d, scale=1.0):
    return Curve(rng.normal(size=(m, d)) * scale)


def translated_set(base, shifts):
    """Translates of one base curve; pairwise distances are the shift-norm gaps."""
    base = np.asarray(base, dtype=float)
    return CurveSet([Curve(base + np.asarray(s, dtype=float)) for s in shifts])
