"""Compiled kernels for the free-space decision procedure and the discrete distance.

Everything here is njit-compiled with ``nogil=True`` so that thread pools one
level up get genuine parallelism, while each kernel itself runs sequentially:
results never depend on the number of worker threads.

Boundary model: for curves P (M vertices) and Q (N vertices) the joint
parameter square decomposes into (M-1) x (N-1) cells. A vertical boundary
(i, j) is vertex P[i] against edge Q[j]->Q[j+1]; a horizontal boundary (i, j)
is vertex Q[j] against edge P[i]->P[i+1]. Along any boundary the squared
distance is the parabola ``f(t) = a (t - t0)^2 + fmin`` whose coefficients do
not depend on the decision threshold, so they are computed once per curve
pair and reused by every decision of the bisection. ``fmin`` is evaluated as
a residual norm instead of by completing the square; completing the square
cancels catastrophically once coordinates are large, and the residual form
keeps the near-threshold arithmetic accurate at any coordinate magnitude.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def pair_geometry(P, Q):
    """Squared-distance matrix and boundary parabola coefficients for a pair.

    Returns ``(sqd, aV, t0V, fmV, aH, t0H, fmH)`` where ``sqd[i, j]`` is the
    squared vertex distance, ``aV[j]`` the squared length of Q's edge j, and
    ``t0V/fmV`` the vertex/minimum of the vertical boundary parabolas (the
    horizontal arrays mirror this for P's edges). This is the only O(m^2 d)
    step; every decision afterwards is O(m^2).
    """
    M = P.shape[0]
    N = Q.shape[0]
    d = P.shape[1]

    sqd = np.empty((M, N))
    for i in range(M):
        for j in range(N):
            s = 0.0
            for k in range(d):
                t = P[i, k] - Q[j, k]
                s += t * t
            sqd[i, j] = s

    aV = np.empty(max(N - 1, 0))
    for j in range(N - 1):
        a = 0.0
        for k in range(d):
            e = Q[j + 1, k] - Q[j, k]
            a += e * e
        aV[j] = a

    aH = np.empty(max(M - 1, 0))
    for i in range(M - 1):
        a = 0.0
        for k in range(d):
            e = P[i + 1, k] - P[i, k]
            a += e * e
        aH[i] = a

    t0V = np.empty((M, max(N - 1, 0)))
    fmV = np.empty((M, max(N - 1, 0)))
    for i in range(M):
        for j in range(N - 1):
            a = aV[j]
            if a <= 0.0:
                # zero-length edge: constant distance along the boundary
                t0V[i, j] = 0.0
                fmV[i, j] = sqd[i, j]
            else:
                dot = 0.0
                for k in range(d):
                    dot += (P[i, k] - Q[j, k]) * (Q[j + 1, k] - Q[j, k])
                t0 = dot / a
                r = 0.0
                for k in range(d):
                    t = P[i, k] - Q[j, k] - t0 * (Q[j + 1, k] - Q[j, k])
                    r += t * t
                t0V[i, j] = t0
                fmV[i, j] = r

    t0H = np.empty((max(M - 1, 0), N))
    fmH = np.empty((max(M - 1, 0), N))
    for i in range(M - 1):
        for j in range(N):
            a = aH[i]
            if a <= 0.0:
                t0H[i, j] = 0.0
                fmH[i, j] = sqd[i, j]
            else:
                dot = 0.0
                for k in range(d):
                    dot += (Q[j, k] - P[i, k]) * (P[i + 1, k] - P[i, k])
                t0 = dot / a
                r = 0.0
                for k in range(d):
                    t = Q[j, k] - P[i, k] - t0 * (P[i + 1, k] - P[i, k])
                    r += t * t
                t0H[i, j] = t0
                fmH[i, j] = r

    return sqd, aV, t0V, fmV, aH, t0H, fmH


@njit(cache=True, nogil=True, inline="always")
def _interval(a, t0, fmin, e2):
    """Free interval of one boundary at squared threshold ``e2``.

    Returns ``(lo, hi)`` clipped to [0, 1]; ``lo > hi`` encodes empty.
    """
    if a <= 0.0:
        if fmin <= e2:
            return 0.0, 1.0
        return 1.0, -1.0
    r = e2 - fmin
    if r < 0.0:
        return 1.0, -1.0
    w = np.sqrt(r / a)
    lo = t0 - w
    hi = t0 + w
    if lo < 0.0:
        lo = 0.0
    if hi > 1.0:
        hi = 1.0
    return lo, hi


@njit(cache=True, nogil=True)
def decide(sqd, aV, t0V, fmV, aH, t0H, fmH, eps):
    """Is there a monotone path through the eps-free space?

    Reachability is propagated cell by cell. Each cell depends only on its
    left and bottom neighbours, so any topological order (row-major here;
    anti-diagonal wavefronts on data-parallel hardware) produces the same
    result. State is one rolling row of horizontal-boundary intervals plus a
    scalar vertical interval, so a decision allocates O(m) and runs O(m^2).
    """
    M, N = sqd.shape
    e2 = eps * eps
    if sqd[0, 0] > e2 or sqd[M - 1, N - 1] > e2:
        return False
    if M == 1 or N == 1:
        # a single-vertex curve must cover the whole other curve, whose
        # farthest point from any fixed point is one of its vertices
        for i in range(M):
            for j in range(N):
                if sqd[i, j] > e2:
                    return False
        return True

    # reachable intervals on the horizontal boundaries of the current row
    h_lo = np.empty(M - 1)
    h_hi = np.empty(M - 1)
    bottom_ok = True  # walking right along the bottom edge of the diagram
    for i in range(M - 1):
        flo, fhi = _interval(aH[i], t0H[i, 0], fmH[i, 0], e2)
        if bottom_ok and flo <= 0.0 and flo <= fhi:
            h_lo[i] = 0.0
            h_hi[i] = fhi
            bottom_ok = fhi >= 1.0
        else:
            bottom_ok = False
            h_lo[i] = 1.0
            h_hi[i] = -1.0

    left_ok = True  # walking up the left edge of the diagram
    v_lo = 1.0
    v_hi = -1.0
    for j in range(N - 1):
        flo, fhi = _interval(aV[j], t0V[0, j], fmV[0, j], e2)
        if left_ok and flo <= 0.0 and flo <= fhi:
            v_lo = 0.0
            v_hi = fhi
            left_ok = fhi >= 1.0
        else:
            left_ok = False
            v_lo = 1.0
            v_hi = -1.0

        row_alive = left_ok
        for i in range(M - 1):
            b_lo = h_lo[i]
            b_hi = h_hi[i]
            # right boundary of cell (i, j) = vertical boundary (i+1, j)
            rf_lo, rf_hi = _interval(aV[j], t0V[i + 1, j], fmV[i + 1, j], e2)
            if b_lo <= b_hi:
                nv_lo, nv_hi = rf_lo, rf_hi
            elif v_lo <= v_hi:
                nv_lo = rf_lo if rf_lo >= v_lo else v_lo
                nv_hi = rf_hi
            else:
                nv_lo, nv_hi = 1.0, -1.0
            # top boundary of cell (i, j) = horizontal boundary (i, j+1)
            tf_lo, tf_hi = _interval(aH[i], t0H[i, j + 1], fmH[i, j + 1], e2)
            if v_lo <= v_hi:
                nh_lo, nh_hi = tf_lo, tf_hi
            elif b_lo <= b_hi:
                nh_lo = tf_lo if tf_lo >= b_lo else b_lo
                nh_hi = tf_hi
            else:
                nh_lo, nh_hi = 1.0, -1.0

            v_lo, v_hi = nv_lo, nv_hi
            h_lo[i] = nh_lo
            h_hi[i] = nh_hi
            if nv_lo <= nv_hi or nh_lo <= nh_hi:
                row_alive = True
        if not row_alive:
            return False

    # top-right corner: end of the right boundary of the last cell, or
    # equivalently of its top boundary
    if v_lo <= v_hi and v_hi >= 1.0:
        return True
    return h_lo[M - 2] <= h_hi[M - 2] and h_hi[M - 2] >= 1.0


@njit(cache=True, nogil=True)
def fill_diagram(sqd, aV, t0V, fmV, aH, t0H, fmH, eps,
                 vfree, hfree, vreach, hreach):
    """Decision variant that records every boundary interval.

    ``vfree``/``vreach`` have shape (M, N-1, 2) and ``hfree``/``hreach``
    (M-1, N, 2); empty intervals are stored as (1, -1). Returns the decision.
    Used for diagram introspection; `decide` is the lean path.
    """
    M, N = sqd.shape
    e2 = eps * eps
    for i in range(M):
        for j in range(N - 1):
            lo, hi = _interval(aV[j], t0V[i, j], fmV[i, j], e2)
            vfree[i, j, 0] = lo
            vfree[i, j, 1] = hi
            vreach[i, j, 0] = 1.0
            vreach[i, j, 1] = -1.0
    for i in range(M - 1):
        for j in range(N):
            lo, hi = _interval(aH[i], t0H[i, j], fmH[i, j], e2)
            hfree[i, j, 0] = lo
            hfree[i, j, 1] = hi
            hreach[i, j, 0] = 1.0
            hreach[i, j, 1] = -1.0

    if sqd[0, 0] > e2 or sqd[M - 1, N - 1] > e2:
        return False
    if M == 1 or N == 1:
        for i in range(M):
            for j in range(N):
                if sqd[i, j] > e2:
                    return False
        return True

    ok = True
    for i in range(M - 1):
        if ok and hfree[i, 0, 0] <= 0.0 and hfree[i, 0, 0] <= hfree[i, 0, 1]:
            hreach[i, 0, 0] = 0.0
            hreach[i, 0, 1] = hfree[i, 0, 1]
            ok = hfree[i, 0, 1] >= 1.0
        else:
            ok = False
    ok = True
    for j in range(N - 1):
        if ok and vfree[0, j, 0] <= 0.0 and vfree[0, j, 0] <= vfree[0, j, 1]:
            vreach[0, j, 0] = 0.0
            vreach[0, j, 1] = vfree[0, j, 1]
            ok = vfree[0, j, 1] >= 1.0
        else:
            ok = False

    for j in range(N - 1):
        for i in range(M - 1):
            b_lo = hreach[i, j, 0]
            b_hi = hreach[i, j, 1]
            v_lo = vreach[i, j, 0]
            v_hi = vreach[i, j, 1]
            if b_lo <= b_hi:
                vreach[i + 1, j, 0] = vfree[i + 1, j, 0]
                vreach[i + 1, j, 1] = vfree[i + 1, j, 1]
            elif v_lo <= v_hi:
                lo = vfree[i + 1, j, 0]
                if lo < v_lo:
                    lo = v_lo
                vreach[i + 1, j, 0] = lo
                vreach[i + 1, j, 1] = vfree[i + 1, j, 1]
            if v_lo <= v_hi:
                hreach[i, j + 1, 0] = hfree[i, j + 1, 0]
                hreach[i, j + 1, 1] = hfree[i, j + 1, 1]
            elif b_lo <= b_hi:
                lo = hfree[i, j + 1, 0]
                if lo < b_lo:
                    lo = b_lo
                hreach[i, j + 1, 0] = lo
                hreach[i, j + 1, 1] = hfree[i, j + 1, 1]

    if vreach[M - 1, N - 2, 0] <= vreach[M - 1, N - 2, 1] and vreach[M - 1, N - 2, 1] >= 1.0:
        return True
    return hreach[M - 2, N - 1, 0] <= hreach[M - 2, N - 1, 1] and hreach[M - 2, N - 1, 1] >= 1.0


@njit(cache=True, nogil=True)
def discrete_frechet_from_sqd(sqd):
    """Min-max coupling DP on the squared distance matrix."""
    M, N = sqd.shape
    row = np.empty(N)
    row[0] = sqd[0, 0]
    for j in range(1, N):
        v = sqd[0, j]
        row[j] = row[j - 1] if row[j - 1] > v else v
    for i in range(1, M):
        prev_diag = row[0]
        v = sqd[i, 0]
        row[0] = row[0] if row[0] > v else v
        for j in range(1, N):
            best = row[j]
            if row[j - 1] < best:
                best = row[j - 1]
            if prev_diag < best:
                best = prev_diag
            prev_diag = row[j]
            v = sqd[i, j]
            row[j] = best if best > v else v
    return np.sqrt(row[N - 1])


@njit(cache=True, nogil=True)
def frechet_distance_kernel(P, Q, tolerance, rel_tolerance, tol_floor):
    """Bisection on the decision procedure; the full per-pair computation.

    ``tolerance < 0`` selects the automatic mode: absolute tolerance
    ``max(rel_tolerance * upper_bound, tol_floor)``. Returns the distance;
    the bracket guarantees both the endpoint lower bound and the discrete
    upper bound hold up to the tolerance.
    """
    geo = pair_geometry(P, Q)
    sqd = geo[0]
    M, N = sqd.shape
    if M == 1 or N == 1:
        worst = 0.0
        for i in range(M):
            for j in range(N):
                if sqd[i, j] > worst:
                    worst = sqd[i, j]
        return np.sqrt(worst)

    lo_sq = sqd[0, 0] if sqd[0, 0] > sqd[M - 1, N - 1] else sqd[M - 1, N - 1]
    lo = np.sqrt(lo_sq)
    hi = discrete_frechet_from_sqd(sqd)
    tol = tolerance
    if tol < 0.0:
        tol = rel_tolerance * hi
        if tol < tol_floor:
            tol = tol_floor
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break  # tolerance below floating-point resolution of the bracket
        if decide(geo[0], geo[1], geo[2], geo[3], geo[4], geo[5], geo[6], mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def warm_up():
    """Compile all kernels on a toy input (one-off JIT cost).

    Inputs are marked read-only to match the arrays that Curve hands to the
    kernels, so production calls hit the same compiled signatures.
    """
    P = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]])
    Q = np.array([[0.0, 0.1], [1.0, 0.1]])
    P.setflags(write=False)
    Q.setflags(write=False)
    geo = pair_geometry(P, Q)
    decide(geo[0], geo[1], geo[2], geo[3], geo[4], geo[5], geo[6], 0.5)
    discrete_frechet_from_sqd(geo[0])
    frechet_distance_kernel(P, Q, -1.0, 1e-9, 1e-12)
    M, N = P.shape[0], Q.shape[0]
    vfree = np.empty((M, N - 1, 2))
    hfree = np.empty((M - 1, N, 2))
    fill_diagram(geo[0], geo[1], geo[2], geo[3], geo[4], geo[5], geo[6], 0.5,
                 vfree, hfree, vfree.copy(), hfree.copy())
