"""Pure-Python/numpy implementation of the recurrence kernels.

Every routine works on a generic three-term recurrence

    p_0 = 1,  p_1 = a[0] x - c[0],
    p_{j+1} = (a[j] x - c[j]) p_j - d[j] q(x) p_{j-1},

with ``q(x) = x**2 + 1`` when ``quad`` is true and ``q(x) = 1`` otherwise.
The compiled module ``_ckernels`` exposes the same functions with the same
signatures; ``crr._kernels`` picks one at import time.
"""

import math

import numpy as np

BISECT_MAX_ITER = 200
# sign-only kernels rescale lazily, once magnitudes leave [SMALL, BIG]
BIG = 1e150
SMALL = 1e-150


def _lazy_rescale(p0, p1):
    big = np.maximum(np.abs(p0), np.abs(p1))
    if np.any(big > BIG) or np.any((big < SMALL) & (big > 0.0)):
        _, s = np.frexp(big)
        return np.ldexp(p0, -s), np.ldexp(p1, -s)
    return p0, p1


def eval_scaled(a, c, d, quad, x, nderiv):
    """Evaluate ``p_n(x)``, ``p_{n-1}(x)`` and up to two derivatives.

    Returns ``(p, p_prev, dp, d2p, exp2)``; the true values are the four
    floats times ``2**exp2``. All four share the exponent.
    """
    n = len(a)
    x = float(x)
    if n == 0:
        return 1.0, 0.0, 0.0, 0.0, 0
    if quad:
        q, dq, d2q = x * x + 1.0, 2.0 * x, 2.0
    else:
        q, dq, d2q = 1.0, 0.0, 0.0
    p0, p1 = 1.0, a[0] * x - c[0]
    dp0, dp1 = 0.0, float(a[0])
    d2p0, d2p1 = 0.0, 0.0
    e = 0
    for j in range(1, n):
        t = a[j] * x - c[j]
        dj = d[j]
        p2 = t * p1 - dj * q * p0
        if nderiv >= 1:
            dp2 = a[j] * p1 + t * dp1 - dj * (dq * p0 + q * dp0)
            if nderiv >= 2:
                d2p2 = 2.0 * a[j] * dp1 + t * d2p1 - dj * (d2q * p0 + 2.0 * dq * dp0 + q * d2p0)
            else:
                d2p2 = 0.0
        else:
            dp2 = d2p2 = 0.0
        p0, p1 = p1, p2
        dp0, dp1 = dp1, dp2
        d2p0, d2p1 = d2p1, d2p2
        big = max(abs(p0), abs(p1), abs(dp0), abs(dp1), abs(d2p0), abs(d2p1))
        if big > 0.0 and math.isfinite(big):
            s = math.frexp(big)[1]
            if s:
                p0 = math.ldexp(p0, -s)
                p1 = math.ldexp(p1, -s)
                dp0 = math.ldexp(dp0, -s)
                dp1 = math.ldexp(dp1, -s)
                d2p0 = math.ldexp(d2p0, -s)
                d2p1 = math.ldexp(d2p1, -s)
                e += s
    return p1, p0, dp1, d2p1, e


def sign_values(a, c, d, quad, xs):
    """Sign of ``p_n`` at every point of the array ``xs`` (vectorized)."""
    xs = np.asarray(xs, dtype=float)
    n = len(a)
    if n == 0:
        return np.ones_like(xs)
    q = xs * xs + 1.0 if quad else np.ones_like(xs)
    p0 = np.ones_like(xs)
    p1 = a[0] * xs - c[0]
    for j in range(1, n):
        p2 = (a[j] * xs - c[j]) * p1 - d[j] * q * p0
        p0, p1 = _lazy_rescale(p1, p2)
    return np.sign(p1)


def bisect_roots(a, c, d, quad, lo, hi, tol):
    """Bisect every bracket ``[lo[i], hi[i]]`` of ``p_n`` simultaneously.

    Returns ``(lo, hi, status)``; status is 0 on success and 1 where the
    endpoints do not bracket a sign change.
    """
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    slo = sign_values(a, c, d, quad, lo)
    shi = sign_values(a, c, d, quad, hi)
    status = np.where(slo * shi < 0, 0, 1).astype(np.int64)
    active = status == 0
    for _ in range(BISECT_MAX_ITER):
        width = hi - lo
        scale = np.maximum(np.maximum(np.abs(lo), np.abs(hi)), 1.0)
        active &= width > tol * scale
        if not active.any():
            break
        idx = np.nonzero(active)[0]
        mid = 0.5 * (lo[idx] + hi[idx])
        smid = sign_values(a, c, d, quad, mid)
        exact = smid == 0
        left = (smid == slo[idx]) & ~exact
        lo_new = np.where(left, mid, lo[idx])
        hi_new = np.where(left, hi[idx], mid)
        lo_new[exact] = mid[exact]
        hi_new[exact] = mid[exact]
        lo[idx] = lo_new
        hi[idx] = hi_new
    return lo, hi, status


def sturm_counts(a, c, d, quad, xs):
    """Number of sign changes in ``p_0(x), ..., p_n(x)`` for each x.

    For positive ``a`` and positive ``d`` this equals the number of zeros of
    ``p_n`` strictly greater than x.
    """
    xs = np.asarray(xs, dtype=float)
    n = len(a)
    count = np.zeros(xs.shape, dtype=np.int64)
    if n == 0:
        return count
    q = xs * xs + 1.0 if quad else np.ones_like(xs)
    p0 = np.ones_like(xs)
    p1 = a[0] * xs - c[0]
    last = np.ones_like(xs)
    s1 = np.sign(p1)
    count += (s1 * last < 0)
    last = np.where(s1 != 0, s1, last)
    for j in range(1, n):
        p2 = (a[j] * xs - c[j]) * p1 - d[j] * q * p0
        p0, p1 = _lazy_rescale(p1, p2)
        s1 = np.sign(p1)
        count += (s1 * last < 0)
        last = np.where(s1 != 0, s1, last)
    return count


def sturm_roots(a, c, d, quad, lo, hi, tol):
    """All zeros of ``p_n`` in ``(lo, hi)`` by sign-change-count bisection.

    Assumes every zero lies strictly inside ``(lo, hi)``.
    """
    n = len(a)
    below = np.full(n, float(lo))
    above = np.full(n, float(hi))
    # the k-th smallest zero x_k satisfies count(x) >= n - k for x < x_k
    need = n - np.arange(n)
    for _ in range(BISECT_MAX_ITER):
        scale = np.maximum(np.maximum(np.abs(below), np.abs(above)), 1.0)
        active = (above - below) > tol * scale
        if not active.any():
            break
        idx = np.nonzero(active)[0]
        mid = 0.5 * (below[idx] + above[idx])
        cnt = sturm_counts(a, c, d, quad, mid)
        left = cnt >= need[idx]
        below[idx] = np.where(left, mid, below[idx])
        above[idx] = np.where(left, above[idx], mid)
    return 0.5 * (below + above)
