# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled recurrence kernels; mirrors ``crr._pykernels`` function by function."""

import numpy as np
cimport numpy as cnp
from libc.math cimport frexp, ldexp, fabs, fmax, isfinite

cnp.import_array()

DEF BISECT_MAX_ITER = 200
# sign-only kernels rescale lazily, once magnitudes leave [SMALL, BIG]
DEF BIG = 1e150
DEF SMALL = 1e-150


def eval_scaled(double[::1] a, double[::1] c, double[::1] d, bint quad,
                double x, int nderiv):
    cdef Py_ssize_t n = a.shape[0], j
    cdef double q, dq, d2q, t, dj, big
    cdef double p0, p1, p2, dp0, dp1, dp2, d2p0, d2p1, d2p2
    cdef int s
    cdef long e = 0
    if n == 0:
        return 1.0, 0.0, 0.0, 0.0, 0
    if quad:
        q = x * x + 1.0
        dq = 2.0 * x
        d2q = 2.0
    else:
        q = 1.0
        dq = 0.0
        d2q = 0.0
    p0 = 1.0
    p1 = a[0] * x - c[0]
    dp0 = 0.0
    dp1 = a[0]
    d2p0 = 0.0
    d2p1 = 0.0
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
            dp2 = 0.0
            d2p2 = 0.0
        p0 = p1
        p1 = p2
        dp0 = dp1
        dp1 = dp2
        d2p0 = d2p1
        d2p1 = d2p2
        big = fmax(fmax(fmax(fabs(p0), fabs(p1)), fmax(fabs(dp0), fabs(dp1))),
                   fmax(fabs(d2p0), fabs(d2p1)))
        if big > 0.0 and isfinite(big):
            frexp(big, &s)
            if s != 0:
                p0 = ldexp(p0, -s)
                p1 = ldexp(p1, -s)
                dp0 = ldexp(dp0, -s)
                dp1 = ldexp(dp1, -s)
                d2p0 = ldexp(d2p0, -s)
                d2p1 = ldexp(d2p1, -s)
                e += s
    return p1, p0, dp1, d2p1, e


cdef inline double _sign_at(const double[::1] a, const double[::1] c,
                            const double[::1] d, bint quad, double x) noexcept nogil:
    cdef Py_ssize_t n = a.shape[0], j
    cdef double q, p0, p1, p2, big
    cdef int s
    if n == 0:
        return 1.0
    q = x * x + 1.0 if quad else 1.0
    p0 = 1.0
    p1 = a[0] * x - c[0]
    for j in range(1, n):
        p2 = (a[j] * x - c[j]) * p1 - d[j] * q * p0
        p0 = p1
        p1 = p2
        big = fmax(fabs(p0), fabs(p1))
        if big > BIG or (big < SMALL and big > 0.0):
            frexp(big, &s)
            p0 = ldexp(p0, -s)
            p1 = ldexp(p1, -s)
    if p1 > 0.0:
        return 1.0
    if p1 < 0.0:
        return -1.0
    return 0.0


cdef inline long _count_at(const double[::1] a, const double[::1] c,
                           const double[::1] d, bint quad, double x) noexcept nogil:
    cdef Py_ssize_t n = a.shape[0], j
    cdef double q, p0, p1, p2, last, big
    cdef int s
    cdef long count = 0
    if n == 0:
        return 0
    q = x * x + 1.0 if quad else 1.0
    p0 = 1.0
    p1 = a[0] * x - c[0]
    last = 1.0
    if p1 * last < 0.0:
        count += 1
    if p1 != 0.0:
        last = p1
    for j in range(1, n):
        p2 = (a[j] * x - c[j]) * p1 - d[j] * q * p0
        p0 = p1
        p1 = p2
        big = fmax(fabs(p0), fabs(p1))
        if big > BIG or (big < SMALL and big > 0.0):
            frexp(big, &s)
            p0 = ldexp(p0, -s)
            p1 = ldexp(p1, -s)
        if (p1 > 0.0 and last < 0.0) or (p1 < 0.0 and last > 0.0):
            count += 1
        if p1 != 0.0:
            last = p1
    return count


def sign_values(double[::1] a, double[::1] c, double[::1] d, bint quad, xs):
    cdef double[::1] xv = np.ascontiguousarray(xs, dtype=np.float64).ravel()
    cdef Py_ssize_t i, m = xv.shape[0]
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] ov = out
    with nogil:
        for i in range(m):
            ov[i] = _sign_at(a, c, d, quad, xv[i])
    return out.reshape(np.shape(xs))


def bisect_roots(double[::1] a, double[::1] c, double[::1] d, bint quad,
                 lo_in, hi_in, double tol):
    lo = np.array(lo_in, dtype=np.float64)
    hi = np.array(hi_in, dtype=np.float64)
    status = np.zeros(lo.shape[0], dtype=np.int64)
    cdef double[::1] lov = lo
    cdef double[::1] hiv = hi
    cdef cnp.int64_t[::1] st = status
    cdef Py_ssize_t i, m = lov.shape[0]
    cdef int it
    cdef double slo, shi, smid, mid, scale
    with nogil:
        for i in range(m):
            slo = _sign_at(a, c, d, quad, lov[i])
            shi = _sign_at(a, c, d, quad, hiv[i])
            if slo * shi >= 0.0:
                st[i] = 1
                continue
            for it in range(BISECT_MAX_ITER):
                scale = fmax(fmax(fabs(lov[i]), fabs(hiv[i])), 1.0)
                if hiv[i] - lov[i] <= tol * scale:
                    break
                mid = 0.5 * (lov[i] + hiv[i])
                smid = _sign_at(a, c, d, quad, mid)
                if smid == 0.0:
                    lov[i] = mid
                    hiv[i] = mid
                    break
                if smid == slo:
                    lov[i] = mid
                else:
                    hiv[i] = mid
    return lo, hi, status


def sturm_counts(double[::1] a, double[::1] c, double[::1] d, bint quad, xs):
    cdef double[::1] xv = np.ascontiguousarray(xs, dtype=np.float64).ravel()
    cdef Py_ssize_t i, m = xv.shape[0]
    out = np.empty(m, dtype=np.int64)
    cdef cnp.int64_t[::1] ov = out
    with nogil:
        for i in range(m):
            ov[i] = _count_at(a, c, d, quad, xv[i])
    return out.reshape(np.shape(xs))


def sturm_roots(double[::1] a, double[::1] c, double[::1] d, bint quad,
                double lo, double hi, double tol):
    cdef Py_ssize_t n = a.shape[0], i
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    cdef double below, above, mid, scale
    cdef int it
    with nogil:
        for i in range(n):
            below = lo
            above = hi
            for it in range(BISECT_MAX_ITER):
                scale = fmax(fmax(fabs(below), fabs(above)), 1.0)
                if above - below <= tol * scale:
                    break
                mid = 0.5 * (below + above)
                if _count_at(a, c, d, quad, mid) >= n - i:
                    below = mid
                else:
                    above = mid
            ov[i] = 0.5 * (below + above)
    return out
