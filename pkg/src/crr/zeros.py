"""Extreme bounds and zeros of CRR, associated CRR, Hermite and Laguerre polynomials.

Zeros are built degree by degree. The zeros of degree ``m - 1`` split the
line into ``m`` intervals that each hold exactly one zero of degree ``m``,
so every zero gets a guaranteed sign-change bracket. Inner brackets come from
the previous degree; the outermost two come from the extreme bounds (CRR,
``k = 0``, ``m >= 4``) or from doubling steps outward.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .classical import HERMITE, LAGUERRE, classical_arrays
from .core import ParamB, ParameterError, recurrence_arrays

CRR = "crr"
FAMILIES = (CRR, HERMITE, LAGUERRE)

DEFAULT_TOL = 1e-13
MAX_EXPANSIONS = 60
NEWTON_STEPS = 3
THETA_NEWTON_ABOVE = 10.0


class BracketError(RuntimeError):
    """A bracket failed to show a sign change; the coefficients are inconsistent."""


class InterlacingError(RuntimeError):
    """Zeros of consecutive degrees failed to interlace strictly."""


def default_tol() -> float:
    raw = os.environ.get("CRR_ZEROS_TOL")
    if not raw:
        return DEFAULT_TOL
    tol = float(raw)
    if not (0.0 < tol < 1e-2):
        raise ParameterError(f"CRR_ZEROS_TOL must be in (0, 1e-2), got {raw}")
    return tol


@dataclass(frozen=True)
class ExtremeBounds:
    n: int
    lower: float
    upper: float
    delta_n: float


@dataclass(frozen=True)
class ZeroSet:
    family: str
    n: int
    k: int
    params: object
    zeros: tuple
    method: str = "induction"
    tol: float = DEFAULT_TOL
    backend: str = field(default_factory=lambda: _kernels.BACKEND)

    def __len__(self):
        return len(self.zeros)

    def as_array(self):
        return np.asarray(self.zeros, dtype=float)


@dataclass(frozen=True)
class ThetaZeroSet:
    thetas: tuple


def extreme_bounds(n: int, b: ParamB) -> ExtremeBounds:
    """Interval that contains every zero of ``P_n(b; x)`` for ``n >= 4``."""
    if n < 4:
        raise ParameterError(f"extreme bounds need n >= 4, got {n}")
    lam, eta = b.lam, b.eta
    delta = ((eta**2 + lam * (lam + 2.0)) * n**2
             + 2.0 * lam * (eta**2 + lam**2 + 2.0 * lam - 3.0) * n
             + 4.0 * lam * (eta**2 + (lam - 1.0) ** 2))
    center = eta * (n**2 + 2.0 * lam + n * (lam - 1.0))
    half = (n - 1.0) * math.sqrt(delta)
    den = lam * (2.0 * (n - 1.0) + (n + 2.0) * lam)
    return ExtremeBounds(n=n, lower=(center - half) / den, upper=(center + half) / den, delta_n=delta)


def _arrays(family, n, k, params):
    if family == CRR:
        return recurrence_arrays(n, k, params), True
    return classical_arrays(family, n, params), False


def _validate(family, n, k, params):
    if family not in FAMILIES:
        raise ParameterError(f"unknown family {family!r}")
    if n < 1:
        raise ParameterError(f"need n >= 1, got {n}")
    if k < 0:
        raise ParameterError(f"need k >= 0, got {k}")
    if family == CRR and not isinstance(params, ParamB):
        raise ParameterError("CRR zeros need a ParamB")
    if family != CRR and k != 0:
        raise ParameterError("association order only applies to CRR")
    if family == LAGUERRE:
        if params is None or not float(params) > -1.0:
            raise ParameterError(f"Laguerre needs alpha > -1, got {params}")


def _expand(arrays, quad, start, direction):
    """Step outward from ``start`` until the sign differs from the sign at ``start``."""
    a, c, d = arrays
    s0 = _kernels.sign_values(a, c, d, quad, np.array([start]))[0]
    step = max(1.0, abs(start))
    for _ in range(MAX_EXPANSIONS):
        x = start + direction * step
        if _kernels.sign_values(a, c, d, quad, np.array([x]))[0] * s0 < 0:
            return x
        step *= 2.0
    raise BracketError(f"no sign change within {MAX_EXPANSIONS} doublings from {start}")


def _newton_polish(arrays, quad, lo, hi):
    """At most three Newton steps per zero, kept only while inside its final bracket."""
    a, c, d = arrays
    out = np.empty_like(lo)
    for i, (l, h) in enumerate(zip(lo, hi)):
        x = 0.5 * (l + h)
        for _ in range(NEWTON_STEPS):
            p, _, dp, _, _ = _kernels.eval_scaled(a, c, d, quad, x, 1)
            if p == 0.0 or dp == 0.0:
                break
            if abs(x) > THETA_NEWTON_ABOVE:
                theta = math.atan(x) - p / (dp * (1.0 + x * x))
                if not -math.pi / 2 < theta < math.pi / 2:
                    break
                x_new = math.tan(theta)
            else:
                x_new = x - p / dp
            if not l <= x_new <= h or x_new == x:
                break
            x = x_new
        out[i] = x
    return out


def _check_interlacing(prev, cur):
    if len(cur) != len(prev) + 1:
        raise InterlacingError("degree bookkeeping broken")
    if not (np.all(cur[:-1] < prev) and np.all(prev < cur[1:])):
        bad = np.nonzero(~((cur[:-1] < prev) & (prev < cur[1:])))[0]
        raise InterlacingError(f"zeros of degree {len(cur)} do not interlace at positions {bad.tolist()}")


def induction_zeros(family, n, k=0, params=None, tol=None, on_degree=None):
    """Zeros of every degree ``1..n``; returns the degree-``n`` zeros.

    ``on_degree(m, zeros_m)`` is called after each degree is completed.
    Interlacing with the previous degree is asserted at every step.
    """
    tol = default_tol() if tol is None else tol
    (a, c, d), quad = _arrays(family, n, k, params)
    prev = np.array([c[0] / a[0]])
    if on_degree is not None:
        on_degree(1, prev)
    use_bounds = family == CRR and k == 0
    for m in range(2, n + 1):
        arr = (a[:m], c[:m], d[:m])
        if use_bounds and m >= 4:
            eb = extreme_bounds(m, params)
            lo_out, hi_out = eb.lower, eb.upper
        else:
            lo_out = _expand(arr, quad, prev[0], -1.0)
            hi_out = _expand(arr, quad, prev[-1], 1.0)
        lo = np.concatenate(([lo_out], prev))
        hi = np.concatenate((prev, [hi_out]))
        lo, hi, status = _kernels.bisect_roots(*arr, quad, lo, hi, tol)
        if np.any(status):
            bad = np.nonzero(status)[0].tolist()
            raise BracketError(f"degree {m}: brackets {bad} show no sign change")
        if m == n:
            cur = _newton_polish(arr, quad, lo, hi)
        else:
            cur = 0.5 * (lo + hi)
        _check_interlacing(prev, cur)
        prev = cur
        if on_degree is not None:
            on_degree(m, prev)
    return prev


def sturm_zeros(n, k, b, tol=None):
    """Zeros of ``P_n^{(k)}`` directly, by bisection on sign-change counts.

    The sequence ``P_0(x), ..., P_n(x)`` has as many sign changes as
    ``P_n`` has zeros above x. Cost is ``O(n^2)`` per call instead of the
    ``O(n^3)`` of degree induction, which matters for large n.
    """
    tol = default_tol() if tol is None else tol
    a, c, d = recurrence_arrays(n, k, b)
    if k == 0 and n >= 4:
        eb = extreme_bounds(n, b)
        lo, hi = eb.lower, eb.upper
    else:
        r = 1.0 + float(np.max(np.abs(c)))
        while True:
            cnt = _kernels.sturm_counts(a, c, d, True, np.array([-r, r]))
            if cnt[0] == n and cnt[1] == 0:
                break
            r *= 2.0
            if r > 1e300:
                raise BracketError("could not enclose the zeros")
        lo, hi = -r, r
    return np.asarray(_kernels.sturm_roots(a, c, d, True, lo, hi, tol))


def zeros(family, n, k=0, params=None, tol=None, method="induction") -> ZeroSet:
    """Zeros of a CRR (``params`` = ParamB), Hermite, or Laguerre (``params`` = alpha) polynomial.

    ``method="sturm"`` (CRR only) skips the degree induction.
    """
    _validate(family, n, k, params)
    tol = default_tol() if tol is None else float(tol)
    if method == "induction":
        zs = induction_zeros(family, n, k, params, tol)
    elif method == "sturm":
        if family != CRR:
            raise ParameterError("sign-count bisection is only wired for CRR")
        zs = sturm_zeros(n, k, params, tol)
    else:
        raise ParameterError(f"unknown method {method!r}")
    if family == LAGUERRE:
        params = float(params)
    return ZeroSet(family=family, n=n, k=k, params=params, zeros=tuple(float(z) for z in zs),
                   method=method, tol=tol)


def crr_zeros(n: int, b: ParamB, k: int = 0, **kw) -> ZeroSet:
    return zeros(CRR, n, k, b, **kw)


def theta_transform(zs: ZeroSet) -> ThetaZeroSet:
    if zs.family != CRR:
        raise ParameterError("theta transform applies to CRR zeros")
    return ThetaZeroSet(thetas=tuple(math.atan(x) for x in zs.zeros))


def zero_residuals(zs: ZeroSet):
    """``|P_n(x_j)|`` relative to the polynomial's size at neighbouring gap midpoints."""
    x = zs.as_array()
    n = zs.n
    (a, c, d), quad = _arrays(zs.family, n, zs.k, zs.params)
    if n == 1:
        probes = np.array([x[0] - 1.0, x[0] + 1.0])
    else:
        mids = 0.5 * (x[1:] + x[:-1])
        probes = np.concatenate(([2 * x[0] - mids[0]], mids, [2 * x[-1] - mids[-1]]))

    def logabs(t):
        p, _, _, _, e = _kernels.eval_scaled(a, c, d, quad, float(t), 0)
        return -math.inf if p == 0.0 else math.log(abs(p)) + e * math.log(2.0)

    lp = [logabs(t) for t in probes]
    out = []
    for j, xj in enumerate(x):
        scale = max(lp[j], lp[j + 1])
        out.append(math.exp(logabs(xj) - scale))
    return np.array(out)


__all__ = [
    "BracketError", "CRR", "ExtremeBounds", "HERMITE", "InterlacingError", "LAGUERRE",
    "ThetaZeroSet", "ZeroSet", "crr_zeros", "default_tol", "extreme_bounds", "induction_zeros",
    "sturm_zeros", "theta_transform", "zero_residuals", "zeros",
]
