"""Chain-sequence parameters, Verblunsky coefficients and the k = 0 orthogonality measure.

For ``lambda > 1/2`` the CRR polynomials are orthogonal, in the R_II sense,
with respect to the probability measure

    dphi(x) = 2^(2 lambda - 1) |Gamma(b)|^2 / Gamma(2 lambda - 1) * e^(eta pi) / (2 pi)
              * exp(-2 eta arccot x) / (1 + x^2)^lambda dx,

with ``arccot`` taking values in ``(0, pi)``. Integrals against it are done
in the angle ``theta = arctan x`` where the density becomes
``e^{2 eta theta} cos(theta)^(2 lambda - 2)`` up to the constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln, loggamma

from .core import ParamB, ParameterError, coeff_c, coeff_d, crr_value, recurrence_arrays

QUAD_ORDER = 20
QUAD_RTOL = 1e-10
QUAD_MAX_PANELS = 2**14
# t-range of the double-exponential map; keeps pi/2 - |theta| >= ~1e-30
T_MAX = 3.8

PROBE_POINTS = (-1.5, -0.5, 0.0, 0.7, 2.0)


class QuadratureError(RuntimeError):
    def __init__(self, message, estimates):
        super().__init__(f"{message}; last estimates {estimates[0]!r}, {estimates[1]!r}")
        self.estimates = estimates


@dataclass(frozen=True)
class ChainParams:
    lam: float
    k: int
    m: tuple | None
    M: tuple


@dataclass(frozen=True)
class VerblunskySeq:
    b: ParamB
    k: int
    tau: tuple
    beta: tuple
    gamma: tuple


@dataclass(frozen=True)
class WeightK0:
    b: ParamB
    log_norm_const: float


def maximal_param(n: int, lam: float, k: int = 0) -> float:
    """``M_n^{(lambda;k)}``, the maximal parameter sequence of ``{d_{k+n}}``."""
    if n < 1:
        raise ParameterError(f"parameter sequences start at n = 1, got {n}")
    if lam <= 0.5:
        return 0.5 * (k + n - 1.0) / (lam + k + n - 1.0)
    return 0.5 * (2.0 * lam + k + n - 2.0) / (lam + k + n - 1.0)


def minimal_param(n: int, lam: float) -> float:
    if n < 1:
        raise ParameterError(f"parameter sequences start at n = 1, got {n}")
    return 0.5 * (n - 1.0) / (lam + n - 1.0)


def chain_params(lam: float, k: int, n_max: int) -> ChainParams:
    if lam <= 0:
        raise ParameterError(f"lambda must be > 0, got {lam}")
    if k < 0 or n_max < 1:
        raise ParameterError(f"need k >= 0 and n_max >= 1, got k={k}, n_max={n_max}")
    M = tuple(maximal_param(n, lam, k) for n in range(1, n_max + 1))
    m = tuple(minimal_param(n, lam) for n in range(1, n_max + 1)) if k == 0 else None
    return ChainParams(lam=float(lam), k=k, m=m, M=M)


def chain_identity_residual(lam: float, k: int, n_max: int, which: str = "M") -> float:
    """Largest relative error of ``(1 - g_n) g_{n+1} = d_{k+n+1}``."""
    cp = chain_params(lam, k, n_max + 1)
    g = cp.M if which == "M" else cp.m
    if g is None:
        raise ParameterError("the minimal sequence is only tabulated for k = 0")
    worst = 0.0
    for n in range(1, n_max + 1):
        d = coeff_d(k + n + 1, lam)
        worst = max(worst, abs((1.0 - g[n - 1]) * g[n] - d) / d)
    return worst


def _check_verblunsky_hypothesis(b: ParamB, k: int):
    if k < 0:
        raise ParameterError(f"k must be >= 0, got {k}")
    if k == 0 and b.lam <= 0.5:
        raise ParameterError(f"k = 0 needs lambda > 1/2, got {b.lam}")


def verblunsky_seq(b: ParamB, k: int, n_max: int) -> VerblunskySeq:
    """``tau_0..tau_{n_max}``, ``beta_0..beta_{n_max-1}`` and ``gamma_0..gamma_{n_max}``."""
    _check_verblunsky_hypothesis(b, k)
    tau, beta, gamma = [1.0 + 0j], [], [1.0]
    for n in range(1, n_max + 1):
        c = coeff_c(k + n, b)
        M = maximal_param(n, b.lam, k)
        beta.append((1.0 - M - 1j * c) / ((1.0 - 1j * c) * tau[-1]))
        tau.append(tau[-1] * (1.0 - 1j * c) / (1.0 + 1j * c))
        gamma.append((1.0 - M) * gamma[-1])
    return VerblunskySeq(b=b, k=k, tau=tuple(tau), beta=tuple(beta), gamma=tuple(gamma))


def gamma_abs_sq(b: ParamB) -> float:
    """``log |Gamma(lambda + i eta)|^2``."""
    return 2.0 * float(loggamma(complex(b.lam, b.eta)).real)


def weight_k0(b: ParamB) -> WeightK0:
    if b.lam <= 0.5:
        raise ParameterError(f"the k = 0 measure needs lambda > 1/2, got {b.lam}")
    lam, eta = b.lam, b.eta
    c = ((2.0 * lam - 1.0) * math.log(2.0) + gamma_abs_sq(b) - float(gammaln(2.0 * lam - 1.0))
         + eta * math.pi - math.log(2.0 * math.pi))
    return WeightK0(b=b, log_norm_const=c)


def _arccot(x):
    return math.pi / 2 - np.arctan(x)


def weight_density(w: WeightK0, x):
    """Density of ``dphi^{(b;0)}`` at x (scalar or array)."""
    x = np.asarray(x, dtype=float)
    lam, eta = w.b.lam, w.b.eta
    out = np.exp(w.log_norm_const - 2.0 * eta * _arccot(x) - lam * np.log1p(x * x))
    return out if out.ndim else float(out)


@lru_cache(maxsize=None)
def _panel_nodes(order: int, panels: int):
    gx, gw = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(-T_MAX, T_MAX, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    t = (mid[:, None] + half[:, None] * gx[None, :]).ravel()
    wt = (half[:, None] * gw[None, :]).ravel()
    return t, wt


@lru_cache(maxsize=64)
def _theta_grid(panels: int, lam: float, eta: float, log_const: float):
    """Nodes as (sin theta, cos theta) plus weights that include the density."""
    t, wt = _panel_nodes(QUAD_ORDER, panels)
    u = 0.5 * math.pi * np.sinh(t)
    au = np.abs(u)
    # eps = pi/2 - |theta|, computed without cancellation near the ends
    eps = math.pi / (1.0 + np.exp(2.0 * au))
    sgn = np.sign(u)
    s = sgn * np.cos(eps)
    c = np.sin(eps)
    theta = sgn * (0.5 * math.pi - eps)
    arccot = 0.5 * math.pi - theta
    log_sech2 = math.log(4.0) - 2.0 * au - 2.0 * np.log1p(np.exp(-2.0 * au))
    log_jac = 2.0 * math.log(0.5 * math.pi) + np.log(np.cosh(t)) + log_sech2
    log_dens = log_const - 2.0 * eta * arccot + (2.0 * lam - 2.0) * np.log(c)
    weights = wt * np.exp(log_dens + log_jac)
    return s, c, weights


def integrate_theta(w: WeightK0, g, rtol: float = QUAD_RTOL, max_panels: int = QUAD_MAX_PANELS):
    """``integral g dphi`` with the integrand given as ``g(sin theta, cos theta)``.

    Uses ``x = tan theta`` followed by a double-exponential map of theta,
    then composite Gauss-Legendre panels, halving the panel width until two
    successive estimates agree to ``rtol`` (relative to ``integral |g| dphi``).
    """
    prev = None
    panels = 4
    while panels <= max_panels:
        s, c, wts = _theta_grid(panels, w.b.lam, w.b.eta, w.log_norm_const)
        vals = np.asarray(g(s, c), dtype=float)
        est = float(np.dot(vals, wts))
        mag = float(np.dot(np.abs(vals), wts))
        if prev is not None and abs(est - prev) <= rtol * max(mag, 1e-300):
            return est
        prev = est
        panels *= 2
    raise QuadratureError("panel halving did not converge", (prev, est))


def integrate(w: WeightK0, f, rtol: float = QUAD_RTOL, max_panels: int = QUAD_MAX_PANELS):
    """``integral f(x) dphi^{(b;0)}(x)`` for a vectorized real function f."""
    return integrate_theta(w, lambda s, c: f(s / c), rtol=rtol, max_panels=max_panels)


def _trig_crr(n: int, b: ParamB, s, c):
    """``P_n(b; tan theta) cos(theta)^n``, bounded for all theta."""
    _, cc, dd = recurrence_arrays(n, 0, b)
    q0 = np.ones_like(s)
    if n == 0:
        return q0
    q1 = s - cc[0] * c
    for j in range(1, n):
        q0, q1 = q1, (s - cc[j] * c) * q1 - dd[j] * q0
    return q1


def orthogonality_check(n: int, b: ParamB) -> float:
    """``max_j |int x^j P_n/(1+x^2)^n dphi - gamma_n delta_{nj}| / gamma_n`` over ``j = 0..n``."""
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    w = weight_k0(b)
    gamma_n = verblunsky_seq(b, 0, max(n, 1)).gamma[n]
    worst = 0.0
    for j in range(n + 1):
        # x^j P_n / (1+x^2)^n = sin^j cos^(n-j) * P_n(tan) cos^n
        val = integrate_theta(w, lambda s, c, j=j: s**j * c ** (n - j) * _trig_crr(n, b, s, c))
        target = gamma_n if j == n else 0.0
        worst = max(worst, abs(val - target) / gamma_n)
    return worst


def _power_coeffs(n: int, k: int, b: ParamB):
    """Power-basis coefficients of ``P_n^{(k)}`` (low order first)."""
    P = np.polynomial.polynomial
    _, cc, dd = recurrence_arrays(n, k, b)
    p0 = np.array([1.0])
    if n == 0:
        return p0
    p1 = np.array([-cc[0], 1.0])
    for j in range(1, n):
        p0, p1 = p1, P.polysub(P.polymul([-cc[j], 1.0], p1), dd[j] * P.polymul([1.0, 0.0, 1.0], p0))
    return p1


def associated_integral(n: int, b: ParamB, x: float) -> float:
    """Right-hand side of the associated-polynomial integral formula at x (k = 0).

    ``(1/M_1) int [(1+x^2)^n P_n(t) - (1+t^2)^n P_n(x)] / ((t-x)(1+t^2)^n) dphi(t)``.
    The numerator is divided by ``t - x`` exactly in the power basis, so the
    removable singularity at ``t = x`` never reaches the quadrature.
    """
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    P = np.polynomial.polynomial
    w = weight_k0(b)
    pn = _power_coeffs(n, 0, b)
    pn_x = P.polyval(x, pn)
    one_t2 = P.polypow([1.0, 0.0, 1.0], n)
    num = P.polysub((1.0 + x * x) ** n * pn, pn_x * one_t2)
    quo, _ = P.polydiv(num, [-x, 1.0])

    def g(s, c):
        # sum_i q_i t^i / (1+t^2)^n = sum_i q_i s^i c^(2n-i)
        out = np.zeros_like(s)
        for i, qi in enumerate(quo):
            out += qi * s**i * c ** (2 * n - i)
        return out

    return integrate_theta(w, g) / maximal_param(1, b.lam, 0)


def associated_integral_check(n: int, b: ParamB, probes=PROBE_POINTS) -> float:
    """Largest ``|P_{n-1}^{(1)}(x) - RHS(x)| / max(1, |P_{n-1}^{(1)}(x)|)`` over the probes.

    The integral reproduces the associated polynomial of degree ``n - 1``;
    for ``n = 1`` the integral equals ``P_0^{(1)} = 1``.
    """
    if n > 6:
        raise ParameterError(f"associated check is limited to n <= 6, got {n}")
    worst = 0.0
    for x in probes:
        lhs = crr_value(n - 1, 1, b, x)
        rhs = associated_integral(n, b, x)
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
    return worst
