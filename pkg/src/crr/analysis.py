"""Zero geometry: Sturm-Liouville form, convexity, spacing, density and asymptotics.

With ``x = tan(theta)`` the function
``v_n(theta) = e^{eta theta} cos(theta)^(n+lambda) P_n(b; tan theta)``
solves ``v'' + Lambda_n(theta) v = 0``, so monotonicity and bounds of
``Lambda_n`` translate into statements about gaps between zeros.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .classical import HERMITE, LAGUERRE, classical_eval, classical_zeros
from .core import ParamB, ParameterError, ScaledValue, eval_crr
from .zeros import crr_zeros, sturm_zeros, theta_transform

GAP_TIE_TOL = 1e-12
DENSITY_N_START = 8
DENSITY_N_CAP = 2048


# ---------------------------------------------------------------- Sturm-Liouville form


@dataclass(frozen=True)
class SturmLiouvilleForm:
    n: int
    b: ParamB

    def Lambda(self, theta):
        return sl_lambda(self.n, self.b, theta)

    def v(self, theta) -> ScaledValue:
        return sl_eval(self.n, self.b, theta)[1]


def sl_lambda(n: int, b: ParamB, theta):
    lam, eta = b.lam, b.eta
    t = np.tan(theta)
    return lam * (1.0 - lam) * t * t + 2.0 * eta * (n + lam) * t + n * n + 2.0 * n * lam + lam - eta * eta


def sl_lambda_derivative(n: int, b: ParamB, theta):
    lam, eta = b.lam, b.eta
    return 2.0 / np.cos(theta) ** 2 * (eta * (n + lam) - lam * (lam - 1.0) * np.tan(theta))


def sl_eval(n: int, b: ParamB, theta: float):
    """``(Lambda_n(theta), v_n(theta))`` with v as a :class:`ScaledValue`."""
    if not -math.pi / 2 < theta < math.pi / 2:
        raise ParameterError(f"theta must lie in (-pi/2, pi/2), got {theta}")
    p = eval_crr(n, 0, b, math.tan(theta), want_derivs=False).p
    log_factor = b.eta * theta + (n + b.lam) * math.log(math.cos(theta))
    e = math.floor(log_factor / math.log(2.0))
    factor = ScaledValue(math.exp(log_factor - e * math.log(2.0)), e)
    return float(sl_lambda(n, b, theta)), p * factor


def frak_m(n: int, b: ParamB):
    """Critical point ``eta (n + lambda) / (lambda (lambda - 1))`` of Lambda_n in x; None at lambda = 1."""
    if b.lam == 1.0:
        return None
    return b.eta * (n + b.lam) / (b.lam * (b.lam - 1.0))


# ---------------------------------------------------------------- convexity


@dataclass(frozen=True)
class RangeVerdict:
    lower: float
    upper: float
    claim: str  # "convex" or "concave"
    count: int
    verdict: str  # "pass", "fail", "tie", "insufficient"
    worst_margin: float | None = None


@dataclass(frozen=True)
class ConvexityReport:
    n: int
    b: ParamB
    case: str
    frak_M: float | None
    verdicts: tuple
    no_claim: tuple = ()

    @property
    def passed(self) -> bool:
        return all(v.verdict in ("pass", "insufficient", "tie") for v in self.verdicts)


def convexity_claims(n: int, b: ParamB):
    """Case label and the ``(lower, upper, claim)`` ranges asserted for these parameters."""
    lam, eta = b.lam, b.eta
    M = frak_m(n, b)
    inf = math.inf
    if lam > 1.0:
        if eta == 0.0:
            return "I", [(-inf, 0.0, "concave"), (0.0, inf, "convex")]
        if eta > 0.0:
            return "II", [(-inf, 0.0, "concave"), (M, inf, "convex")]
        return "III", [(-inf, M, "concave"), (0.0, inf, "convex")]
    if lam < 1.0:
        if eta > 0.0:
            return "IV", [(M, 0.0, "concave")]
        if eta < 0.0:
            return "V", [(0.0, M, "convex")]
        return "none", []
    if eta > 0.0:
        return "lambda=1,eta>0", [(-inf, 0.0, "concave")]
    if eta < 0.0:
        return "lambda=1,eta<0", [(0.0, inf, "convex")]
    return "none", []


def gap_verdict(xs, claim, tol=GAP_TIE_TOL):
    """Test strict monotonicity of consecutive gaps; returns (verdict, worst margin)."""
    xs = np.asarray(xs, dtype=float)
    if len(xs) < 3:
        return "insufficient", None
    gaps = np.diff(xs)
    change = np.diff(gaps)
    margin = change if claim == "convex" else -change
    worst = float(margin.min())
    if worst < -tol:
        return "fail", worst
    if worst <= tol:
        return "tie", worst
    return "pass", worst


def convexity_report(n: int, b: ParamB, zs=None) -> ConvexityReport:
    if n < 3:
        raise ParameterError(f"convexity needs n >= 3, got {n}")
    x = np.asarray(zs.zeros if zs is not None else crr_zeros(n, b).zeros)
    case, claims = convexity_claims(n, b)
    verdicts = []
    covered = np.zeros(len(x), dtype=bool)
    for lo, hi, claim in claims:
        inside = (x > lo) & (x < hi)
        covered |= inside
        verdict, worst = gap_verdict(x[inside], claim)
        verdicts.append(RangeVerdict(lo, hi, claim, int(inside.sum()), verdict, worst))
    return ConvexityReport(n=n, b=b, case=case, frak_M=frak_m(n, b), verdicts=tuple(verdicts),
                           no_claim=tuple(float(v) for v in x[~covered]))


# ---------------------------------------------------------------- spacing


@dataclass(frozen=True)
class SpacingBounds:
    f_n: float
    g_n: float


@dataclass(frozen=True)
class SpacingResult:
    case: str
    applicable: bool
    passed: bool | None
    bound: float | None
    min_margin: float | None
    reason: str = ""
    tie: bool = False  # smallest margin within GAP_TIE_TOL of zero


def spacing_bounds(n: int, b: ParamB) -> SpacingBounds:
    lam, eta = b.lam, b.eta
    if lam == 1.0:
        f = math.nan
    else:
        f = (n * n + lam * (2 * n + 1)) * (1.0 - eta * eta / (lam * (1.0 - lam)))
    sign = 1.0 if eta >= 0 else -1.0
    g = (n + 1) ** 2 + (eta * eta * (n * (n + 1) ** 2 + n**3 + 4)
                        + sign * 2.0 * eta * (n * n - 1)
                        * math.sqrt(eta * eta * (n + 1) ** 2 + 3.0 * (eta * eta + n * n))) / (3.0 * n)
    return SpacingBounds(f_n=f, g_n=g)


def spacing_check(n: int, b: ParamB, zs=None) -> SpacingResult:
    """Check the theta-gap inequality of the case the parameters fall into."""
    lam, eta = b.lam, b.eta
    sb = spacing_bounds(n, b)
    if 0.0 < lam < 1.0:
        case = "I"
        if eta * eta > lam * (1.0 - lam):
            return SpacingResult(case, False, None, None, None, "eta^2 > lambda(1 - lambda)")
        if not sb.f_n > 0.0:
            return SpacingResult(case, False, None, None, None, "f_n <= 0")
    elif lam > 1.0:
        case = "II"
    else:
        case = "III"
        if n < 4:
            return SpacingResult(case, False, None, None, None, "n < 4")
    if n < 2:
        return SpacingResult(case, False, None, None, None, "n < 2")
    zs = zs if zs is not None else crr_zeros(n, b)
    gaps = np.diff(theta_transform(zs).thetas)
    if case == "III":
        bound = math.pi / math.sqrt(sb.g_n)
        margins = gaps - bound
        ok = bool(np.all(margins > 0.0))
    else:
        bound = math.pi / math.sqrt(sb.f_n)
        margins = bound - gaps if case == "I" else gaps - bound
        ok = bool(np.all(margins >= 0.0))
    worst = float(margins.min())
    return SpacingResult(case, True, ok, bound, worst, tie=abs(worst) <= GAP_TIE_TOL)


# ---------------------------------------------------------------- density


@dataclass(frozen=True)
class DensityResult:
    b: ParamB
    interval: tuple
    eps: float
    n: int | None
    history: tuple = field(default=())  # (n, max x-gap, max theta-gap)

    @property
    def success(self) -> bool:
        return self.n is not None


def _interval_gaps(x, t1, t2):
    """Largest x-gap and theta-gap covering (t1, t2), boundary gaps included."""
    inside = x[(x > t1) & (x < t2)]
    if inside.size == 0:
        return math.inf, math.inf
    th = np.arctan(np.concatenate(([t1], inside, [t2])))
    dth = np.diff(th)
    pts = np.tan(th)
    # x-gaps from theta-gaps: tan(a) - tan(b) = (1 + tan a tan b) tan(a - b)
    dx = (1.0 + pts[1:] * pts[:-1]) * np.tan(dth)
    return float(dx.max()), float(dth.max())


def density_probe(b: ParamB, t1: float, t2: float, eps: float,
                  n_start: int = DENSITY_N_START, n_cap: int = DENSITY_N_CAP) -> DensityResult:
    """Smallest n on the doubling sequence whose zeros leave no gap >= eps in (t1, t2)."""
    if b.lam < 1.0:
        raise ParameterError(f"density needs lambda >= 1, got {b.lam}")
    if not t1 < t2:
        raise ParameterError(f"need t1 < t2, got ({t1}, {t2})")
    if eps <= 0:
        raise ParameterError(f"eps must be > 0, got {eps}")
    history = []
    n = n_start
    while n <= n_cap:
        x = sturm_zeros(n, 0, b)
        gx, gth = _interval_gaps(x, t1, t2)
        history.append((n, gx, gth))
        if gx < eps:
            return DensityResult(b, (t1, t2), eps, n, tuple(history))
        n *= 2
    return DensityResult(b, (t1, t2), eps, None, tuple(history))


# ---------------------------------------------------------------- asymptotics


@dataclass(frozen=True)
class BranchReport:
    branch: str
    n: int
    fixed: float
    grid: tuple
    errors: tuple
    slope: float
    scaled: tuple  # errors times the expected rate, should stay bounded


def loglog_slope(grid, errors):
    """Least-squares slope of log(error) against log(grid), smallest grid point dropped."""
    g = np.asarray(grid, dtype=float)
    e = np.asarray(errors, dtype=float)
    if len(g) < 4:
        raise ParameterError(f"slope fit needs at least 4 grid points, got {len(g)}")
    order = np.argsort(g)[1:]
    slope, _ = np.polyfit(np.log(g[order]), np.log(e[order]), 1)
    return float(slope)


def lambda_branch(n: int, eta: float, lams) -> BranchReport:
    """Errors ``max_k |x_k - h_k/sqrt(lambda) - eta/lambda|`` along a lambda grid."""
    h = classical_zeros(HERMITE, n).as_array()
    errs = []
    for lam in lams:
        x = crr_zeros(n, ParamB(lam, eta)).as_array()
        errs.append(float(np.max(np.abs(x - h / math.sqrt(lam) - eta / lam))))
    scaled = tuple(e * lam**1.5 for e, lam in zip(errs, lams))
    return BranchReport("lambda", n, eta, tuple(lams), tuple(errs), loglog_slope(lams, errs), scaled)


def eta_branch(n: int, lam: float, etas) -> BranchReport:
    """Errors ``max_k |x_k - 2 eta / l_{n+1-k}|`` along an eta grid (eta > 0)."""
    ell = classical_zeros(LAGUERRE, n, 2.0 * lam - 1.0).as_array()
    errs = []
    for eta in etas:
        if eta <= 0:
            raise ParameterError("the eta branch needs eta > 0")
        x = crr_zeros(n, ParamB(lam, eta)).as_array()
        errs.append(float(np.max(np.abs(x - 2.0 * eta / ell[::-1]))))
    scaled = tuple(e * eta for e, eta in zip(errs, etas))
    return BranchReport("eta", n, lam, tuple(etas), tuple(errs), loglog_slope(etas, errs), scaled)


def _log_poch(a, n):
    return float(gammaln(a + n) - gammaln(a))


def u_hat(n: int, b: ParamB, x: float) -> float:
    """``2^n (lambda)_n lambda^(-n/2) P_n(b; x / sqrt(lambda))``."""
    p = eval_crr(n, 0, b, x / math.sqrt(b.lam), want_derivs=False).p
    log_f = n * math.log(2.0) + _log_poch(b.lam, n) - 0.5 * n * math.log(b.lam)
    if p.mantissa == 0.0:
        return 0.0
    return math.copysign(math.exp(p.log_abs() + log_f), p.mantissa)


def u_tilde(n: int, b: ParamB, x: float) -> float:
    """``(lambda)_n / (eta^n n!) x^n P_n(b; 2 eta / x)`` for ``x != 0``, ``eta > 0``."""
    p = eval_crr(n, 0, b, 2.0 * b.eta / x, want_derivs=False).p
    if p.mantissa == 0.0:
        return 0.0
    log_f = _log_poch(b.lam, n) - n * math.log(b.eta) - float(gammaln(n + 1)) + n * math.log(abs(x))
    sign = math.copysign(1.0, p.mantissa) * (1.0 if x > 0 or n % 2 == 0 else -1.0)
    return sign * math.exp(p.log_abs() + log_f)


HAT_PROBES = tuple(np.linspace(-3.0, 3.0, 13))
TILDE_PROBES = tuple(np.linspace(0.25, 12.0, 13))


def expansion_errors(n: int, eta: float, lam: float, lams=None, etas=None):
    """Scaled remainders of the two polynomial expansions along doubling grids.

    Returns ``(hat, tilde)``: ``lambda * sup|U_hat - H_n + 2 eta n H_{n-1}/sqrt(lambda)|``
    for each lambda in ``lams`` (eta fixed) and
    ``eta^2 * sup|U_tilde - L_n^{(2 lambda - 1)}|`` for each eta in ``etas`` (lambda fixed).
    """
    lams = lams or tuple(100.0 * 2**i for i in range(5))
    etas = etas or tuple(100.0 * 2**i for i in range(5))
    hat = []
    for L in lams:
        b = ParamB(L, eta)
        worst = 0.0
        for x in HAT_PROBES:
            target = float(classical_eval(HERMITE, n, x)) - 2.0 * eta * n * float(
                classical_eval(HERMITE, n - 1, x)) / math.sqrt(L)
            worst = max(worst, abs(u_hat(n, b, x) - target))
        hat.append(worst * L)
    tilde = []
    for E in etas:
        b = ParamB(lam, E)
        worst = 0.0
        for x in TILDE_PROBES:
            target = float(classical_eval(LAGUERRE, n, x, 2.0 * lam - 1.0))
            worst = max(worst, abs(u_tilde(n, b, x) - target))
        tilde.append(worst * E * E)
    return tuple(hat), tuple(tilde)


def n2_error_ratio(lam: float) -> float:
    """Error ratio ``e(lambda) / e(4 lambda)`` for n = 2, eta = 0 from computed zeros."""
    def err(L):
        x = crr_zeros(2, ParamB(L, 0.0)).as_array()
        return float(np.max(np.abs(np.abs(x) - 1.0 / math.sqrt(2.0 * L))))

    return err(lam) / err(4.0 * lam)


@dataclass(frozen=True)
class AsymptoticsReport:
    lambda_branch: BranchReport | None
    eta_branch: BranchReport | None
    hat_scaled: tuple = ()
    tilde_scaled: tuple = ()


def asymptotics_report(n: int, eta: float = 1.0, lam: float = 1.5, lams=None, etas=None,
                       expansions: bool = True) -> AsymptoticsReport:
    lams = lams or (1e2, 1e3, 1e4, 1e5)
    etas = etas or (1e2, 1e3, 1e4, 1e5)
    lb = lambda_branch(n, eta, lams)
    eb = eta_branch(n, lam, etas)
    hat, tilde = expansion_errors(n, eta, lam) if expansions else ((), ())
    return AsymptoticsReport(lb, eb, hat, tilde)


def critical_point_check(n: int, b: ParamB, rel: float = 1e-6) -> bool:
    """True when dLambda/dtheta changes sign across ``arctan(M_n)`` (lambda != 1)."""
    M = frak_m(n, b)
    if M is None:
        raise ParameterError("Lambda_n has no isolated critical point at lambda = 1")
    th = math.atan(M)
    h = rel * max(1.0, abs(th))
    left = float(sl_lambda_derivative(n, b, th - h))
    right = float(sl_lambda_derivative(n, b, th + h))
    return left * right < 0.0
