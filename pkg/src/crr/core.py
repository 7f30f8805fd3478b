"""Coefficients, scaled evaluation and algebraic identities of CRR polynomials.

The polynomials are generated by the R_II recurrence

    P_{n+1}(x) = (x - c_{n+1}) P_n(x) - d_{n+1} (x^2 + 1) P_{n-1}(x)

with ``c_n = eta / (lambda + n - 1)`` and
``d_{n+1} = n (n + 2 lambda - 1) / (4 (n + lambda - 1) (n + lambda))``.
The k-th associated family shifts every coefficient index by k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels

TINY = 1e-300


class ParameterError(ValueError):
    """Raised when a parameter violates a documented precondition."""


@dataclass(frozen=True)
class ParamB:
    """The parameter ``b = lambda + i eta`` with ``lambda > 0``."""

    lam: float
    eta: float

    def __post_init__(self):
        lam, eta = float(self.lam), float(self.eta)
        if not (math.isfinite(lam) and math.isfinite(eta)):
            raise ParameterError(f"b must be finite, got lambda={lam}, eta={eta}")
        if lam <= 0.0:
            raise ParameterError(f"lambda must be > 0, got {lam}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "eta", eta)

    @property
    def conj(self) -> "ParamB":
        return ParamB(self.lam, -self.eta)

    def __complex__(self):
        return complex(self.lam, self.eta)


@dataclass(frozen=True)
class ScaledValue:
    """A real number stored as ``mantissa * 2**exp2`` with ``0.5 <= |mantissa| < 1``."""

    mantissa: float
    exp2: int

    def __post_init__(self):
        m, e = math.frexp(float(self.mantissa))
        if m == 0.0:
            e, exp2 = 0, 0
        else:
            exp2 = int(self.exp2) + e
        object.__setattr__(self, "mantissa", m)
        object.__setattr__(self, "exp2", exp2)

    @classmethod
    def from_float(cls, value: float) -> "ScaledValue":
        return cls(value, 0)

    def __float__(self):
        # may overflow to +-inf or underflow to 0 for extreme exponents
        try:
            return math.ldexp(self.mantissa, self.exp2)
        except OverflowError:
            return math.copysign(math.inf, self.mantissa)

    @property
    def sign(self) -> int:
        return (self.mantissa > 0) - (self.mantissa < 0)

    def log_abs(self) -> float:
        """Natural log of the magnitude (``-inf`` for zero)."""
        if self.mantissa == 0.0:
            return -math.inf
        return math.log(abs(self.mantissa)) + self.exp2 * math.log(2.0)

    def __neg__(self):
        return ScaledValue(-self.mantissa, self.exp2)

    def __mul__(self, other):
        if isinstance(other, ScaledValue):
            return ScaledValue(self.mantissa * other.mantissa, self.exp2 + other.exp2)
        return ScaledValue(self.mantissa * float(other), self.exp2)

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, ScaledValue):
            other = ScaledValue.from_float(other)
        if self.mantissa == 0.0:
            return other
        if other.mantissa == 0.0:
            return self
        e = max(self.exp2, other.exp2)
        return ScaledValue(
            math.ldexp(self.mantissa, self.exp2 - e) + math.ldexp(other.mantissa, other.exp2 - e), e
        )

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, ScaledValue) else -float(other))

    def ratio(self, other: "ScaledValue") -> float:
        """``self / other`` as a plain float."""
        return math.ldexp(self.mantissa / other.mantissa, self.exp2 - other.exp2)


@dataclass(frozen=True)
class EvalRecord:
    n: int
    k: int
    x: float
    p: ScaledValue
    p_prev: ScaledValue
    dp: ScaledValue
    d2p: ScaledValue


@dataclass(frozen=True)
class GevpPair:
    """Tridiagonal data of the pencil ``A_n u = x B_n u``.

    ``A_n`` has diagonal ``a_diag`` and off-diagonals ``+i a_off`` (upper) and
    ``-i a_off`` (lower); ``B_n`` has unit diagonal and real off-diagonals
    ``b_off``.
    """

    n: int
    a_diag: tuple
    a_off: tuple
    b_diag: tuple
    b_off: tuple

    def dense(self):
        """Dense complex ``(A, B)`` matrices."""
        A = np.diag(np.asarray(self.a_diag, dtype=complex))
        B = np.eye(self.n, dtype=complex)
        for j, (ao, bo) in enumerate(zip(self.a_off, self.b_off)):
            A[j, j + 1] = 1j * ao
            A[j + 1, j] = -1j * ao
            B[j, j + 1] = B[j + 1, j] = bo
        return A, B


def coeff_c(n: int, b: ParamB) -> float:
    if n < 1:
        raise ParameterError(f"c_n needs n >= 1, got {n}")
    return b.eta / (b.lam + n - 1)


def coeff_d(n_plus: int, lam: float) -> float:
    """``d_{n_plus}`` for the parameter lambda (``n_plus >= 2``)."""
    if n_plus < 2:
        raise ParameterError(f"d_n needs n >= 2, got {n_plus}")
    if lam <= 0:
        raise ParameterError(f"lambda must be > 0, got {lam}")
    n = n_plus - 1
    return 0.25 * n * (n + 2.0 * lam - 1.0) / ((n + lam - 1.0) * (n + lam))


def recurrence_arrays(n: int, k: int, b: ParamB):
    """Kernel coefficient arrays ``(a, c, d)`` for ``P_n^{(k)}``.

    Step j (producing degree j + 1) uses ``c_{k+j+1}`` and ``d_{k+j+1}``;
    ``d[0]`` is never read.
    """
    j = np.arange(n, dtype=float)
    a = np.ones(n)
    c = b.eta / (b.lam + k + j)
    d = np.zeros(n)
    m = k + j[1:]  # d_{k+j+1} = d_{m+1}
    d[1:] = 0.25 * m * (m + 2.0 * b.lam - 1.0) / ((m + b.lam - 1.0) * (m + b.lam))
    return a, c, d


def _record(n, k, x, raw):
    p, pp, dp, d2p, e = raw
    e = int(e)
    return EvalRecord(
        n=n, k=k, x=x,
        p=ScaledValue(p, e), p_prev=ScaledValue(pp, e),
        dp=ScaledValue(dp, e), d2p=ScaledValue(d2p, e),
    )


def _check_nk(n, k):
    if n < 0 or k < 0:
        raise ParameterError(f"need n >= 0 and k >= 0, got n={n}, k={k}")


def eval_crr(n: int, k: int, b: ParamB, x: float, want_derivs: bool = True) -> EvalRecord:
    """Evaluate ``P_n^{(k)}(b; x)`` with optional first and second derivatives.

    Values are renormalized by a shared power of two after every step, so the
    result never overflows. When ``want_derivs`` is false the derivative
    fields are zero.
    """
    _check_nk(n, k)
    x = float(x)
    if not math.isfinite(x):
        raise ParameterError(f"x must be finite, got {x}")
    a, c, d = recurrence_arrays(n, k, b)
    raw = _kernels.eval_scaled(a, c, d, True, x, 2 if want_derivs else 0)
    return _record(n, k, x, raw)


def crr_value(n: int, k: int, b: ParamB, x: float) -> float:
    """Plain float ``P_n^{(k)}(b; x)``; overflows to inf for huge values."""
    return float(eval_crr(n, k, b, x, want_derivs=False).p)


def gevp_matrices(n: int, b: ParamB) -> GevpPair:
    if n < 1:
        raise ParameterError(f"GEVP needs n >= 1, got {n}")
    diag = tuple(coeff_c(j, b) for j in range(1, n + 1))
    off = tuple(math.sqrt(coeff_d(j, b.lam)) for j in range(2, n + 1))
    return GevpPair(n=n, a_diag=diag, a_off=off, b_diag=(1.0,) * n, b_off=off)


def char_poly_det(n: int, b: ParamB, x: float) -> ScaledValue:
    """``det(x B_n - A_n)`` by the tridiagonal continuant recurrence.

    The off-diagonal product is formed from the complex matrix entries
    ``x sqrt(d) - i sqrt(d)`` and ``x sqrt(d) + i sqrt(d)`` rather than from
    the closed form ``d (x^2 + 1)``.
    """
    pair = gevp_matrices(n, b)
    x = float(x)
    d_prev, d_cur = 1.0 + 0j, complex(x - pair.a_diag[0])
    e = 0
    for j in range(1, n):
        upper = x * pair.b_off[j - 1] - 1j * pair.a_off[j - 1]
        lower = x * pair.b_off[j - 1] + 1j * pair.a_off[j - 1]
        d_next = (x - pair.a_diag[j]) * d_cur - upper * lower * d_prev
        d_prev, d_cur = d_cur, d_next
        big = max(abs(d_prev), abs(d_cur))
        if big > 0:
            s = math.frexp(big)[1]
            d_prev, d_cur = d_prev * 2.0 ** -s, d_cur * 2.0 ** -s
            e += s
    return ScaledValue(d_cur.real, e)


def ode_residual(n: int, b: ParamB, x: float) -> float:
    """Relative residual of ``(x^2+1) P'' - 2((n+lambda-1)x - eta) P' + n(n+2lambda-1) P``."""
    rec = eval_crr(n, 0, b, x)
    A = x * x + 1.0
    B = (n + b.lam - 1.0) * x - b.eta
    C = n * (n + 2.0 * b.lam - 1.0)
    # shared exponent: work with mantissas rescaled to the common exponent
    e = max(rec.p.exp2, rec.dp.exp2, rec.d2p.exp2)
    p = math.ldexp(rec.p.mantissa, rec.p.exp2 - e)
    dp = math.ldexp(rec.dp.mantissa, rec.dp.exp2 - e)
    d2p = math.ldexp(rec.d2p.mantissa, rec.d2p.exp2 - e)
    t1, t2, t3 = A * d2p, -2.0 * B * dp, C * p
    return abs(t1 + t2 + t3) / (abs(t1) + abs(t2) + abs(t3) + TINY)


def wronskian_check(n: int, k: int, b: ParamB, x: float) -> float:
    """Relative residual of the cross-order product identity.

    ``P_n^{(k+1)} P_n^{(k)} - P_{n-1}^{(k+1)} P_{n+1}^{(k)}
    = (1 + x^2)^n prod_{j=2}^{n+1} d_{k+j}``.
    """
    if n < 1:
        raise ParameterError(f"identity needs n >= 1, got {n}")
    _check_nk(n, k)
    hi = eval_crr(n, k + 1, b, x, want_derivs=False)
    p_n_k1, p_nm1_k1 = hi.p, hi.p_prev
    p_n_k = eval_crr(n, k, b, x, want_derivs=False).p
    p_np1_k = eval_crr(n + 1, k, b, x, want_derivs=False).p
    t1 = p_n_k1 * p_n_k
    t2 = p_nm1_k1 * p_np1_k
    lhs = t1 - t2
    log_rhs = n * math.log1p(x * x) + sum(math.log(coeff_d(k + j, b.lam)) for j in range(2, n + 2))
    rhs_e = math.floor(log_rhs / math.log(2.0))
    rhs = ScaledValue(math.exp(log_rhs - rhs_e * math.log(2.0)), rhs_e)
    scale = max(t1.log_abs(), t2.log_abs(), rhs.log_abs())
    diff = lhs - rhs
    if diff.mantissa == 0.0:
        return 0.0
    return math.exp(diff.log_abs() - scale)
