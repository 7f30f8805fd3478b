"""Exact rational oracle for small degrees.

Expands the hypergeometric closed form

    P_n(b; x) = (2 lambda)_n / (2^n (lambda)_n) (x - i)^n 2F1(-n, b; 2 lambda; -2i / (x - i))

in Gaussian-rational arithmetic, so for rational ``lambda`` and ``eta`` the
power-basis coefficients are exact and independent of the recurrence.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .core import ParameterError

ORACLE_MAX_N = 8


class GaussQ:
    """Exact complex number ``re + i im`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __add__(self, o):
        o = _lift(o)
        return GaussQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __mul__(self, o):
        o = _lift(o)
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = _lift(o)
        den = o.re * o.re + o.im * o.im
        return GaussQ((self.re * o.re + self.im * o.im) / den, (self.im * o.re - self.re * o.im) / den)

    def __eq__(self, o):
        o = _lift(o)
        return self.re == o.re and self.im == o.im

    def __repr__(self):
        return f"GaussQ({self.re}, {self.im})"


def _lift(v):
    return v if isinstance(v, GaussQ) else GaussQ(v)


def _poch(a, j):
    out = _lift(1)
    for t in range(j):
        out = out * (a + t)
    return out


def exact_coeffs(n: int, lam, eta):
    """Power-basis coefficients ``[a_0, ..., a_n]`` of ``P_n`` as Fractions."""
    if not 0 <= n <= ORACLE_MAX_N:
        raise ParameterError(f"exact oracle supports 0 <= n <= {ORACLE_MAX_N}, got {n}")
    lam, eta = Fraction(lam), Fraction(eta)
    if lam <= 0:
        raise ParameterError(f"lambda must be > 0, got {lam}")
    b = GaussQ(lam, eta)
    coeffs = [GaussQ() for _ in range(n + 1)]
    for j in range(n + 1):
        # term: (-n)_j (b)_j / ((2 lam)_j j!) (-2i)^j (x - i)^(n - j)
        w = _poch(-n, j) * _poch(b, j) / (_poch(2 * lam, j) * _poch(1, j))
        w = w * _poch_pow(GaussQ(0, -2), j)
        m = n - j
        for r in range(m + 1):
            # (x - i)^m = sum_r C(m, r) x^r (-i)^(m - r)
            coeffs[r] = coeffs[r] + w * comb(m, r) * _poch_pow(GaussQ(0, -1), m - r)
    norm = _poch(2 * lam, n) / (_poch(lam, n) * 2**n)
    out = []
    for cf in coeffs:
        v = cf * norm
        if v.im != 0:
            raise ArithmeticError("closed form produced a non-real coefficient")
        out.append(v.re)
    return out


def _poch_pow(z, m):
    out = _lift(1)
    for _ in range(m):
        out = out * z
    return out


def exact_value(n: int, lam, eta, x) -> Fraction:
    """``P_n(b; x)`` exactly for rational ``lambda``, ``eta`` and ``x``."""
    x = Fraction(x)
    acc = Fraction(0)
    for cf in reversed(exact_coeffs(n, lam, eta)):
        acc = acc * x + cf
    return acc
