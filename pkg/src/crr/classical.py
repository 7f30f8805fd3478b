"""Hermite and Laguerre polynomials, their zeros, and electrostatic checks.

The zeros of ``H_n`` and ``L_n^{(2 lambda - 1)}`` are the limits of the CRR
zeros for large lambda and large eta. This module also checks the Stieltjes
equilibrium equations those zeros satisfy and certifies that the two
electrostatic matrices are positive semi-definite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import ParameterError, ScaledValue

HERMITE = "hermite"
LAGUERRE = "laguerre"
KINDS = ("T_hermite", "Ttilde_laguerre")

# cyclic Jacobi rotations are used up to this size, LDL^T pivots above it
JACOBI_MAX_N = 32


def hermite_arrays(n: int):
    j = np.arange(n, dtype=float)
    return np.full(n, 2.0), np.zeros(n), 2.0 * j


def laguerre_arrays(n: int, alpha: float):
    if not alpha > -1.0:
        raise ParameterError(f"Laguerre needs alpha > -1, got {alpha}")
    j = np.arange(n, dtype=float)
    return -1.0 / (j + 1.0), -(2.0 * j + alpha + 1.0) / (j + 1.0), (j + alpha) / (j + 1.0)


def classical_arrays(family: str, n: int, alpha: float | None = None):
    if family == HERMITE:
        return hermite_arrays(n)
    if family == LAGUERRE:
        if alpha is None:
            raise ParameterError("Laguerre needs alpha")
        return laguerre_arrays(n, float(alpha))
    raise ParameterError(f"unknown classical family {family!r}")


def classical_eval(family: str, n: int, x: float, alpha: float | None = None) -> ScaledValue:
    """``H_n(x)`` or ``L_n^{(alpha)}(x)`` as a :class:`ScaledValue`."""
    if n < 0:
        raise ParameterError(f"degree must be >= 0, got {n}")
    a, c, d = classical_arrays(family, n, alpha)
    p, _, _, _, e = _kernels.eval_scaled(a, c, d, False, float(x), 0)
    return ScaledValue(p, int(e))


def classical_zeros(family: str, n: int, alpha: float | None = None):
    """Zeros of ``H_n`` or ``L_n^{(alpha)}`` via the interlacing solver."""
    from .zeros import zeros

    if family == HERMITE:
        return zeros(HERMITE, n)
    return zeros(LAGUERRE, n, params=alpha)


def _laguerre_alpha(lam: float) -> float:
    if lam <= 0:
        raise ParameterError(f"lambda must be > 0, got {lam}")
    return 2.0 * lam - 1.0


def stieltjes_residual(family: str, n: int, lam: float | None = None, zs=None) -> float:
    """Largest violation of the electrostatic equilibrium equations.

    Hermite: ``sum_{i != k} 1/(h_k - h_i) = h_k``.
    Laguerre with ``alpha = 2 lambda - 1``:
    ``sum_{i != k} l_i/(l_i - l_k) = (n + lambda - 1) - l_k/2``.
    """
    if n < 2:
        raise ParameterError(f"Stieltjes system needs n >= 2, got {n}")
    if zs is None:
        alpha = _laguerre_alpha(lam) if family == LAGUERRE else None
        zs = classical_zeros(family, n, alpha).zeros
    z = np.asarray(zs, dtype=float)
    diff = z[:, None] - z[None, :]
    np.fill_diagonal(diff, np.inf)
    if family == HERMITE:
        lhs = (1.0 / diff).sum(axis=1)
        return float(np.max(np.abs(lhs - z)))
    # l_i / (l_i - l_k) summed over i for row k
    ratio = z[None, :] / (-diff)
    np.fill_diagonal(ratio, 0.0)
    lhs = ratio.sum(axis=1)
    return float(np.max(np.abs(lhs - (n + lam - 1.0) + 0.5 * z)))


@dataclass(frozen=True)
class ElectrostaticMatrix:
    n: int
    kind: str
    entries: np.ndarray


def electrostatic_matrix(kind: str, n: int, lam: float | None = None) -> ElectrostaticMatrix:
    """Build T (Hermite zeros) or the symmetrized T-tilde (Laguerre zeros).

    ``T`` has ``t_kk = sum_{i != k} 1/(h_k - h_i)^2`` and
    ``t_kj = -1/(h_j - h_k)^2``. The Laguerre matrix acting on the scaled
    corrections has rows ``sum_i L_i/(L_i - L_k)^2`` on the diagonal and
    ``-L_j/(L_j - L_k)^2`` off it, with ``L_k`` the reversed Laguerre zeros;
    conjugating by ``diag(sqrt(L))`` makes it symmetric without changing the
    spectrum, and that symmetric form is returned.
    """
    if n < 2:
        raise ParameterError(f"matrix needs n >= 2, got {n}")
    if kind == "T_hermite":
        z = np.asarray(classical_zeros(HERMITE, n).zeros)
        w = np.ones(n)
    elif kind == "Ttilde_laguerre":
        z = np.asarray(classical_zeros(LAGUERRE, n, _laguerre_alpha(lam)).zeros)[::-1]
        w = z
    else:
        raise ParameterError(f"unknown matrix kind {kind!r}")
    diff = z[:, None] - z[None, :]
    np.fill_diagonal(diff, np.inf)
    inv2 = 1.0 / diff**2
    diag = (inv2 * w[None, :]).sum(axis=1)
    sw = np.sqrt(w)
    m = -inv2 * sw[:, None] * sw[None, :]
    np.fill_diagonal(m, diag)
    return ElectrostaticMatrix(n=n, kind=kind, entries=m)


def _jacobi_eigenvalues(m, sweeps=60):
    """Eigenvalues of a small symmetric matrix by cyclic Jacobi rotations."""
    a = np.array(m, dtype=float)
    n = a.shape[0]
    for _ in range(sweeps):
        off = math.sqrt(np.sum(np.tril(a, -1) ** 2))
        if off <= 1e-15 * max(np.linalg.norm(a), 1e-300):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if a[p, q] == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * a[p, q])
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
    return np.sort(np.diag(a))


def _ldlt_min_pivot(m, shift):
    """Smallest LDL^T pivot of ``m + shift I`` (no pivoting)."""
    a = np.array(m, dtype=float) + shift * np.eye(m.shape[0])
    n = a.shape[0]
    dmin = math.inf
    for j in range(n):
        dj = a[j, j]
        dmin = min(dmin, dj)
        if dj <= 0.0:
            return dj
        col = a[j + 1:, j] / dj
        a[j + 1:, j + 1:] -= np.outer(col, a[j, j + 1:])
    return dmin


def electrostatic_psd(kind: str, n: int, lam: float | None = None) -> float:
    """Estimate of the smallest eigenvalue of T or T-tilde.

    For ``n <= 32`` the estimate is the exact (Jacobi) smallest eigenvalue.
    Above that the LDL^T factorization of ``T + tol*||T|| I`` is used as a
    certificate: the return value is ``0.0`` when all pivots are positive and
    ``-tol*||T||`` otherwise.
    """
    mat = electrostatic_matrix(kind, n, lam).entries
    if n <= JACOBI_MAX_N:
        return float(_jacobi_eigenvalues(mat)[0])
    norm = float(np.linalg.norm(mat))
    shift = 1e-10 * norm
    pivot = _ldlt_min_pivot(mat, shift)
    return 0.0 if pivot > 0.0 else -shift
