"""Complementary Romanovski-Routh (CRR) polynomials.

Evaluation, zeros, extreme bounds, orthogonality measure, zero geometry and
Hermite/Laguerre asymptotics, built on a three-term recurrence kernel that
runs compiled when the extension is available and in numpy otherwise.
"""

__version__ = "0.1.0"

from ._kernels import BACKEND
from .core import (EvalRecord, GevpPair, ParamB, ParameterError, ScaledValue, char_poly_det,
                   coeff_c, coeff_d, crr_value, eval_crr, gevp_matrices, ode_residual,
                   recurrence_arrays, wronskian_check)
from .zeros import (BracketError, ExtremeBounds, InterlacingError, ThetaZeroSet, ZeroSet,
                    crr_zeros, extreme_bounds, sturm_zeros, theta_transform, zeros)

__all__ = [
    "BACKEND", "BracketError", "EvalRecord", "ExtremeBounds", "GevpPair", "InterlacingError",
    "ParamB", "ParameterError", "ScaledValue", "ThetaZeroSet", "ZeroSet", "char_poly_det",
    "coeff_c", "coeff_d", "crr_value", "crr_zeros", "eval_crr", "extreme_bounds",
    "gevp_matrices", "ode_residual", "recurrence_arrays", "sturm_zeros", "theta_transform",
    "wronskian_check", "zeros",
]
