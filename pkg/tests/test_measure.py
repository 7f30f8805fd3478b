import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate as spi

from crr import measure
from crr.core import ParamB, ParameterError, coeff_d, crr_value

GRID = [(lam, eta) for lam in (0.75, 1.0, 1.5, 3.0) for eta in (-2.0, 0.0, 0.5, 2.0)]


class TestChainSequences:
    def test_maximal_first_terms(self):
        # lambda > 1/2: M_1 = (2 lambda - 1) / (2 lambda)
        assert measure.maximal_param(1, 1.5) == pytest.approx(2.0 / 3.0)
        assert measure.minimal_param(1, 1.5) == 0.0

    @pytest.mark.parametrize("lam", [0.3, 0.5, 0.75, 1.0, 2.5, 10.0])
    @pytest.mark.parametrize("k", range(6))
    def test_chain_identity(self, lam, k):
        assert measure.chain_identity_residual(lam, k, 100, "M") <= 1e-14
        if k == 0:
            assert measure.chain_identity_residual(lam, 0, 100, "m") <= 1e-14

    @given(st.floats(0.05, 20.0), st.integers(0, 5), st.integers(1, 200))
    def test_parameters_in_unit_interval(self, lam, k, n):
        M = measure.maximal_param(n, lam, k)
        assert 0.0 <= M < 1.0
        assert (1.0 - measure.maximal_param(n, lam, k)) * measure.maximal_param(n + 1, lam, k) == pytest.approx(
            coeff_d(k + n + 1, lam), rel=1e-13)

    def test_minimal_only_for_k0(self):
        with pytest.raises(ParameterError):
            measure.chain_identity_residual(1.0, 2, 10, "m")


class TestVerblunsky:
    @given(st.floats(0.51, 10.0), st.floats(-5.0, 5.0), st.integers(0, 5))
    def test_moduli(self, lam, eta, k):
        v = measure.verblunsky_seq(ParamB(lam, eta), k, 60)
        assert all(abs(abs(t) - 1.0) <= 1e-12 for t in v.tau)
        assert all(abs(b) < 1.0 for b in v.beta)
        assert all(g > 0 for g in v.gamma)

    def test_hypothesis_enforced(self):
        with pytest.raises(ParameterError):
            measure.verblunsky_seq(ParamB(0.5, 1.0), 0, 5)
        measure.verblunsky_seq(ParamB(0.5, 1.0), 1, 5)


class TestWeight:
    @pytest.mark.parametrize("eta", [0.0, 0.7, -2.3])
    def test_gamma_modulus_identities(self, eta):
        # |Gamma(1 + i eta)|^2 = pi eta / sinh(pi eta);  |Gamma(1/2 + i eta)|^2 = pi / cosh(pi eta)
        ref1 = 1.0 if eta == 0 else math.pi * eta / math.sinh(math.pi * eta)
        assert math.exp(measure.gamma_abs_sq(ParamB(1.0, eta))) == pytest.approx(ref1, rel=1e-14)
        assert math.exp(measure.gamma_abs_sq(ParamB(0.5, eta))) == pytest.approx(math.pi / math.cosh(math.pi * eta),
                                                                                  rel=1e-14)

    def test_cauchy_special_case(self):
        w = measure.weight_k0(ParamB(1.0, 0.0))
        x = np.linspace(-100, 100, 1001)
        np.testing.assert_allclose(measure.weight_density(w, x), 1.0 / (math.pi * (1 + x * x)), rtol=1e-12)

    @pytest.mark.parametrize("lam,eta", GRID)
    def test_mass_one(self, lam, eta):
        w = measure.weight_k0(ParamB(lam, eta))
        assert measure.integrate(w, np.ones_like) == pytest.approx(1.0, abs=1e-8)

    @pytest.mark.parametrize("lam,eta", [(1.5, 0.5), (3.0, -2.0), (1.0, 2.0)])
    def test_mass_against_scipy_quad(self, lam, eta):
        w = measure.weight_k0(ParamB(lam, eta))
        ref, err = spi.quad(lambda x: measure.weight_density(w, x), -np.inf, np.inf, epsabs=1e-13, limit=500)
        assert ref == pytest.approx(1.0, abs=1e-8)

    def test_second_moment_self_convergence(self):
        w = measure.weight_k0(ParamB(2.0, 0.0))
        coarse = measure.integrate(w, lambda x: x * x)
        fine = measure.integrate(w, lambda x: x * x, rtol=1e-13)
        assert coarse == pytest.approx(fine, rel=1e-8)
        # lambda = 2, eta = 0: density ~ (1+x^2)^-2, second moment 1
        assert fine == pytest.approx(1.0, rel=1e-9)

    def test_rejects_small_lambda(self):
        with pytest.raises(ParameterError):
            measure.weight_k0(ParamB(0.5, 0.0))


class TestOrthogonality:
    @pytest.mark.parametrize("lam,eta", GRID)
    def test_residuals(self, lam, eta):
        for n in range(1, 7):
            assert measure.orthogonality_check(n, ParamB(lam, eta)) < 1e-6

    def test_against_scipy_quad(self):
        b = ParamB(1.5, 0.5)
        w = measure.weight_k0(b)
        f = lambda x: crr_value(3, 0, b, x) * x / (1 + x * x) ** 3 * measure.weight_density(w, x)  # noqa: E731
        ref, _ = spi.quad(f, -np.inf, np.inf, epsabs=1e-13, limit=500)
        assert abs(ref) < 1e-9


class TestAssociatedIntegral:
    @pytest.mark.parametrize("lam,eta", GRID)
    def test_reproduces_lower_degree_associated(self, lam, eta):
        for n in range(1, 5):
            assert measure.associated_integral_check(n, ParamB(lam, eta)) < 1e-6

    def test_same_degree_reading_does_not_hold(self):
        # the integral equals P_{n-1}^{(1)}, not P_n^{(1)}
        b = ParamB(1.5, 0.0)
        rhs = measure.associated_integral(1, b, 0.0)
        assert rhs == pytest.approx(1.0, abs=1e-10)
        assert abs(crr_value(1, 1, b, 0.0) - rhs) > 0.5

    def test_against_direct_quadrature(self):
        b, n, x = ParamB(2.0, 1.0), 3, 0.4
        w = measure.weight_k0(b)

        def integrand(t):
            num = (1 + x * x) ** n * crr_value(n, 0, b, t) - (1 + t * t) ** n * crr_value(n, 0, b, x)
            return num / ((t - x) * (1 + t * t) ** n) * measure.weight_density(w, t)

        ref = sum(spi.quad(integrand, a, c, epsabs=1e-13, limit=500)[0]
                  for a, c in [(-np.inf, x), (x, np.inf)])
        assert measure.associated_integral(n, b, x) == pytest.approx(ref / measure.maximal_param(1, b.lam), rel=1e-7)
