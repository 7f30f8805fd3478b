import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from crr.core import ParamB, ParameterError, crr_value
from crr.zeros import (CRR, InterlacingError, _check_interlacing, crr_zeros, default_tol,
                       extreme_bounds, induction_zeros, sturm_zeros, theta_transform, zero_residuals, zeros)

from oracles import FROZEN_EXTREME_ZEROS, FROZEN_N8


class TestExtremeBounds:
    def test_symmetric_case(self):
        eb = extreme_bounds(4, ParamB(1.5, 0.0))
        assert eb.lower == pytest.approx(-math.sqrt(2), rel=1e-14)
        assert eb.upper == pytest.approx(math.sqrt(2), rel=1e-14)

    def test_positive_lower_bound(self):
        eb = extreme_bounds(4, ParamB(1.5, 5.0))
        assert eb.lower == pytest.approx(0.5301087846697145, rel=1e-13)
        assert eb.upper == pytest.approx(8.803224548663618, rel=1e-13)

    def test_requires_n4(self):
        with pytest.raises(ParameterError):
            extreme_bounds(3, ParamB(1.0, 0.0))

    @given(st.integers(4, 60), st.floats(0.2, 50.0), st.floats(-20.0, 20.0))
    def test_contains_zeros(self, n, lam, eta):
        b = ParamB(lam, eta)
        eb = extreme_bounds(n, b)
        z = crr_zeros(n, b).as_array()
        assert eb.lower < z[0] and z[-1] < eb.upper


class TestZeros:
    def test_degree_one(self):
        assert crr_zeros(1, ParamB(2.0, 1.0)).zeros == (0.5,)

    def test_frozen_n8(self):
        z = crr_zeros(8, ParamB(1.5, 0.5)).as_array()
        np.testing.assert_allclose(z, FROZEN_N8, rtol=1e-13, atol=1e-14)

    @pytest.mark.parametrize("key", sorted(FROZEN_EXTREME_ZEROS))
    def test_frozen_extremes(self, key):
        lam, eta, n = key
        z = crr_zeros(n, ParamB(lam, eta)).as_array()
        lo, hi = FROZEN_EXTREME_ZEROS[key]
        assert z[0] == pytest.approx(lo, rel=1e-12)
        assert z[-1] == pytest.approx(hi, rel=1e-12)

    def test_symmetry_eta_zero(self):
        z = crr_zeros(11, ParamB(2.5, 0.0)).as_array()
        np.testing.assert_allclose(z, -z[::-1], atol=1e-13)

    @given(st.integers(1, 25), st.floats(0.2, 20.0), st.floats(-8.0, 8.0))
    def test_conjugate_reflection(self, n, lam, eta):
        z = crr_zeros(n, ParamB(lam, eta)).as_array()
        zc = crr_zeros(n, ParamB(lam, -eta)).as_array()
        np.testing.assert_allclose(z, -zc[::-1], rtol=1e-11, atol=1e-12)

    @given(st.integers(1, 30), st.integers(0, 4), st.floats(0.2, 20.0), st.floats(-8.0, 8.0))
    def test_residuals_small(self, n, k, lam, eta):
        zs = crr_zeros(n, ParamB(lam, eta), k)
        assert np.all(zero_residuals(zs) < 1e-8)
        assert len(zs) == n and np.all(np.diff(zs.as_array()) > 0)

    @given(st.integers(2, 40), st.floats(0.3, 20.0), st.floats(-8.0, 8.0))
    def test_sturm_matches_induction(self, n, lam, eta):
        b = ParamB(lam, eta)
        a = crr_zeros(n, b).as_array()
        s = crr_zeros(n, b, method="sturm").as_array()
        np.testing.assert_allclose(a, s, rtol=1e-11, atol=1e-12)

    def test_associated_sturm(self):
        b = ParamB(0.8, -1.2)
        np.testing.assert_allclose(crr_zeros(9, b, 3).as_array(), sturm_zeros(9, 3, b), rtol=1e-11)

    def test_every_degree_interlaces(self):
        seen = {}
        induction_zeros(CRR, 40, 0, ParamB(0.75, 2.0), on_degree=lambda m, z: seen.__setitem__(m, z.copy()))
        for m in range(2, 41):
            assert np.all(seen[m][:-1] < seen[m - 1]) and np.all(seen[m - 1] < seen[m][1:])

    def test_interlacing_violation_detected(self):
        with pytest.raises(InterlacingError):
            _check_interlacing(np.array([0.0, 1.0]), np.array([-1.0, 0.5, 0.7]))

    def test_large_degree(self):
        z = crr_zeros(200, ParamB(0.75, 15.0)).as_array()
        assert len(z) == 200 and np.all(np.diff(z) > 0)

    def test_tolerance_env(self, monkeypatch):
        monkeypatch.setenv("CRR_ZEROS_TOL", "1e-9")
        assert default_tol() == 1e-9
        monkeypatch.setenv("CRR_ZEROS_TOL", "5")
        with pytest.raises(ParameterError):
            default_tol()

    def test_theta_transform(self):
        zs = crr_zeros(5, ParamB(1.0, 0.0))
        th = np.array(theta_transform(zs).thetas)
        # lambda = 1, eta = 0: theta zeros are equally spaced by pi / (n + 1)
        np.testing.assert_allclose(np.diff(th), math.pi / 6, rtol=1e-12)

    @pytest.mark.parametrize("bad", [dict(n=0), dict(k=-1), dict(family="jacobi")])
    def test_validation(self, bad):
        args = dict(family=CRR, n=4, k=0, params=ParamB(1.0, 0.0))
        args.update(bad)
        with pytest.raises(ParameterError):
            zeros(**args)

    def test_zero_sign_change(self):
        b = ParamB(3.0, -1.0)
        for x in crr_zeros(10, b).zeros:
            h = 1e-9 * max(1.0, abs(x))
            assert crr_value(10, 0, b, x - h) * crr_value(10, 0, b, x + h) < 0
