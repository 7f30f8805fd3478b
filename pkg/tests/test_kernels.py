import json
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from crr import _kernels, _pykernels
from crr.core import ParamB, recurrence_arrays
from crr.classical import hermite_arrays

from conftest import available_backends


def crr_arrays(n, lam=1.5, eta=0.5, k=0):
    return recurrence_arrays(n, k, ParamB(lam, eta))


def test_selected_backend_is_known():
    assert _kernels.BACKEND in ("cython", "python")


def test_env_var_forces_fallback():
    code = "from crr import _kernels; print(_kernels.BACKEND)"
    env = dict(os.environ, CRR_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_eval_scaled_small_polynomial(backend):
    # p_2 for Hermite: 4x^2 - 2
    a, c, d = hermite_arrays(2)
    p, pp, dp, d2p, e = backend.eval_scaled(a, c, d, False, 1.5, 2)
    assert p * 2.0**e == pytest.approx(7.0)
    assert pp * 2.0**e == pytest.approx(3.0)
    assert dp * 2.0**e == pytest.approx(12.0)
    assert d2p * 2.0**e == pytest.approx(8.0)


def test_sturm_counts_bounds(backend):
    a, c, d = crr_arrays(12)
    counts = backend.sturm_counts(a, c, d, True, np.array([-1e6, 1e6]))
    assert list(counts) == [12, 0]


def test_bisect_reports_missing_sign_change(backend):
    a, c, d = crr_arrays(4)
    lo, hi, status = backend.bisect_roots(a, c, d, True, np.array([100.0]), np.array([200.0]), 1e-12)
    assert status[0] == 1


@pytest.mark.skipif("cython" not in available_backends(), reason="compiled kernels not built")
class TestParity:
    @given(st.integers(1, 80), st.floats(0.3, 30.0), st.floats(-10.0, 10.0), st.floats(-20.0, 20.0))
    def test_eval_scaled(self, n, lam, eta, x):
        cy = _kernels.backend_module("cython")
        args = (*crr_arrays(n, lam, eta), True, x, 2)
        r_py = _pykernels.eval_scaled(*args)
        r_cy = cy.eval_scaled(*args)
        assert r_py[4] == r_cy[4]
        np.testing.assert_allclose(r_py[:4], r_cy[:4], rtol=1e-12, atol=1e-300)

    @given(st.integers(2, 60), st.floats(0.3, 30.0), st.floats(-10.0, 10.0))
    def test_sign_and_counts(self, n, lam, eta):
        cy = _kernels.backend_module("cython")
        a, c, d = crr_arrays(n, lam, eta)
        pts = np.linspace(-30.0, 30.0, 97)
        np.testing.assert_array_equal(_pykernels.sturm_counts(a, c, d, True, pts), cy.sturm_counts(a, c, d, True, pts))
        np.testing.assert_array_equal(_pykernels.sign_values(a, c, d, True, pts), cy.sign_values(a, c, d, True, pts))

    def test_roots_agree(self):
        cy = _kernels.backend_module("cython")
        a, c, d = crr_arrays(40, 2.0, 1.0)
        r_py = _pykernels.sturm_roots(a, c, d, True, -50.0, 50.0, 1e-13)
        r_cy = cy.sturm_roots(a, c, d, True, -50.0, 50.0, 1e-13)
        np.testing.assert_allclose(r_py, r_cy, rtol=1e-12, atol=1e-13)


def test_fallback_end_to_end_matches():
    argv = ["-m", "crr.cli", "zeros", "--n", "25", "--lambda", "0.75", "--eta", "2", "--format", "json"]
    env = dict(os.environ, CRR_PURE_PYTHON="1")
    slow = subprocess.run([sys.executable, *argv], env=env, capture_output=True, text=True, check=True)
    fast = subprocess.run([sys.executable, *argv], capture_output=True, text=True, check=True)
    zs = [r["x"] for r in json.loads(slow.stdout)["data"]]
    zf = [r["x"] for r in json.loads(fast.stdout)["data"]]
    assert json.loads(slow.stdout)["meta"]["backend"] == "python"
    np.testing.assert_allclose(zs, zf, rtol=1e-12, atol=1e-13)
