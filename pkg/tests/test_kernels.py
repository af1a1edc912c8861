"""Both kernel backends must agree; the pure-Python one is always present."""

import os
import subprocess
import sys

import numpy as np
import pytest

from hankelnorm import _kernels
from hankelnorm.spaces import monomial_norms

BACKENDS = _kernels.available_backends()
PY = BACKENDS["python"]
COMPILED = BACKENDS.get("cython")

needs_compiled = pytest.mark.skipif(COMPILED is None, reason="compiled extension not built")


def rng_complex(rng, n):
    return rng.normal(size=n) + 1j * rng.normal(size=n)


def test_backend_names():
    assert _kernels.BACKEND in BACKENDS
    assert "python" in BACKENDS


def test_pure_python_selected_by_environment():
    env = dict(os.environ, HANKELNORM_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import hankelnorm; print(hankelnorm.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_power_recurrence_matches_numpy_sqrt(name):
    k = BACKENDS[name]
    q = k.power_recurrence(np.array([4.0 + 0j, 1.0]), 0.5, 10)
    z = 0.3 + 0.1j
    assert np.polyval(q[::-1], z) == pytest.approx(np.sqrt(4 + z), rel=1e-12)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_quadratic_matches_matrix(name):
    k = BACKENDS[name]
    rng = np.random.default_rng(0)
    c = rng_complex(rng, 5)
    c[0] = 0
    D = monomial_norms(0.7, 40).values
    a = rng_complex(rng, 9)
    M = k.hankel_matrix(c, D, 9)
    assert np.real(np.vdot(a, M @ a)) == pytest.approx(k.hankel_quadratic(a, c, D), rel=1e-12)


@needs_compiled
def test_backends_agree():
    rng = np.random.default_rng(1)
    p = rng_complex(rng, 6)
    np.testing.assert_allclose(COMPILED.power_recurrence(p, 1.3, 200), PY.power_recurrence(p, 1.3, 200),
                               rtol=1e-13, atol=1e-13 * np.abs(PY.power_recurrence(p, 1.3, 200)).max())
    c = rng_complex(rng, 9)
    c[0] = 0
    D = monomial_norms(-0.5, 200).values
    np.testing.assert_allclose(COMPILED.hankel_matrix(c, D, 64), PY.hankel_matrix(c, D, 64), rtol=1e-13, atol=1e-13)
    a = rng_complex(rng, 80)
    D2 = monomial_norms(2.0, 80 + 2 * 8 + 1).values
    assert COMPILED.hankel_quadratic(a, c, D2) == pytest.approx(PY.hankel_quadratic(a, c, D2), rel=1e-12)
    theta = np.linspace(0, 2 * np.pi, 300, endpoint=False)
    verts = (1 + 0.3 * np.cos(3 * theta)) * np.exp(1j * theta)
    xs = np.linspace(-1.5, 1.5, 61)
    np.testing.assert_array_equal(COMPILED.grid_winding(xs, xs, verts.real, verts.imag),
                                  PY.grid_winding(xs, xs, verts.real, verts.imag))


@needs_compiled
def test_sor_backends_agree():
    n = 40
    inside = np.zeros((n, n), dtype=bool)
    inside[1:-1, 1:-1] = True
    results = []
    for k in (COMPILED, PY):
        v = np.zeros((n, n))
        sweeps, res = k.sor_solve(v, inside, 1.0 / n, 2.0, 1.9, 1e-10, 100000)
        assert res < 1e-10
        results.append(v)
    np.testing.assert_allclose(results[0], results[1], atol=1e-9)


@pytest.mark.parametrize("p, beta", [([2, 2], 0.5), ([2, 2], -0.5), ([1, 0.4, 0.1j, -0.05], 1.5)])
def test_python_long_expansion_matches_loop(p, beta, monkeypatch):
    p = np.array(p, dtype=complex)
    fast = PY.power_recurrence(p, beta, 4096)
    monkeypatch.setattr(PY, "ROOTS_MIN_ORDER", 10**9)
    slow = PY.power_recurrence(p, beta, 4096)
    np.testing.assert_allclose(fast, slow, atol=1e-13)
