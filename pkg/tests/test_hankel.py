import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hankelnorm.hankel import (
    build_form,
    evaluate_hankel,
    hankel_norm_sq,
    operator_norm_sq,
    projection_coefficient,
    theorem_bound_sq,
)
from hankelnorm.series import PowerSeries, fractional_power
from hankelnorm.spaces import monomial_norms
from oracles import disk_rule, poly, project

Z = PowerSeries([0, 1])
ALPHAS = (-1, -0.5, 0, 1, 3)


def rand_poly(rng, deg, zero_constant=False):
    c = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
    if zero_constant:
        c[0] = 0
    return c


def test_projection_examples():
    assert projection_coefficient(2, 5, 0) == pytest.approx(2 / 3)
    assert projection_coefficient(0, 3, 1.7) == 1.0
    assert projection_coefficient(4, 2, 0) == 0.0
    assert projection_coefficient(1, 1, 1) == pytest.approx(1 / 3)


@pytest.mark.parametrize("alpha", [0, 1])
def test_projection_matches_kernel_quadrature(alpha):
    rule = disk_rule(alpha)
    z = rule[0]
    for k in range(5):
        for n in range(5):
            b = project(np.conj(z) ** k * z**n, alpha, rule)[:9]
            ref = np.zeros(9, dtype=complex)
            if k <= n:
                ref[n - k] = projection_coefficient(k, n, alpha)
            np.testing.assert_allclose(b, ref, atol=1e-6)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_norm_of_one_with_coordinate_symbol(alpha):
    assert hankel_norm_sq(PowerSeries([1]), Z, alpha) == pytest.approx(1 / (2 + alpha), rel=1e-15)


def test_zero_function():
    assert hankel_norm_sq(PowerSeries([0, 0, 0]), PowerSeries([0, 1, 2]), 0.3) == 0.0


def test_nonzero_symbol_constant_rejected():
    with pytest.raises(ValueError):
        hankel_norm_sq(PowerSeries([1]), PowerSeries([1, 1]), 0)
    with pytest.raises(ValueError):
        build_form(PowerSeries([1, 1]), 0, 4)


def test_example1_coefficient_sum():
    F = PowerSeries([0, 2, 1])
    g = fractional_power(PowerSeries([2, 2]), 0.5, order=64)
    assert hankel_norm_sq(g, F, -1) == pytest.approx(29 / 2, rel=1e-5)


def test_example1_coefficient_sum_converges_in_order():
    F = PowerSeries([0, 2, 1])
    g = fractional_power(PowerSeries([2, 2]), 0.5, order=4096)
    assert hankel_norm_sq(g, F, -1) == pytest.approx(29 / 2, rel=1e-10)


@pytest.mark.parametrize("alpha", [0, 1])
def test_quadratic_form_matches_quadrature(alpha):
    rule = disk_rule(alpha)
    z, w = rule
    D = monomial_norms(alpha, 31).values
    rng = np.random.default_rng(11)
    for _ in range(6):
        c = rand_poly(rng, int(rng.integers(1, 4)), zero_constant=True)
        a = rand_poly(rng, int(rng.integers(0, 4)))
        g = np.conj(poly(c, z)) * poly(a, z)
        ref = np.sum(w * np.abs(g) ** 2) - np.sum(np.abs(project(g, alpha, rule)) ** 2 * D)
        assert hankel_norm_sq(PowerSeries(a), PowerSeries(c), alpha) == pytest.approx(ref, rel=1e-6)


def test_form_examples():
    M = build_form(Z, 0, 1).matrix
    assert M.shape == (1, 1) and M[0, 0] == pytest.approx(0.5)
    hardy = build_form(Z, -1, 6).matrix
    expected = np.zeros((6, 6))
    expected[0, 0] = 1
    np.testing.assert_allclose(hardy, expected, atol=1e-15)


def test_form_agrees_with_direct_sum():
    rng = np.random.default_rng(3)
    psi = PowerSeries([0, 1, 3])
    form = build_form(psi, 0.5, 8)
    for _ in range(5):
        a = rand_poly(rng, 7)
        assert form.quadratic(a) == pytest.approx(hankel_norm_sq(PowerSeries(a), psi, 0.5), rel=1e-12)


@pytest.mark.parametrize("alpha", ALPHAS + (2,))
def test_sharpness(alpha):
    for dim in (1, 64):
        assert operator_norm_sq(build_form(Z, alpha, dim)) == pytest.approx(1 / (2 + alpha), abs=1e-10)


def test_zero_symbol_norm():
    assert operator_norm_sq(build_form(PowerSeries([0, 0, 0]), 0, 5)) == 0.0


def test_theorem_bound_examples():
    assert theorem_bound_sq(Z, 0) == 0.5
    assert theorem_bound_sq(Z, -1) == 1.0
    assert theorem_bound_sq(PowerSeries([0, 2, 1]), 0) == 3.0


@pytest.mark.parametrize("alpha", ALPHAS)
def test_hardy_bracket_vanishes_only_at_minus_one(alpha):
    D = monomial_norms(alpha, 40).values
    bracket = [D[n + m - k] - D[n] * D[m] / D[k]
               for k in range(10) for n in range(k + 1, 15) for m in range(k + 1, 15)]
    if alpha == -1:
        assert np.all(np.array(bracket) == 0.0)
    else:
        assert np.max(np.abs(bracket)) > 0


def test_evaluate_examples():
    pts = np.array([0.3 + 0.1j, -0.5j, 0.0])
    for alpha in (-1, 0, 2):
        np.testing.assert_allclose(evaluate_hankel(PowerSeries([1]), Z, alpha, pts), np.conj(pts))
    np.testing.assert_allclose(evaluate_hankel(PowerSeries([0, 1]), Z, 0, pts), np.abs(pts) ** 2 - 0.5)
    assert evaluate_hankel(PowerSeries([0]), Z, 0, 0.2) == 0


def test_evaluate_outside_disk_rejected():
    with pytest.raises(ValueError):
        evaluate_hankel(PowerSeries([1]), Z, 0, 1.0)


@pytest.mark.parametrize("alpha", [0, 1])
def test_evaluate_norm_matches_form(alpha):
    z, w = disk_rule(alpha, 120, 120)
    rng = np.random.default_rng(5)
    psi = PowerSeries(rand_poly(rng, 3, zero_constant=True))
    f = PowerSeries(rand_poly(rng, 4))
    u = evaluate_hankel(f, psi, alpha, z)
    assert np.sum(w * np.abs(u) ** 2) == pytest.approx(hankel_norm_sq(f, psi, alpha), rel=1e-8)


def dbar(fun, z, h=1e-4):
    dx = (fun(z + h) - fun(z - h)) / (2 * h)
    dy = (fun(z + 1j * h) - fun(z - 1j * h)) / (2 * h)
    return 0.5 * (dx + 1j * dy)


@pytest.mark.parametrize("alpha", [-1, -0.5, 0, 1, 3])
def test_dbar_recovers_function(alpha):
    rng = np.random.default_rng(21)
    f = PowerSeries(rand_poly(rng, 5))
    pts = 0.85 * np.sqrt(rng.uniform(size=20)) * np.exp(2j * np.pi * rng.uniform(size=20))
    got = dbar(lambda z: evaluate_hankel(f, Z, alpha, z), pts)
    np.testing.assert_allclose(got, f(pts), atol=1e-5)


finite = st.floats(-3, 3, allow_nan=False)
cplx = st.builds(complex, finite, finite)


@settings(max_examples=40, deadline=None)
@given(st.lists(cplx, min_size=2, max_size=6), st.lists(cplx, min_size=1, max_size=12),
       st.sampled_from(ALPHAS))
def test_positivity_and_psd(cs, a, alpha):
    psi = PowerSeries([0] + cs)
    assert hankel_norm_sq(PowerSeries(a), psi, alpha) >= -1e-12 * sum(abs(x) ** 2 for x in a)
    form = build_form(psi, alpha, 12)
    M = form.matrix
    assert np.max(np.abs(M - M.conj().T)) <= 1e-13 * max(1.0, np.max(np.abs(M)))
    assert np.linalg.eigvalsh(0.5 * (M + M.conj().T)).min() >= -1e-12 * max(1.0, np.max(np.abs(M)))


@settings(max_examples=30, deadline=None)
@given(st.lists(cplx, min_size=1, max_size=8), st.sampled_from(ALPHAS))
def test_theorem_bound_property(cs, alpha):
    psi = PowerSeries([0] + cs)
    bound = theorem_bound_sq(psi, alpha)
    prev = 0.0
    for dim in (8, 16, 32):
        val = operator_norm_sq(build_form(psi, alpha, dim))
        assert val <= bound * (1 + 1e-9) + 1e-300
        assert val >= prev * (1 - 1e-9)
        prev = val
