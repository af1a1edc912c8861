import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hankelnorm.domains import (
    ConformalDomain,
    arc_length,
    area,
    mobius,
    norm_sq_of_one,
    parse_complex_lines,
    perimeter,
    read_coefficients,
    transport_function,
    transport_symbol,
    write_coefficients,
)
from hankelnorm.errors import ConvergenceError
from hankelnorm.hankel import build_form, operator_norm_sq
from hankelnorm.series import PowerSeries
from hankelnorm.spaces import weighted_norm_sq
from hankelnorm.verify import random_univalent_map

Z = PowerSeries([0, 1])
EX1 = PowerSeries([0, 2, 1])


def test_area_examples():
    assert area(Z) == pytest.approx(math.pi)
    assert area(EX1) == pytest.approx(6 * math.pi, abs=1e-10)
    assert area(Z * 3.0) == pytest.approx(9 * math.pi)


def test_degenerate_map_rejected():
    with pytest.raises(ValueError):
        area(PowerSeries([1, 0, 1]))
    with pytest.raises(ValueError):
        ConformalDomain(PowerSeries([0, 0, 2]))


def test_perimeter_examples():
    assert perimeter(Z, 4096) == pytest.approx(2 * math.pi, abs=1e-10)
    assert abs(perimeter(EX1, 4096) - 16) / 16 < 1e-4
    assert perimeter(Z * 2.5, 4096) == pytest.approx(5 * math.pi, abs=1e-10)
    with pytest.raises(ValueError):
        perimeter(Z, 8)


def test_arc_length_resolves_boundary_critical_point():
    assert arc_length(EX1) == pytest.approx(16, rel=1e-13)
    assert arc_length(Z) == pytest.approx(2 * math.pi, rel=1e-14)


def test_arc_length_agrees_with_trapezoid_for_smooth_boundary():
    F = PowerSeries([0.2, 1, 0.2j, -0.1])
    assert arc_length(F) == pytest.approx(perimeter(F, 4096), rel=1e-12)


def test_transport_symbol_examples():
    assert transport_symbol(Z, Z) == Z
    assert transport_symbol(Z, EX1) == EX1
    out = transport_symbol(PowerSeries([0, 0, 1]), PowerSeries([0, 1, 1], order=4))
    assert out.allclose(PowerSeries([0, 0, 1, 2, 1]), rtol=0, atol=1e-15)


def test_transport_symbol_recenters():
    F = PowerSeries([2 - 1j, 1, 0.3], order=4)
    sym = transport_symbol(PowerSeries([0, 0, 1]), F)
    assert sym.coeffs[0] == 0
    w = 0.4 + 0.2j
    assert sym(w) == pytest.approx(F(w) ** 2 - F(0) ** 2)


def test_transport_function_examples():
    for alpha in (-1, 0, 2.5):
        g = transport_function(PowerSeries([1]), Z, alpha, order=8)
        np.testing.assert_allclose(g.coeffs, np.eye(9)[0], atol=1e-15)
    g = transport_function(PowerSeries([1]), EX1, -1, order=8)
    np.testing.assert_allclose(g.coeffs[:4], np.sqrt(2) * np.array([1, 1 / 2, -1 / 8, 1 / 16]), rtol=1e-14)
    g = transport_function(PowerSeries([1]), EX1, 0, order=8)
    np.testing.assert_allclose(g.coeffs, [2, 2, 0, 0, 0, 0, 0, 0, 0], atol=1e-15)


def test_transport_function_pulls_back_values():
    F = PowerSeries([0.1, 1, 0.2])
    f = PowerSeries([1, -1, 0.5j])
    g = transport_function(f, F, 1.0, order=40)
    w = 0.3 - 0.2j
    expected = (1 + 0.4 * w) ** 1.5 * f(F(w))
    assert g(w) == pytest.approx(expected, rel=1e-12)


def test_norm_of_one_examples():
    for alpha in (-1, 0, 1):
        assert norm_sq_of_one(Z, alpha) == pytest.approx(1.0)
    assert norm_sq_of_one(EX1, 0) == pytest.approx(6.0, rel=1e-14)
    assert norm_sq_of_one(EX1, -1) == pytest.approx(8 / math.pi, rel=1e-8)


def test_hardy_norm_is_boundary_length():
    rng = np.random.default_rng(2)
    for _ in range(3):
        F = random_univalent_map(rng, 5)
        assert norm_sq_of_one(F, -1) == pytest.approx(arc_length(F) / (2 * math.pi), rel=1e-8)


def test_non_univalent_map_fails_to_converge():
    # F' vanishes inside the disk, so (F')^(1/2) has radius of convergence 1/4
    with pytest.raises(ConvergenceError):
        norm_sq_of_one(PowerSeries([0, 1, 2]), -1)


@pytest.mark.parametrize("alpha", [-1, 0, 1])
def test_mobius_invariance(alpha):
    ref = operator_norm_sq(build_form(Z, alpha, 48))
    for a in (0.3, 0.5j, -0.4 + 0.2j):
        val = operator_norm_sq(build_form(transport_symbol(Z, mobius(a, 48)), alpha, 48))
        assert abs(val - ref) / ref < 1e-5


def test_mobius_expansion():
    a = 0.3 + 0.4j
    M = mobius(a, 60)
    w = np.array([0.2, -0.3j, 0.1 + 0.1j])
    np.testing.assert_allclose(M(w), (a - w) / (1 - np.conj(a) * w), rtol=1e-13)
    with pytest.raises(ValueError):
        mobius(1.2)


univalent_seeds = st.integers(0, 2**32 - 1)


@settings(max_examples=25, deadline=None)
@given(univalent_seeds, st.integers(2, 7))
def test_isoperimetric(seed, degree):
    dom = ConformalDomain(random_univalent_map(np.random.default_rng(seed), degree))
    assert dom.isoperimetric_ok()
    assert arc_length(dom.map) ** 2 >= 4 * math.pi * dom.area * (1 - 1e-12)


@settings(max_examples=20, deadline=None)
@given(univalent_seeds, st.floats(0.2, 5.0), st.sampled_from([-1, -0.5, 0, 1, 3]))
def test_scaling_covariance(seed, R, alpha):
    F = random_univalent_map(np.random.default_rng(seed), 4)
    RF = F * R
    assert area(RF) == pytest.approx(R**2 * area(F), rel=1e-12)
    assert perimeter(RF) == pytest.approx(R * perimeter(F), rel=1e-12)
    assert norm_sq_of_one(RF, alpha) == pytest.approx(R ** (2 + alpha) * norm_sq_of_one(F, alpha), rel=1e-10)


def test_norm_of_one_is_transported_weighted_norm():
    F = PowerSeries([0, 1, 0.25])
    g = transport_function(PowerSeries([1]), F, 0.5, order=512)
    assert norm_sq_of_one(F, 0.5) == pytest.approx(weighted_norm_sq(g, 0.5), rel=1e-10)


def test_domain_geometry_cached():
    dom = ConformalDomain.builtin("example1")
    assert dom.name == "example1"
    assert dom.boundary.shape == (4096,)
    assert dom.area == pytest.approx(6 * math.pi)
    assert dom.diameter == pytest.approx(3 * math.sqrt(3), rel=1e-6)
    with pytest.raises(ValueError):
        dom.boundary[0] = 0


def test_coefficient_file_roundtrip(tmp_path):
    F = PowerSeries([0.5 - 0.25j, 1, 1e-3j])
    path = tmp_path / "map.txt"
    write_coefficients(path, F, comment="test map")
    assert read_coefficients(path) == F
    dom = ConformalDomain.resolve(str(path))
    assert dom.name == "map"
    assert ConformalDomain.resolve("disk").map == Z


def test_parse_complex_lines():
    vals = parse_complex_lines("# header\n1 0\n\n0 -2  # trailing\n")
    np.testing.assert_array_equal(vals, [1, -2j])
    with pytest.raises(ValueError):
        parse_complex_lines("1 2 3\n")
    with pytest.raises(ValueError):
        parse_complex_lines("# nothing\n")
