"""Adaptive quadrature, improper integrals, and the rectangle rule."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from series_summa.errors import NonConvergence
from series_summa.quadrature import (
    QuadConfig,
    composite_gauss_legendre,
    integrate,
    integrate_improper,
    integrate_rect2d,
)


def test_sin_squared_quarter_pi():
    v = integrate(lambda x: math.sin(x) ** 2, 0.0, 0.5 * math.pi)
    assert abs(v - 0.25 * math.pi) < 1e-12


def test_zero_integrand():
    assert integrate(lambda x: 0.0, 0.0, 1.0) == 0.0


def test_equal_bounds():
    assert integrate(lambda x: math.exp(x), 2.0, 2.0) == 0.0


def test_reversed_bounds_flip_sign():
    fwd = integrate(math.cos, 0.0, 1.2)
    assert abs(integrate(math.cos, 1.2, 0.0) + fwd) < 1e-14


def test_legendre_product_orthogonality():
    p2 = lambda x: 0.5 * (3 * x * x - 1)
    p3 = lambda x: 0.5 * (5 * x ** 3 - 3 * x)
    v = integrate(lambda x: p2(x) * p3(x), -1.0, 1.0)
    assert abs(v) < 1e-12


def test_jump_integrand_resolved():
    # Step at an irrational point: a jump must not fool the error estimate.
    c = 1.0 / 3.0
    v = integrate(lambda x: 1.0 if x > c else 0.0, 0.0, 1.0)
    assert abs(v - (1.0 - c)) < 1e-9


def test_integrable_endpoint_singularity():
    v = integrate(lambda x: 1.0 / math.sqrt(x) if x > 0 else 0.0, 0.0, 1.0)
    assert abs(v - 2.0) < 1e-8


def test_divergent_integrand_raises():
    with pytest.raises(NonConvergence):
        integrate(lambda x: 1.0 / x if x > 0 else 0.0, 0.0, 1.0)


def test_improper_inverse_square():
    v = integrate_improper(lambda x: x ** -2, 1.0)
    assert abs(v - 1.0) < 1e-9


def test_improper_gaussian():
    v = integrate_improper(lambda t: math.exp(-t * t), 0.0)
    assert abs(v - 0.5 * math.sqrt(math.pi)) < 1e-9


def test_improper_slow_oscillatory_sine_quotient():
    # Decays like 1/x only: documented accuracy for this shape is ~1e-3,
    # and the tail tolerance must be set accordingly.
    f = lambda x: math.sin(x) / x if x > 1e-12 else 1.0
    cfg = QuadConfig(abs_tol=1e-6, rel_tol=1e-6, tail_cutoff_tol=1e-3)
    v = integrate_improper(f, 0.0, cfg)
    assert abs(v - 0.5 * math.pi) < 1e-3


def test_rect2d_sine_product():
    v = integrate_rect2d(lambda x, y: math.sin(x) * math.sin(y),
                         (0.0, math.pi, 0.0, math.pi))
    assert abs(v - 4.0) < 1e-8


def test_rect2d_odd_weighted_product():
    v = integrate_rect2d(lambda x, y: x * y * math.sin(x) * math.sin(y),
                         (-math.pi, math.pi, -math.pi, math.pi))
    assert abs(v - 4.0 * math.pi ** 2) < 1e-6


def test_rect2d_zero():
    v = integrate_rect2d(lambda x, y: 0.0, (0.0, 1.0, 0.0, 2.0))
    assert v == 0.0


@settings(max_examples=25, deadline=None)
@given(st.lists(st.floats(-3.0, 3.0), min_size=3, max_size=3),
       st.lists(st.floats(-3.0, 3.0), min_size=3, max_size=3),
       st.floats(-2.0, 2.0), st.floats(-2.0, 2.0))
def test_linearity(c1, c2, alpha, beta):
    f = lambda x: c1[0] + c1[1] * x + c1[2] * x * x
    g = lambda x: c2[0] + c2[1] * math.sin(x) + c2[2] * x
    combo = integrate(lambda x: alpha * f(x) + beta * g(x), 0.0, 2.0)
    parts = alpha * integrate(f, 0.0, 2.0) + beta * integrate(g, 0.0, 2.0)
    assert abs(combo - parts) < 2e-10 * (1.0 + abs(combo))


@settings(max_examples=25, deadline=None)
@given(st.floats(0.1, 1.9))
def test_interval_additivity(mid):
    f = lambda x: math.exp(-x) * math.cos(3.0 * x)
    whole = integrate(f, 0.0, 2.0)
    split = integrate(f, 0.0, mid) + integrate(f, mid, 2.0)
    assert abs(whole - split) < 2e-10


@pytest.mark.parametrize("m", range(6))
def test_wallis_even_powers(m):
    v = integrate(lambda x: math.sin(x) ** (2 * m), 0.0, 0.5 * math.pi)
    want = math.factorial(2 * m) / (2 ** (2 * m) * math.factorial(m) ** 2)
    want *= 0.5 * math.pi
    assert abs(v - want) < 1e-10


def test_tolerance_config_is_honored():
    loose = integrate(lambda x: math.cos(10.0 * x) ** 2, 0.0, 3.0,
                      QuadConfig(abs_tol=1e-4, rel_tol=1e-4))
    tight = integrate(lambda x: math.cos(10.0 * x) ** 2, 0.0, 3.0)
    exact = 1.5 + math.sin(60.0) / 40.0
    assert abs(tight - exact) < 1e-12
    assert abs(loose - exact) < 1e-4


def test_composite_gl_weights_sum_to_length():
    nodes, weights = composite_gauss_legendre(-2.0, 5.0, panels=9, order=12)
    assert nodes.shape == weights.shape == (9 * 12,)
    assert abs(weights.sum() - 7.0) < 1e-12
    assert nodes.min() > -2.0 and nodes.max() < 5.0


def test_composite_gl_exact_on_matching_degree():
    # Order-n Gauss is exact for polynomials of degree 2n - 1 per panel.
    nodes, weights = composite_gauss_legendre(0.0, 1.0, panels=3, order=4)
    v = float(weights @ nodes ** 7)
    assert abs(v - 1.0 / 8.0) < 1e-14
