"""Legendre and Chebyshev families, Gram-Schmidt, and expansions."""

import math

import numpy as np
import pytest

from series_summa.errors import DegenerateInput, DomainError
from series_summa.orthopoly import (
    ExpansionCoeffs,
    associated_legendre,
    chebyshev,
    chebyshev_family,
    check_family,
    eval_series,
    expand,
    gram_schmidt,
    legendre,
    legendre_coefficients,
    legendre_derivative,
    legendre_family,
    legendre_norm_sq,
    _legendre_derivatives,
)
from series_summa.quadrature import integrate


def test_legendre_at_one_exact():
    for n in range(21):
        assert legendre(n, 1.0) == 1.0
        assert legendre(n, -1.0) == (-1.0) ** n


def test_legendre_small_values():
    assert abs(legendre(2, 0.0) + 0.5) < 1e-15
    assert legendre(0, 0.77) == 1.0
    assert legendre(1, 0.77) == 0.77


def test_legendre_array_argument():
    x = np.linspace(-1, 1, 7)
    vals = legendre(2, x)
    assert np.allclose(vals, 0.5 * (3 * x * x - 1), atol=1e-14)


def test_legendre_outside_interval_allowed():
    assert abs(legendre(2, 2.0) - 5.5) < 1e-12


def test_legendre_negative_degree_rejected():
    with pytest.raises(DomainError):
        legendre(-1, 0.0)


def test_legendre_coefficients_low_orders():
    assert legendre_coefficients(0).tolist() == [1.0]
    assert legendre_coefficients(2).tolist() == [-0.5, 0.0, 1.5]
    assert legendre_coefficients(3).tolist() == [0.0, -1.5, 0.0, 2.5]


def test_legendre_coefficients_exact_range_limit():
    legendre_coefficients(25)
    with pytest.raises(OverflowError):
        legendre_coefficients(26)


@pytest.mark.parametrize("n", range(16))
def test_legendre_recurrence_matches_coefficients(n):
    xs = np.linspace(-1.0, 1.0, 41)
    poly = np.polynomial.polynomial.polyval(xs, legendre_coefficients(n))
    assert np.max(np.abs(legendre(n, xs) - poly)) < 1e-9


def test_legendre_norms():
    assert legendre_norm_sq(0) == 2.0
    assert legendre_norm_sq(3) == 2.0 / 7.0
    v = integrate(lambda x: legendre(5, x) ** 2, -1.0, 1.0)
    assert abs(v - 2.0 / 11.0) < 1e-10


def test_legendre_derivative_values():
    assert legendre_derivative(1, 0.4) == 1.0
    assert abs(legendre_derivative(2, 0.3) - 0.9) < 1e-14
    assert legendre_derivative(0, 0.9) == 0.0


def test_legendre_derivative_matches_central_difference():
    h = 1e-6
    fd = (legendre(6, 0.5 + h) - legendre(6, 0.5 - h)) / (2 * h)
    assert abs(legendre_derivative(6, 0.5) - fd) < 1e-6


def test_associated_reduces_to_legendre():
    xs = np.linspace(-1.0, 1.0, 9)
    assert np.allclose(associated_legendre(4, 0, xs), legendre(4, xs), atol=1e-14)


def test_associated_first_order():
    # sqrt(1 - x^2) P1' = sqrt(1) at x = 0
    assert abs(associated_legendre(1, 1, 0.0) - 1.0) < 1e-15


def test_associated_orthogonality():
    v = integrate(lambda x: associated_legendre(3, 1, x)
                  * associated_legendre(5, 1, x), -1.0, 1.0)
    assert abs(v) < 1e-9


def test_associated_domain_checks():
    with pytest.raises(DomainError):
        associated_legendre(3, 4, 0.0)
    with pytest.raises(DomainError):
        associated_legendre(3, 1, 1.5)


def test_chebyshev_values():
    assert abs(chebyshev("first", 3, 0.5) + 1.0) < 1e-14
    for n in range(21):
        assert abs(chebyshev("first", n, 1.0) - 1.0) < 1e-12
    assert chebyshev("second", 1, 0.3) == 0.6


def test_chebyshev_matches_acos_form():
    xs = np.linspace(-0.99, 0.99, 21)
    for n in (2, 5, 9):
        want = np.cos(n * np.arccos(xs))
        assert np.max(np.abs(chebyshev("first", n, xs) - want)) < 1e-12


def test_chebyshev_bad_kind():
    with pytest.raises(ValueError):
        chebyshev("third", 2, 0.0)


def test_chebyshev_weighted_orthogonality():
    fam = chebyshev_family("first")
    g = lambda x: fam.weight(x) * chebyshev("first", 2, x) * chebyshev("first", 4, x)
    assert abs(integrate(g, -1.0, 1.0)) < 1e-7
    h = lambda x: fam.weight(x) * chebyshev("first", 3, x) ** 2
    assert abs(integrate(h, -1.0, 1.0) - 0.5 * math.pi) < 1e-7


def test_chebyshev_second_family_norms():
    fam = chebyshev_family("second")
    rep = check_family(fam, 4)
    assert rep["max_offdiag"] < 1e-9
    assert rep["max_norm_rel_err"] < 1e-9


def test_gram_schmidt_monomials_give_normalized_legendre():
    gs = gram_schmidt([lambda x: 1.0, lambda x: x, lambda x: x * x],
                      (-1.0, 1.0))
    xs = np.linspace(-1.0, 1.0, 11)
    want0 = 1.0 / math.sqrt(2.0)
    want1 = math.sqrt(1.5)
    want2 = math.sqrt(2.5)
    for x in xs:
        assert abs(gs[0](x) - want0) < 1e-10
        assert abs(gs[1](x) - want1 * x) < 1e-10
        assert abs(gs[2](x) - want2 * 0.5 * (3 * x * x - 1)) < 1e-10


def test_gram_schmidt_idempotent_on_orthonormal_input():
    base = [lambda x: 1.0 / math.sqrt(2.0),
            lambda x: math.sqrt(1.5) * x]
    out = gram_schmidt(base, (-1.0, 1.0))
    for x in (-0.7, 0.1, 0.9):
        assert abs(out[0](x) - base[0](x)) < 1e-10
        assert abs(out[1](x) - base[1](x)) < 1e-10


def test_gram_schmidt_chebyshev_weight():
    fam = chebyshev_family("first")
    gs = gram_schmidt([lambda x: 1.0, lambda x: x, lambda x: x * x],
                      (-1.0, 1.0), weight=fam.weight)
    c0 = 1.0 / math.sqrt(math.pi)
    c = 1.0 / math.sqrt(0.5 * math.pi)
    for x in (-0.8, -0.2, 0.4, 0.9):
        assert abs(gs[0](x) - c0) < 1e-6
        assert abs(gs[1](x) - c * chebyshev("first", 1, x)) < 1e-6
        assert abs(gs[2](x) - c * chebyshev("first", 2, x)) < 1e-6


def test_gram_schmidt_rejects_dependent_input():
    with pytest.raises(DegenerateInput):
        gram_schmidt([lambda x: 1.0, lambda x: x, lambda x: 2.0 + 3.0 * x],
                     (-1.0, 1.0))


def test_expand_quadratic():
    coeffs = expand(lambda x: x * x, legendre_family(), 4)
    assert np.allclose(coeffs.c, [1.0 / 3.0, 0.0, 2.0 / 3.0, 0.0, 0.0],
                       atol=1e-10)


def test_expand_reproduces_family_member():
    coeffs = expand(lambda x: legendre(7, x), legendre_family(), 8)
    want = np.zeros(9)
    want[7] = 1.0
    assert np.allclose(coeffs.c, want, atol=1e-9)


def test_expand_even_function_kills_odd_modes():
    coeffs = expand(abs, legendre_family(), 5)
    assert abs(coeffs.c[1]) < 1e-10
    assert abs(coeffs.c[3]) < 1e-10


def test_eval_series_point_value():
    coeffs = expand(lambda x: x * x, legendre_family(), 4)
    assert abs(eval_series(coeffs, 0.4) - 0.16) < 1e-12


def test_eval_series_zero():
    coeffs = ExpansionCoeffs(legendre_family(), np.zeros(3))
    assert eval_series(coeffs, 0.3) == 0.0


def test_eval_series_exponential():
    coeffs = expand(math.exp, legendre_family(), 20)
    assert abs(eval_series(coeffs, 0.0) - 1.0) < 1e-10


def test_legendre_family_orthogonality_matrix():
    rep = check_family(legendre_family(), 12)
    assert rep["max_offdiag"] <= 1e-10
    assert rep["max_norm_rel_err"] <= 1e-10


@pytest.mark.parametrize("n", range(31))
def test_legendre_bounded_on_interval(n):
    xs = np.linspace(-1.0, 1.0, 1001)
    assert np.max(np.abs(legendre(n, xs))) <= 1.0 + 1e-12


@pytest.mark.parametrize("n", range(11))
def test_legendre_differential_equation(n):
    xs = np.linspace(-0.95, 0.95, 39)
    p = legendre(n, xs)
    dp = legendre_derivative(n, xs)
    d2p = _legendre_derivatives(n, 2, xs)
    resid = (1.0 - xs * xs) * d2p - 2.0 * xs * dp + n * (n + 1) * p
    assert np.max(np.abs(resid)) <= 1e-5


@pytest.mark.parametrize("n", range(16))
def test_legendre_sign_changes(n):
    xs = np.linspace(-1.0, 1.0, 10_000)
    signs = np.sign(legendre(n, xs))
    signs = signs[signs != 0]
    changes = int(np.sum(signs[1:] != signs[:-1]))
    assert changes == n
