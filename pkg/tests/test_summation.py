"""Summation factors, generalized sums, and regularity of the methods."""

import math

import numpy as np
import pytest

from series_summa.errors import DomainError, UnknownMethod
from series_summa.fourier import DoubleTrigSeries, TrigSeries
from series_summa.kernels import builtin, periodic_smooth
from series_summa.summation import (
    generalized_sum,
    method,
    method_names,
    summed_derivative,
    summed_double,
    summed_partial,
    summed_value,
)


def square_wave_series(n: int) -> TrigSeries:
    """Closed-form series of (pi/4) sgn(sin x): odd sine modes 1/k."""
    b = np.zeros(n)
    for k in range(1, n + 1, 2):
        b[k - 1] = 1.0 / k
    return TrigSeries(l=math.pi, a=np.zeros(n + 1), b=b)


def alternating_cosine_series(n: int) -> TrigSeries:
    """a_k = (-1)^(k+1): the boundary case summable only generalized."""
    k = np.arange(1, n + 1, dtype=float)
    a = np.concatenate([[0.0], (-1.0) ** (k + 1)])
    return TrigSeries(l=math.pi, a=a, b=np.zeros(n))


def sawtooth_half_series(n: int) -> TrigSeries:
    """Closed-form series of x/2 on [-pi, pi]."""
    k = np.arange(1, n + 1, dtype=float)
    return TrigSeries(l=math.pi, a=np.zeros(n + 1),
                      b=(-1.0) ** (k + 1) / k)


def test_factor_values():
    assert method("fejer").factor(3, 10) == 0.7
    assert abs(method("poisson").factor(2, 0.5) - math.exp(-1.0)) < 1e-15
    assert method("riemann").factor(0, 0.3) == 1.0
    assert method("riesz", 2.0).factor(5, 5) == 0.0


def test_factors_vector_normalization():
    # Signed profiles (vanishing-moment and damped-cosine) overshoot 1;
    # everything else is a positive kernel with factors in [0, 1].
    signed = {"moment", "exp_cos"}
    for name in method_names():
        m = method(name, 2.0) if name == "riesz" else method(name)
        param = 8 if m.param_kind == "discrete_n" else 0.25
        f = m.factors(6, param)
        assert f[0] == 1.0
        assert f.shape == (7,)
        if name in signed:
            assert np.max(np.abs(f)) <= 2.0
        else:
            assert np.all(f <= 1.0 + 1e-12) and np.all(f >= 0.0)


def test_method_lookup_errors():
    with pytest.raises(UnknownMethod):
        method("cesaro")
    with pytest.raises(DomainError):
        method("riesz", -1.0)
    with pytest.raises(DomainError):
        method("poisson", 2.0)


def test_param_kind_enforcement():
    s = square_wave_series(8)
    with pytest.raises(DomainError):
        summed_partial(s, method("fejer"), 0.5, 0.0)
    with pytest.raises(DomainError):
        summed_partial(s, method("fejer"), 0, 0.0)
    with pytest.raises(DomainError):
        summed_partial(s, method("poisson"), -0.1, 0.0)


def test_fejer_mean_respects_sup_bound():
    s = square_wave_series(64)
    xs = np.linspace(-math.pi, math.pi, 201)
    for x in xs:
        v = summed_partial(s, method("fejer"), 16, float(x))
        assert abs(v) <= 0.25 * math.pi + 1e-9


def test_poisson_alternating_cosines():
    # Abel value of sum (-1)^(k-1) rho^k at rho = 0.9 is 9/19.
    s = alternating_cosine_series(400)
    v = summed_partial(s, method("poisson"), -math.log(0.9), 0.0)
    assert abs(v - 9.0 / 19.0) < 1e-12


def test_summed_partial_zero_series():
    s = TrigSeries(l=1.0, a=np.zeros(5), b=np.zeros(4))
    assert summed_partial(s, method("poisson"), 0.3, 0.4) == 0.0


def test_summed_value_callable_source():
    v = summed_value(lambda k: (-1.0) ** (k + 1), method("poisson"), 0.01)
    want = 1.0 / (math.exp(0.01) + 1.0)
    assert abs(v - want) < 1e-9


def test_summed_value_sequence_source():
    seq = [(-1.0) ** (k + 1) for k in range(1, 201)]
    v = summed_value(seq, method("poisson"), 0.05)
    want = sum(u * math.exp(-0.05 * k) for k, u in enumerate(seq, start=1))
    assert abs(v - want) < 1e-12


def test_generalized_sum_grandi():
    res = generalized_sum(lambda k: (-1.0) ** (k + 1), method("poisson"),
                          schedule=(0.1, 0.01, 1e-3), tol=1e-2)
    assert abs(res.value - 0.5) < 5e-3
    assert res.converged
    assert len(res.estimates) == 3
    assert res.residual == abs(res.estimates[-1] - res.estimates[-2])


def test_generalized_sum_alternating_integers():
    res = generalized_sum(lambda k: (-1.0) ** (k + 1) * k, method("poisson"),
                          schedule=(0.1, 0.01, 1e-3), tol=1e-2)
    assert abs(res.value - 0.25) < 5e-3


def test_generalized_sum_default_schedule():
    res = generalized_sum(lambda k: (-1.0) ** (k + 1), method("poisson"),
                          tol=1e-2)
    assert abs(res.value - 0.5) < 5e-3
    assert len(res.estimates) == len(res.schedule) >= 3


def test_generalized_sum_unconverged_flag():
    # A two-point refinement cannot meet a 1e-12 tolerance here.
    res = generalized_sum(lambda k: (-1.0) ** (k + 1), method("poisson"),
                          schedule=(0.4, 0.2, 0.1), tol=1e-12)
    assert not res.converged


def test_schedule_validation():
    src = lambda k: 0.0
    with pytest.raises(DomainError):
        generalized_sum(src, method("poisson"), schedule=(0.1, 0.01))
    with pytest.raises(DomainError):
        generalized_sum(src, method("poisson"), schedule=(0.01, 0.1, 0.001))
    with pytest.raises(DomainError):
        generalized_sum(src, method("fejer"), schedule=(16, 8, 4))
    with pytest.raises(DomainError):
        generalized_sum(src, method("fejer"), schedule=(0.1, 0.01, 1e-3))


@pytest.mark.parametrize("name", method_names())
def test_regularity_on_convergent_series(name):
    # Every method must reproduce a classically convergent sum.
    n = 400
    k = np.arange(1, n + 1, dtype=float)
    s = TrigSeries(l=math.pi, a=np.zeros(n + 1), b=np.sin(k) / k ** 3)
    x = 1.0
    classical = float(np.sum(s.b * np.sin(k * x)))
    m = method(name, 2.0) if name == "riesz" else method(name)
    param = 1024 if m.param_kind == "discrete_n" else 1e-3
    assert abs(summed_partial(s, m, param, x) - classical) < 5e-3


@pytest.mark.parametrize("name", method_names())
def test_all_methods_vanish_with_sine_series_at_origin(name):
    s = square_wave_series(32)
    m = method(name, 2.0) if name == "riesz" else method(name)
    param = 8 if m.param_kind == "discrete_n" else 0.1
    assert summed_partial(s, m, param, 0.0) == 0.0


def test_riemann_matches_triangle_periodization():
    from series_summa.fourier import trig_coefficients
    s = trig_coefficients(abs, math.pi, 30)
    r = 0.37
    for x in (0.0, 1.1, 2.6):
        lhs = summed_partial(s, method("riemann"), r, x)
        rhs = periodic_smooth(s, builtin("triangle"), 2.0 * r, x)
        assert abs(lhs - rhs) < 1e-12


def test_poisson_method_matches_kernel_periodization():
    s = sawtooth_half_series(24)
    for x in (0.4, 1.7):
        lhs = summed_partial(s, method("poisson"), 0.2, x)
        rhs = periodic_smooth(s, builtin("poisson"), 0.2, x)
        assert abs(lhs - rhs) < 1e-12


def test_summed_derivative_first_order():
    n = 1000
    s = sawtooth_half_series(n)
    r, x = 0.05, 0.5
    rho = math.exp(-r)
    denom = 1.0 + 2.0 * rho * math.cos(x) + rho * rho
    want = rho * (rho + math.cos(x)) / denom
    v = summed_derivative(s, method("poisson"), 1, r, x)
    assert abs(v - want) < 1e-10
    assert abs(v - 0.5) < 0.02


def test_summed_derivative_second_order_warns():
    n = 1000
    s = sawtooth_half_series(n)
    r, x = 0.05, 0.5
    rho = math.exp(-r)
    denom = 1.0 + 2.0 * rho * math.cos(x) + rho * rho
    want = rho * math.sin(x) * (rho * rho - 1.0) / denom ** 2
    with pytest.warns(UserWarning):
        v = summed_derivative(s, method("poisson"), 2, r, x)
    assert abs(v - want) < 1e-10
    assert abs(v) < 5e-3


def test_summed_derivative_eigenfunction():
    b = np.zeros(3)
    b[2] = 1.0
    s = TrigSeries(l=math.pi, a=np.zeros(4), b=b)
    x = 0.7
    v = summed_derivative(s, method("gauss"), 2, 1e-4, x)
    assert abs(v + 9.0 * math.sin(3.0 * x)) < 1e-6


def product_series(n: int) -> DoubleTrigSeries:
    m = np.arange(n + 1, dtype=float)
    sign = np.where(m % 2 == 0, 1.0, -1.0)
    line = np.zeros(n + 1)
    line[1:] = 2.0 * -sign[1:] / m[1:]
    d = np.outer(line, line)
    d[0, :] = 0.0
    d[:, 0] = 0.0
    zeros = np.zeros_like(d)
    return DoubleTrigSeries(p=math.pi, q=math.pi, a=zeros, b=zeros,
                            c=zeros, d=d)


def test_summed_double_separable_factorization():
    n = 200
    s = product_series(n)
    k = np.arange(1, n + 1, dtype=float)
    line = TrigSeries(l=math.pi, a=np.zeros(n + 1),
                      b=2.0 * (-1.0) ** (k + 1) / k)
    m = method("poisson")
    r, x, y = 0.05, 1.0, 1.0
    v = summed_double(s, m, m, r, x, y)
    want = summed_partial(line, m, r, x) * summed_partial(line, m, r, y)
    assert abs(v - want) < 1e-10


def test_summed_double_refinement_converges():
    s = product_series(500)
    m = method("poisson")
    errs = [abs(summed_double(s, m, m, r, 1.0, 1.0) - 1.0)
            for r in (0.2, 0.1, 0.05)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[-1] < 0.1


def test_summed_double_zero_series():
    z = np.zeros((4, 4))
    s = DoubleTrigSeries(p=1.0, q=1.0, a=z, b=z, c=z, d=z)
    assert summed_double(s, method("poisson"), method("poisson"),
                         0.1, 0.3, 0.3) == 0.0
