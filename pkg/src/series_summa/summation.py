"""Generalized summation of trigonometric and numerical series.

A summation method is a family of damping factors: discrete families
max(0, 1 - k/n) and friends indexed by an integer order n, continuous
families phi(k r) indexed by a scale r -> 0+.  Applied to the terms of
a series they produce regularized sums: convergent series keep their
value (regularity), many divergent ones (geometric-type, termwise
differentiated Fourier series) acquire the classically expected one.

Every kernel of the mollification catalog with a closed multiplier also
acts as a continuous method with factors phi(k r).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, UnknownMethod
from .fourier import DoubleTrigSeries, TrigSeries, _eval_series_at, _lambda_weights
from .fourier import differentiate_series
from .kernels import KernelSpec, builtin

__all__ = [
    "SummationMethod",
    "GeneralizedSumResult",
    "method",
    "method_names",
    "summed_partial",
    "summed_value",
    "generalized_sum",
    "summed_derivative",
    "summed_double",
]

_TRUNC_TOL = 1e-14
_MAX_TERMS = 1_000_000
# consecutive negligible terms required before truncating an open-ended sum
_TRUNC_STREAK = 8


@dataclass(frozen=True)
class SummationMethod:
    """Damping-factor family factor(k, param), equal to 1 at k = 0.

    param_kind is 'continuous_r' (param is a scale r > 0, limit r -> 0+)
    or 'discrete_n' (param is an integer order n, limit n -> inf); order
    is the smoothness order of the family, which bounds the derivative
    orders it can regularize; source is set when the factors are the
    multiplier phi(k r) of a catalog kernel.
    """

    name: str
    param_kind: str
    factor: Callable[[float, float], float]
    formula: str
    order: int
    source: KernelSpec | None = None

    def factors(self, nmax: int, param) -> np.ndarray:
        """Vector of factors for modes 0..nmax."""
        check_param(self, param)
        out = np.empty(nmax + 1)
        out[0] = 1.0
        for k in range(1, nmax + 1):
            out[k] = self.factor(k, param)
        return out


@dataclass(frozen=True)
class GeneralizedSumResult:
    value: float
    schedule: tuple
    estimates: tuple
    converged: bool
    residual: float


def check_param(m: SummationMethod, param) -> None:
    if m.param_kind == "discrete_n":
        if not isinstance(param, (int, np.integer)) or param < 1:
            raise DomainError(
                f"method {m.name} needs an integer order n >= 1, got {param!r}")
    else:
        if not param > 0:
            raise DomainError(
                f"method {m.name} needs a scale r > 0, got {param!r}")


def _vp_factor(k: float, n: float) -> float:
    """n!^2 / ((n-k)! (n+k)!) as a running product, 0 beyond k = n."""
    if k > n:
        return 0.0
    v = 1.0
    for i in range(1, int(k) + 1):
        v *= (n - i + 1) / (n + i)
    return v


def _riemann_factor(k: float, r: float) -> float:
    u = k * r
    if u == 0.0:
        return 1.0
    return (math.sin(u) / u) ** 2


_KERNEL_METHODS = ("triangle", "quadratic", "poly", "moment", "hann", "hann2",
                   "sech", "sech2", "laplace", "exp_cos")


def _builtin_methods() -> dict[str, SummationMethod]:
    m = {
        "fejer": SummationMethod(
            "fejer", "discrete_n",
            lambda k, n: max(0.0, 1.0 - k / n), "max(0, 1 - k/n)", 1),
        "poisson": SummationMethod(
            "poisson", "continuous_r",
            lambda k, r: math.exp(-k * r), "exp(-k r)", 2,
            source=builtin("poisson")),
        "riemann": SummationMethod(
            "riemann", "continuous_r", _riemann_factor, "(sin(kr)/(kr))^2", 1),
        "gauss": SummationMethod(
            "gauss", "continuous_r",
            lambda k, r: math.exp(-(k * r) ** 2), "exp(-(k r)^2)", 4),
        "vallee_poussin": SummationMethod(
            "vallee_poussin", "discrete_n", _vp_factor,
            "(n!)^2 / ((n-k)! (n+k)!)", 2),
    }
    for name in _KERNEL_METHODS:
        spec = builtin(name)
        m[name] = SummationMethod(
            name, "continuous_r",
            lambda k, r, f=spec.phi_form: f(k * r),
            f"phi_{name}(k r)", spec.smoothness_p, source=spec)
    return m


_METHODS: dict[str, SummationMethod] | None = None


def _methods() -> dict[str, SummationMethod]:
    global _METHODS
    if _METHODS is None:
        _METHODS = _builtin_methods()
    return _METHODS


def method(name: str, extra=None) -> SummationMethod:
    """Look up a summation method; extra is the Riesz exponent p."""
    if name == "riesz":
        p = 1.0 if extra is None else float(extra)
        if p <= 0:
            raise DomainError(f"riesz exponent must be positive, got {p}")
        return SummationMethod(
            "riesz", "discrete_n",
            lambda k, n, p=p: max(0.0, 1.0 - (k / n) ** 2) ** p,
            f"(1 - (k/n)^2)^{p:g}", max(1, math.ceil(p)))
    if extra is not None:
        raise DomainError(f"method {name} takes no extra parameter")
    try:
        return _methods()[name]
    except KeyError:
        raise UnknownMethod(
            f"unknown method {name!r}; known: {', '.join(method_names())}") from None


def method_names() -> list[str]:
    return sorted(_methods()) + ["riesz"]


def summed_partial(s: TrigSeries, m: SummationMethod, param, x):
    """Damped sum over all stored modes of s at x (scalar or array)."""
    factors = m.factors(s.n_modes, param)
    b_full = np.concatenate([[0.0], s.b])
    return _eval_series_at(s, s.a, b_full, factors, x)


def _term_rule(source, x):
    """Normalize the input to (constant, term(k), known mode bound)."""
    if isinstance(source, TrigSeries):
        if x is None:
            raise DomainError("series input needs an evaluation point x")
        lam = math.pi / source.l
        a, b, nmax = source.a, source.b, source.n_modes

        def u(k: int) -> float:
            return (a[k] * math.cos(k * lam * x)
                    + b[k - 1] * math.sin(k * lam * x))

        return 0.5 * float(a[0]), u, nmax
    if callable(source):
        return 0.0, lambda k: float(source(k)), None
    seq = [float(v) for v in source]
    return 0.0, (lambda k: seq[k - 1]), len(seq)


def summed_value(source, m: SummationMethod, param, x=None) -> float:
    """One damped sum: sum_k factor(k, param) u_k.

    source is a TrigSeries (with a point x), a callable k -> u_k for
    k >= 1, or a sequence of terms.  Open-ended sums truncate once
    |factor u_k| k stays below 1e-14, or at 10^6 terms.
    """
    check_param(m, param)
    const, u, bound = _term_rule(source, x)
    total = const
    streak = 0
    k = 1
    while k <= _MAX_TERMS:
        if bound is not None and k > bound:
            break
        f = m.factor(k, param)
        if m.param_kind == "discrete_n" and f == 0.0 and k > param:
            break
        t = f * u(k)
        total += t
        if abs(t) * k < _TRUNC_TOL:
            streak += 1
            if streak >= _TRUNC_STREAK and bound is None:
                break
        else:
            streak = 0
        k += 1
    return total


def _default_schedule(m: SummationMethod) -> tuple:
    if m.param_kind == "discrete_n":
        return tuple(4 * 2 ** j for j in range(7))
    return tuple(0.2 * 0.5 ** j for j in range(7))


def _check_schedule(m: SummationMethod, sched: tuple) -> None:
    if len(sched) < 3:
        raise DomainError("schedule needs at least 3 entries")
    for p in sched:
        check_param(m, p)
    if m.param_kind == "discrete_n":
        if any(b <= a for a, b in zip(sched, sched[1:])):
            raise DomainError("discrete schedule must be strictly increasing")
    elif any(b >= a for a, b in zip(sched, sched[1:])):
        raise DomainError("continuous schedule must be strictly decreasing")


def generalized_sum(source, m: SummationMethod, x=None,
                    schedule: Sequence | None = None,
                    tol: float = 1e-6) -> GeneralizedSumResult:
    """Damped sums along a parameter schedule, with a convergence verdict.

    The schedule must move toward the method's limit point (r decreasing,
    n increasing).  converged compares the last two estimates against
    tol; value is always the last estimate, so a false verdict still
    reports where the schedule ended up.
    """
    sched = tuple(schedule) if schedule is not None else _default_schedule(m)
    _check_schedule(m, sched)
    estimates = tuple(float(summed_value(source, m, p, x)) for p in sched)
    residual = abs(estimates[-1] - estimates[-2])
    return GeneralizedSumResult(
        estimates[-1], sched, estimates, bool(residual <= tol), residual)


def summed_derivative(s: TrigSeries, m: SummationMethod, deriv_order: int,
                      param, x):
    """Damped sum of the termwise derivative series of s.

    A factor family of order p regularizes derivatives through p - 1;
    beyond that the damped sums need not settle, hence the warning.
    """
    if deriv_order >= max(m.order, 1):
        warnings.warn(
            f"method {m.name} has order {m.order}; damped sums of a "
            f"derivative of order {deriv_order} may not converge", stacklevel=2)
    return summed_partial(differentiate_series(s, deriv_order), m, param, x)


def summed_double(s: DoubleTrigSeries, m1: SummationMethod, m2: SummationMethod,
                  param, x: float, y: float) -> float:
    """Damped double sum with product factors factor1(m) factor2(n)."""
    fm = m1.factors(s.m_modes, param)
    fn = m2.factors(s.n_modes, param)
    u = math.pi * x / s.p
    v = math.pi * y / s.q
    mm = np.arange(s.m_modes + 1, dtype=float)
    nn = np.arange(s.n_modes + 1, dtype=float)
    cu, su = fm * np.cos(mm * u), fm * np.sin(mm * u)
    cv, sv = fn * np.cos(nn * v), fn * np.sin(nn * v)
    w = _lambda_weights(s.m_modes, s.n_modes)
    val = (cu @ (w * s.a) @ cv + cu @ (w * s.b) @ sv
           + su @ (w * s.c) @ cv + su @ (w * s.d) @ sv)
    return float(val)
