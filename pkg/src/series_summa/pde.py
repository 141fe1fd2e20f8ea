"""Series solutions of string, membrane and Helmholtz boundary problems.

Fixed-end string on [0, l]: u_tt = a^2 u_xx + f(x, t) with zero
displacement at both ends.  Fixed-edge membrane on [0, l1] x [0, l2]:
the same with the plane Laplacian.  Helmholtz problem with Dirichlet
data: u_xx + u_yy + theta^2 u = -F(x, y).

Every solver expands the data over the sine eigenbasis sin(lambda_k x)
(and sin(lambda_2m y) for two variables), optionally damps mode (k, m)
by the kernel multiplier values phi(lambda_1k r) phi(lambda_2m r), and
returns either a ModalSolution (free vibration), a solution object
(Helmholtz) or a plain evaluator (forced response).  r = 0 keeps the
classical series; r > 0 gives the mollified family whose r -> 0+ limit
is the generalized solution, reported as the approximant rather than
the limit.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import backend
from .errors import DomainError, NonConvergence, ResonanceError
from .fourier import _GL_ORDER, _PANEL_PHASE, _coeffs_batch, trig_coefficients
from .kernels import KernelSpec, _phi_values, builtin
from .quadrature import QuadConfig, composite_gauss_legendre, integrate

__all__ = [
    "StringProblem",
    "MembraneProblem",
    "HelmholtzProblem",
    "ModalSolution",
    "HelmholtzSolution",
    "string_free",
    "string_forced",
    "string_green",
    "membrane_free",
    "membrane_forced",
    "helmholtz_green",
    "helmholtz_solve",
    "mode_energies",
]

# theta counts as resonant when min |lambda_km^2 - theta^2| falls below this
_RESONANCE_TOL = 1e-9
# per-axis node budget of the 2-D coefficient sweep
_MAX_AXIS_NODES = 4096


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise DomainError(msg)


@dataclass(frozen=True)
class StringProblem:
    """Fixed-end string: length l, wave speed a, initial shape chi,
    initial velocity psi, optional force density f(x, t)."""

    l: float
    a: float
    chi: Callable[[float], float]
    psi: Callable[[float], float]
    f: Callable[[float, float], float] | None = None

    def __post_init__(self):
        _require(math.isfinite(self.l) and self.l > 0,
                 "length l must be finite and positive")
        _require(math.isfinite(self.a) and self.a > 0,
                 "wave speed a must be finite and positive")


@dataclass(frozen=True)
class MembraneProblem:
    """Fixed-edge rectangular membrane with sides l1, l2 and wave speed a.

    chi and psi map (x, y) to the initial shape and velocity; f, when
    present, is the force density f(x, y, t).
    """

    l1: float
    l2: float
    a: float
    chi: Callable[[float, float], float]
    psi: Callable[[float, float], float]
    f: Callable[[float, float, float], float] | None = None

    def __post_init__(self):
        _require(math.isfinite(self.l1) and self.l1 > 0,
                 "side l1 must be finite and positive")
        _require(math.isfinite(self.l2) and self.l2 > 0,
                 "side l2 must be finite and positive")
        _require(math.isfinite(self.a) and self.a > 0,
                 "wave speed a must be finite and positive")


@dataclass(frozen=True)
class HelmholtzProblem:
    """Dirichlet Helmholtz problem on the rectangle (0, l1) x (0, l2):
    u_xx + u_yy + theta^2 u = -F(x, y), u = 0 on the boundary."""

    l1: float
    l2: float
    theta: float
    F: Callable[[float, float], float]

    def __post_init__(self):
        _require(math.isfinite(self.l1) and self.l1 > 0,
                 "side l1 must be finite and positive")
        _require(math.isfinite(self.l2) and self.l2 > 0,
                 "side l2 must be finite and positive")
        _require(math.isfinite(self.theta) and self.theta >= 0,
                 "theta must be finite and nonnegative")


@dataclass(frozen=True)
class ModalSolution:
    """Modal expansion of a free vibration.

    chi_coeffs and psi_coeffs are the raw sine coefficients of the
    initial data (index 0 is mode 1); factors holds the damping values
    at the recorded scale r, all ones when r = 0.  kind 'string' stores
    1-D arrays and evaluates as eval(x, t); kind 'membrane' stores
    (M, N) arrays and evaluates as eval(x, y, t).
    """

    kind: str
    geometry: tuple[float, ...]
    wave_speed: float
    chi_coeffs: np.ndarray
    psi_coeffs: np.ndarray
    factors: np.ndarray
    r: float

    def __post_init__(self):
        _require(self.kind in ("string", "membrane"),
                 f"unknown solution kind {self.kind!r}")
        _require(self.r >= 0, "scale r must be nonnegative")
        for arr in (self.chi_coeffs, self.psi_coeffs, self.factors):
            _require(bool(np.all(np.isfinite(arr))),
                     "modal coefficients must be finite")

    @property
    def truncation(self) -> tuple[int, ...]:
        return self.chi_coeffs.shape

    def _lambdas(self) -> np.ndarray:
        if self.kind == "string":
            (l,) = self.geometry
            return np.arange(1, len(self.chi_coeffs) + 1) * (math.pi / l)
        l1, l2 = self.geometry
        m, n = self.chi_coeffs.shape
        lam1 = np.arange(1, m + 1) * (math.pi / l1)
        lam2 = np.arange(1, n + 1) * (math.pi / l2)
        return np.sqrt(lam1[:, None] ** 2 + lam2[None, :] ** 2)

    def _state(self, t: float) -> np.ndarray:
        w = self.wave_speed * self._lambdas()
        return self.factors * (self.chi_coeffs * np.cos(w * t)
                               + self.psi_coeffs / w * np.sin(w * t))

    def eval(self, *coords):
        """Displacement at a point: eval(x, t) for a string,
        eval(x, y, t) for a membrane; x and y may be arrays."""
        if self.kind == "string":
            _require(len(coords) == 2, "string solution takes (x, t)")
            x, t = coords
            return _sine_eval(self._state(float(t)), self.geometry[0], x)
        _require(len(coords) == 3, "membrane solution takes (x, y, t)")
        x, y, t = coords
        l1, l2 = self.geometry
        return _tensor_eval(self._state(float(t)), l1, l2, x, y)


def mode_energies(sol: ModalSolution, t: float) -> np.ndarray:
    """Per-mode energy (du_k/dt)^2 + (a lambda_k u_k)^2 at time t.

    Every free mode is an exact harmonic oscillator, so the returned
    values do not depend on t: factors^2 ((a lambda_k chi_k)^2 + psi_k^2).
    """
    w = sol.wave_speed * sol._lambdas()
    c, s = np.cos(w * t), np.sin(w * t)
    u = sol.factors * (sol.chi_coeffs * c + sol.psi_coeffs / w * s)
    v = sol.factors * (-w * sol.chi_coeffs * s + sol.psi_coeffs * c)
    return v * v + (w * u) ** 2


def _sine_eval(coeffs: np.ndarray, l: float, x):
    """sum_k coeffs[k-1] sin(k pi x / l), exact zero at x = 0 and x = l."""
    arr = np.asarray(x, dtype=float)
    flat = arr.ravel()
    n = len(coeffs)
    a = np.zeros(n + 1)
    b = np.concatenate(([0.0], coeffs))
    out = backend.series_eval(a, b, np.ones(n + 1), flat * (math.pi / l))
    edge = (flat == 0.0) | (flat == l)
    if edge.any():
        out = np.where(edge, 0.0, out)
    out = out.reshape(arr.shape)
    return float(out) if arr.ndim == 0 else out


def _sine_matrix(x, l: float, n_modes: int) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    k = np.arange(1, n_modes + 1)
    s = np.sin(np.outer(arr, k) * (math.pi / l))
    s[(arr == 0.0) | (arr == l)] = 0.0
    return s


def _tensor_eval(c: np.ndarray, l1: float, l2: float, x, y):
    """sum_km c[k-1, m-1] sin(k pi x / l1) sin(m pi y / l2).

    1-D arrays x, y give the full tensor grid of shape (len(x), len(y));
    scalars collapse the matching axis.
    """
    out = _sine_matrix(x, l1, c.shape[0]) @ c @ _sine_matrix(y, l2, c.shape[1]).T
    x_scalar = np.asarray(x).ndim == 0
    y_scalar = np.asarray(y).ndim == 0
    if x_scalar and y_scalar:
        return float(out[0, 0])
    if x_scalar:
        return out[0]
    if y_scalar:
        return out[:, 0]
    return out


def _axis_factors(n: int, l: float, r: float, kern: KernelSpec,
                  cfg: QuadConfig | None) -> np.ndarray:
    """phi(lambda_k r) for k = 1..n; all ones when r = 0."""
    if r == 0.0:
        return np.ones(n)
    lam = np.arange(1, n + 1) * (math.pi / l)
    return _phi_values(kern, lam * r, cfg)


def _warn_smoothness(kern: KernelSpec, needed: int, context: str) -> None:
    if kern.smoothness_p < needed:
        warnings.warn(
            f"kernel {kern.name!r} has smoothness order {kern.smoothness_p} < "
            f"{needed}; the damped {context} series may converge too slowly",
            stacklevel=3)


def string_free(p: StringProblem, N: int, r: float = 0.0,
                k: KernelSpec | None = None,
                cfg: QuadConfig | None = None) -> ModalSolution:
    """Free vibration of the fixed-end string.

    u(x, t) = sum_k phi(lambda_k r) (chi_k cos(a lambda_k t)
    + psi_k / (a lambda_k) sin(a lambda_k t)) sin(lambda_k x) with the
    half-range sine coefficients chi_k, psi_k computed by quadrature.
    """
    _require(N >= 1, "N must be at least 1")
    _require(r >= 0, "scale r must be nonnegative")
    kern = k or builtin("gauss")
    if r > 0:
        _warn_smoothness(kern, 4, "free-vibration")
    chi = trig_coefficients(p.chi, p.l, N, mode="sine_only", cfg=cfg).b
    psi = trig_coefficients(p.psi, p.l, N, mode="sine_only", cfg=cfg).b
    return ModalSolution(kind="string", geometry=(p.l,), wave_speed=p.a,
                         chi_coeffs=chi, psi_coeffs=psi,
                         factors=_axis_factors(N, p.l, r, kern, cfg), r=r)


def string_forced(p: StringProblem, N: int, r: float = 0.0,
                  k: KernelSpec | None = None,
                  t_quad: QuadConfig | None = None,
                  harmonic_omega: float | None = None):
    """Duhamel response of the loaded string at rest: returns u(x, t).

    u(x, t) = sum_k phi_k / (a lambda_k)
    [int_0^t sin(a lambda_k (t - tau)) f_k(tau) dtau] sin(lambda_k x),

    where f_k(tau) are the sine coefficients of f(., tau).  The time
    integral runs per mode by adaptive quadrature under t_quad, which
    also governs the coefficient sweeps; slices f(., tau) are swept once
    per requested tau and cached.  Passing harmonic_omega asserts
    f(x, t) = g(x) sin(harmonic_omega t); the time integral is then
    taken in closed form and no time quadrature happens.
    """
    _require(p.f is not None, "problem has no load f")
    _require(N >= 1, "N must be at least 1")
    _require(r >= 0, "scale r must be nonnegative")
    kern = k or builtin("gauss")
    if r > 0:
        _warn_smoothness(kern, 3, "forced-response")
    cfg = t_quad or QuadConfig()
    load = p.f
    w = p.a * np.arange(1, N + 1) * (math.pi / p.l)
    weight = _axis_factors(N, p.l, r, kern, t_quad) / w

    if harmonic_omega is not None:
        om = float(harmonic_omega)
        _require(om > 0, "harmonic_omega must be positive")
        gap = w * w - om * om
        if np.min(np.abs(gap)) < _RESONANCE_TOL:
            raise ResonanceError(
                "harmonic load frequency coincides with a retained mode")
        # sin(om t) = 1 at t = pi/(2 om) recovers the spatial profile g
        prof = lambda x: load(x, 0.5 * math.pi / om)
        g = trig_coefficients(prof, p.l, N, mode="sine_only", cfg=t_quad).b

        def u_harmonic(x, t: float):
            _require(t >= 0, "time t must be nonnegative")
            duh = g * (w * math.sin(om * t) - om * np.sin(w * t)) / gap
            return _sine_eval(weight * duh, p.l, x)

        return u_harmonic

    slice_cache: dict[float, np.ndarray] = {}

    def load_coeffs(tau: float) -> np.ndarray:
        got = slice_cache.get(tau)
        if got is None:
            got = _coeffs_batch(lambda z: load(z * p.l / math.pi, tau),
                                N, "sine_only", cfg)[1]
            slice_cache[tau] = got
        return got

    mode_cache: dict[float, np.ndarray] = {}

    def u(x, t: float):
        _require(t >= 0, "time t must be nonnegative")
        t = float(t)
        vals = mode_cache.get(t)
        if vals is None:
            vals = np.array([
                integrate(lambda tau, wj=w[j]: math.sin(wj * (t - tau))
                          * load_coeffs(tau)[j], 0.0, t, cfg)
                for j in range(N)
            ])
            mode_cache[t] = vals
        return _sine_eval(weight * vals, p.l, x)

    return u


def string_green(l: float, a: float, x: float, xi: float, dt: float,
                 N: int, r: float, k: KernelSpec | None = None) -> float:
    """Damped influence value of the string at time lag dt.

    G_r(x, xi, dt) = (2 / (l a)) sum_k (phi(lambda_k r) / lambda_k)
    sin(lambda_k xi) sin(lambda_k x) sin(a lambda_k dt): the response at
    x to a unit impulse at xi.  r > 0 is required; the undamped series
    does not converge pointwise.
    """
    _require(math.isfinite(l) and l > 0, "length l must be finite and positive")
    _require(math.isfinite(a) and a > 0, "wave speed a must be finite and positive")
    _require(0.0 < x < l and 0.0 < xi < l,
             "x and xi must lie strictly inside (0, l)")
    _require(dt >= 0, "time lag dt must be nonnegative")
    _require(r > 0, "scale r must be positive")
    _require(N >= 1, "N must be at least 1")
    kern = k or builtin("gauss")
    lam = np.arange(1, N + 1) * (math.pi / l)
    terms = (_phi_values(kern, lam * r, None) / lam
             * np.sin(lam * xi) * np.sin(lam * x) * np.sin(a * lam * dt))
    return 2.0 / (l * a) * float(terms.sum())


def _eval_on_grid(f, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    try:
        gx, gy = np.meshgrid(xs, ys, indexing="ij")
        vals = np.asarray(f(gx, gy), dtype=float)
        if vals.shape != gx.shape:
            raise TypeError
        return vals
    except (TypeError, ValueError):
        return np.array([[f(float(x), float(y)) for y in ys] for x in xs],
                        dtype=float)


def _double_sine_coeffs(f, l1: float, l2: float, m_max: int, n_max: int,
                        cfg: QuadConfig) -> np.ndarray:
    """c_km = (4/(l1 l2)) iint f(x, y) sin(lambda_1k x) sin(lambda_2m y)
    over the rectangle, k <= m_max, m <= n_max.

    Tensor Gauss-Legendre sweep; both panel counts double until two
    levels agree within the quadrature tolerance.
    """
    px = max(8, int(math.ceil(m_max * math.pi / _PANEL_PHASE)))
    py = max(8, int(math.ceil(n_max * math.pi / _PANEL_PHASE)))
    px += px % 2
    py += py % 2
    prev = None
    while max(px, py) * _GL_ORDER <= _MAX_AXIS_NODES:
        xs, wx = composite_gauss_legendre(0.0, l1, px, _GL_ORDER)
        ys, wy = composite_gauss_legendre(0.0, l2, py, _GL_ORDER)
        sx = np.sin(np.outer(np.arange(1, m_max + 1), xs) * (math.pi / l1))
        sy = np.sin(np.outer(np.arange(1, n_max + 1), ys) * (math.pi / l2))
        c = (4.0 / (l1 * l2)) * (sx * wx) @ _eval_on_grid(f, xs, ys) @ (sy * wy).T
        if prev is not None:
            diff = float(np.max(np.abs(c - prev)))
            if diff <= max(cfg.abs_tol, cfg.rel_tol * float(np.max(np.abs(c)))):
                return c
        prev = c
        px *= 2
        py *= 2
    raise NonConvergence(
        f"2-D coefficient sweep did not stabilize within {_MAX_AXIS_NODES} "
        "nodes per axis")


def _membrane_lambdas(p: MembraneProblem | HelmholtzProblem, m_max: int,
                      n_max: int) -> tuple[np.ndarray, np.ndarray]:
    lam1 = np.arange(1, m_max + 1) * (math.pi / p.l1)
    lam2 = np.arange(1, n_max + 1) * (math.pi / p.l2)
    return lam1, lam2


def membrane_free(p: MembraneProblem, M: int, N: int, r: float = 0.0,
                  k: KernelSpec | None = None,
                  cfg: QuadConfig | None = None) -> ModalSolution:
    """Free vibration of the fixed-edge membrane.

    u(x, y, t) = sum_km phi(lambda_1k r) phi(lambda_2m r)
    (chi_km cos(a lambda_km t) + psi_km / (a lambda_km) sin(a lambda_km t))
    sin(lambda_1k x) sin(lambda_2m y), lambda_km^2 = lambda_1k^2 + lambda_2m^2.
    """
    _require(M >= 1 and N >= 1, "M and N must be at least 1")
    _require(r >= 0, "scale r must be nonnegative")
    kern = k or builtin("gauss")
    if r > 0:
        _warn_smoothness(kern, 4, "free-vibration")
    quad = cfg or QuadConfig()
    chi = _double_sine_coeffs(p.chi, p.l1, p.l2, M, N, quad)
    psi = _double_sine_coeffs(p.psi, p.l1, p.l2, M, N, quad)
    fac = np.outer(_axis_factors(M, p.l1, r, kern, cfg),
                   _axis_factors(N, p.l2, r, kern, cfg))
    return ModalSolution(kind="membrane", geometry=(p.l1, p.l2),
                         wave_speed=p.a, chi_coeffs=chi, psi_coeffs=psi,
                         factors=fac, r=r)


def membrane_forced(p: MembraneProblem, M: int, N: int, r: float = 0.0,
                    k: KernelSpec | None = None,
                    cfg: QuadConfig | None = None):
    """Duhamel response of the loaded membrane at rest: returns u(x, y, t).

    Per-mode time quadrature of
    int_0^t sin(a lambda_km (t - tau)) f_km(tau) dtau, with the 2-D sine
    coefficients of the slice f(., ., tau) swept once per requested tau
    and cached.
    """
    _require(p.f is not None, "problem has no load f")
    _require(M >= 1 and N >= 1, "M and N must be at least 1")
    _require(r >= 0, "scale r must be nonnegative")
    kern = k or builtin("gauss")
    if r > 0:
        _warn_smoothness(kern, 3, "forced-response")
    quad = cfg or QuadConfig()
    load = p.f
    lam1, lam2 = _membrane_lambdas(p, M, N)
    w = p.a * np.sqrt(lam1[:, None] ** 2 + lam2[None, :] ** 2)
    weight = np.outer(_axis_factors(M, p.l1, r, kern, cfg),
                      _axis_factors(N, p.l2, r, kern, cfg)) / w

    slice_cache: dict[float, np.ndarray] = {}

    def load_coeffs(tau: float) -> np.ndarray:
        got = slice_cache.get(tau)
        if got is None:
            got = _double_sine_coeffs(lambda x, y: load(x, y, tau),
                                      p.l1, p.l2, M, N, quad)
            slice_cache[tau] = got
        return got

    mode_cache: dict[float, np.ndarray] = {}

    def u(x, y, t: float):
        _require(t >= 0, "time t must be nonnegative")
        t = float(t)
        vals = mode_cache.get(t)
        if vals is None:
            vals = np.empty((M, N))
            for j in range(M):
                for i in range(N):
                    vals[j, i] = integrate(
                        lambda tau, wji=w[j, i]: math.sin(wji * (t - tau))
                        * load_coeffs(tau)[j, i], 0.0, t, quad)
            mode_cache[t] = vals
        return _tensor_eval(weight * vals, p.l1, p.l2, x, y)

    return u


def _resonance_gap(p: HelmholtzProblem, m_max: int, n_max: int) -> np.ndarray:
    lam1, lam2 = _membrane_lambdas(p, m_max, n_max)
    gap = lam1[:, None] ** 2 + lam2[None, :] ** 2 - p.theta ** 2
    if float(np.min(np.abs(gap))) < _RESONANCE_TOL:
        raise ResonanceError(
            f"theta = {p.theta} lies within {_RESONANCE_TOL} of an "
            "eigenvalue lambda_km among the retained modes")
    return gap


@dataclass(frozen=True)
class HelmholtzSolution:
    """Coefficient form of the Helmholtz solution.

    coefficients holds the raw u_km = F_km / (lambda_km^2 - theta^2);
    factors the damping values at scale r (ones when r = 0).  Calling
    the object evaluates sum u_km phi_km sin(lambda_1k x) sin(lambda_2m y);
    1-D array arguments give the tensor grid.
    """

    l1: float
    l2: float
    theta: float
    coefficients: np.ndarray
    factors: np.ndarray
    r: float

    def __call__(self, x, y):
        return _tensor_eval(self.factors * self.coefficients,
                            self.l1, self.l2, x, y)


def helmholtz_solve(p: HelmholtzProblem, M: int, N: int, r: float = 0.0,
                    k: KernelSpec | None = None,
                    cfg: QuadConfig | None = None) -> HelmholtzSolution:
    """Series solution u_km = F_km / (lambda_km^2 - theta^2) with F_km
    the double sine coefficients of the source by 2-D quadrature.

    Raises ResonanceError when theta is numerically an eigenvalue of a
    retained mode.
    """
    _require(M >= 1 and N >= 1, "M and N must be at least 1")
    _require(r >= 0, "scale r must be nonnegative")
    kern = k or builtin("gauss")
    gap = _resonance_gap(p, M, N)
    coeffs = _double_sine_coeffs(p.F, p.l1, p.l2, M, N, cfg or QuadConfig()) / gap
    fac = np.outer(_axis_factors(M, p.l1, r, kern, cfg),
                   _axis_factors(N, p.l2, r, kern, cfg))
    return HelmholtzSolution(l1=p.l1, l2=p.l2, theta=p.theta,
                             coefficients=coeffs, factors=fac, r=r)


def helmholtz_green(p: HelmholtzProblem, x: float, y: float,
                    x0: float, y0: float, M: int, N: int, r: float,
                    k: KernelSpec | None = None) -> float:
    """Damped Green's value of the Helmholtz problem.

    G_r(x, y; x0, y0) = (4 / (l1 l2)) sum_km phi(lambda_1k r)
    phi(lambda_2m r) Phi_km(x0, y0) Phi_km(x, y) / (lambda_km^2 - theta^2)
    with Phi_km(x, y) = sin(lambda_1k x) sin(lambda_2m y).  r > 0 is
    required for pointwise evaluation.
    """
    _require(M >= 1 and N >= 1, "M and N must be at least 1")
    _require(r > 0, "scale r must be positive")
    kern = k or builtin("gauss")
    gap = _resonance_gap(p, M, N)
    lam1, lam2 = _membrane_lambdas(p, M, N)
    fac = np.outer(_axis_factors(M, p.l1, r, kern, None),
                   _axis_factors(N, p.l2, r, kern, None))
    vx = np.sin(lam1 * x) * np.sin(lam1 * x0)
    vy = np.sin(lam2 * y) * np.sin(lam2 * y0)
    return 4.0 / (p.l1 * p.l2) * float(vx @ (fac / gap) @ vy)
