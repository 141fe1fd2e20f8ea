"""Averaging kernel catalog, delta families, mollification, multiplier
transforms, convolution, and periodization.

A kernel is described by its profile omega(t) on t >= 0 (the kernel on
the line is Phi(x) = omega(|x|)), a support flag, decay metadata
(1+t)^lambda |omega(t)| <= A, a smoothness order p, and the number q of
vanishing moments.  Normalization is always 2 int_0^inf omega = 1.

Where the source tables give a closed-form multiplier phi(z) it is
stored next to the profile; phi() computes the same thing by quadrature
so the two routes can be cross-checked.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import backend
from .errors import DomainError, UnknownKernel
from .expressions import compile_expression
from .quadrature import QuadConfig, integrate, integrate_improper

__all__ = [
    "KernelSpec",
    "PeriodicKernel",
    "ValidationReport",
    "builtin",
    "catalog_names",
    "validate",
    "delta_eval",
    "smooth",
    "phi",
    "convolve",
    "periodize",
    "periodic_smooth",
    "check_moments",
    "kernel_from_dict",
    "load_kernel",
]

# Cutoffs for the infinite-support multiplier quadrature: head length
# when the tail is analytic, base truncation when it is extrapolated.
_PHI_HEAD_CUT = 60.0
_PHI_BASE_CUT = 400.0


@dataclass(frozen=True)
class KernelSpec:
    """Kernel profile with decay/smoothness/moment metadata.

    decay_lambda and decay_a are documented envelope constants, chosen
    conservatively for the builtins; smoothness_p likewise.  osc_freqs
    lists intrinsic oscillation frequencies of the profile (needed for
    an accurate multiplier quadrature when the profile itself rings,
    like the sin^2 one).
    """

    name: str
    omega: Callable[[float], float]
    support: str  # 'finite' (profile on [0, 1]) or 'infinite'
    decay_lambda: float
    decay_a: float
    smoothness_p: int
    moment_order_q: int
    phi_form: Callable[[float], float] | None = None
    formula: str = ""
    osc_freqs: tuple = ()
    # (T0, 2.0, ((c, f), ...)): omega(t) = sum c cos(f t) / t^2 exactly
    # for t >= T0, which makes the transform tail analytic.
    tail_model: tuple | None = None

    def __post_init__(self):
        if self.support not in ("finite", "infinite"):
            raise ValueError(f"support must be finite or infinite, got {self.support!r}")
        if self.decay_lambda <= 1.0:
            raise ValueError("decay_lambda must exceed 1")


@dataclass(frozen=True)
class PeriodicKernel:
    base: KernelSpec
    r: float

    def __post_init__(self):
        if self.r <= 0:
            raise DomainError("periodization scale r must be positive")


@dataclass(frozen=True)
class ValidationReport:
    name: str
    normalization_residual: float
    decay_violations: list
    moment_residuals: list
    ok: bool


def _sinc(u: float) -> float:
    """sin(u)/u with the removable singularity filled in."""
    return float(np.sinc(u / math.pi))


# --- closed-form multipliers -------------------------------------------------

def _phi_triangle(z: float) -> float:
    return _sinc(0.5 * z) ** 2


def _phi_fejer(z: float) -> float:
    return max(0.0, 1.0 - abs(z))


def _phi_quadratic(z: float) -> float:
    z = abs(z)
    if z < 1e-2:
        z2 = z * z
        return 1.0 - z2 / 20.0 + z2 * z2 / 840.0
    return 6.0 * (1.0 - _sinc(z)) / (z * z)


def _phi_poly(z: float) -> float:
    z = abs(z)
    if z < 1e-2:
        z2 = z * z
        return 1.0 - z2 / 10.0 + z2 * z2 / 280.0
    return 3.0 * (_sinc(z) - math.cos(z)) / (z * z)


def _phi_moment(z: float) -> float:
    # cos(z/2)/(1 - (z/pi)^2) rewritten through sinc((pi-z)/2); exact and
    # finite at the removable point z = pi.
    z = abs(z)
    v = (math.pi ** 2 / (2.0 * (math.pi + z))) * _sinc(0.5 * (math.pi - z))
    return (1.0 + (z / math.pi) ** 2) * v * v


def _make_phi_hann(m: int):
    def phi_hann(z: float, m: int = m) -> float:
        z = abs(z)
        j = int(round(z / math.pi))
        if 1 <= j <= m and abs(z - j * math.pi) < 0.5:
            # sin z paired with the vanishing factor (j pi)^2 - z^2.
            val = ((-1.0) ** (j + 1) * _sinc(j * math.pi - z)
                   * (j * math.pi) ** 2 / (z * (j * math.pi + z)))
            for i in range(1, m + 1):
                if i != j:
                    val *= (i * math.pi) ** 2 / ((i * math.pi) ** 2 - z * z)
            return val
        val = _sinc(z)
        for i in range(1, m + 1):
            val *= (i * math.pi) ** 2 / ((i * math.pi) ** 2 - z * z)
        return val

    return phi_hann


def _phi_poisson(z: float) -> float:
    return math.exp(-abs(z))


def _phi_gauss(z: float) -> float:
    return math.exp(-z * z / 4.0)


def _phi_sech(z: float) -> float:
    z = abs(z)
    if z > 700.0:
        return 0.0
    return 1.0 / math.cosh(z)


def _phi_sech2(z: float) -> float:
    z = abs(z)
    if z < 1e-4:
        return 1.0 - z * z / 6.0
    if z > 30.0:
        return 2.0 * z * math.exp(-z)
    return z / math.sinh(z)


def _phi_laplace(z: float) -> float:
    return 1.0 / (1.0 + z * z)


def _phi_exp_cos(z: float) -> float:
    z2 = z * z
    return 2.0 * (z2 + 2.0) / (z2 * z2 + 4.0)


# --- profiles ----------------------------------------------------------------

def _finite(fn):
    def omega(t: float) -> float:
        t = abs(t)
        return fn(t) if t <= 1.0 else 0.0

    return omega


_SOBOLEV_NORM: float | None = None


def _sobolev_unnorm(t: float) -> float:
    t = abs(t)
    if t >= 1.0:
        return 0.0
    u = 1.0 - t * t
    return math.exp(-1.0 / u) if u > 1e-12 else 0.0


def _sobolev_const() -> float:
    global _SOBOLEV_NORM
    if _SOBOLEV_NORM is None:
        _SOBOLEV_NORM = 0.5 / integrate(_sobolev_unnorm, 0.0, 1.0)
    return _SOBOLEV_NORM


def _omega_fejer(t: float) -> float:
    return _sinc(0.5 * t) ** 2 / (2.0 * math.pi)


_HANN_NORM = {1: 0.5, 2: 1.0 / 3.0}  # 2^(m-1) (m!)^2 / (2m)!


def _builtins() -> dict[str, KernelSpec]:
    k = {}
    k["triangle"] = KernelSpec(
        "triangle", _finite(lambda t: 1.0 - t), "finite", 2.0, 1.2, 1, 0,
        _phi_triangle, "1 - t on [0,1]")
    k["quadratic"] = KernelSpec(
        "quadratic", _finite(lambda t: 1.5 * (1.0 - t) ** 2), "finite",
        2.0, 1.6, 2, 0, _phi_quadratic, "(3/2)(1-t)^2 on [0,1]")
    k["poly"] = KernelSpec(
        "poly", _finite(lambda t: 0.75 * (1.0 - t * t)), "finite",
        2.0, 1.3, 1, 0, _phi_poly, "(3/4)(1-t^2) on [0,1]")
    k["moment"] = KernelSpec(
        "moment",
        _finite(lambda t: (math.pi ** 2 / 4.0) * (1.0 - t) * math.cos(math.pi * t)),
        "finite", 2.0, 2.6, 1, 1, _phi_moment,
        "(pi^2/4)(1-t)cos(pi t) on [0,1], first moment vanishes")
    k["hann"] = KernelSpec(
        "hann", _finite(lambda t: 0.5 * (1.0 + math.cos(math.pi * t))), "finite",
        2.0, 2.1, 2, 0, _make_phi_hann(1), "(1/2)(1+cos pi t) on [0,1]")
    k["hann2"] = KernelSpec(
        "hann2", _finite(lambda t: (1.0 + math.cos(math.pi * t)) ** 2 / 3.0),
        "finite", 2.0, 2.7, 3, 0, _make_phi_hann(2),
        "(1/3)(1+cos pi t)^2 on [0,1]")
    k["sobolev"] = KernelSpec(
        "sobolev", lambda t: _sobolev_const() * _sobolev_unnorm(t), "finite",
        2.0, 3.5, 6, 0, None, "c exp(-1/(1-t^2)) on [0,1)")
    k["fejer"] = KernelSpec(
        "fejer", _omega_fejer, "infinite", 2.0, 1.2, 1, 0, _phi_fejer,
        "(2/pi) sin^2(t/2)/t^2", osc_freqs=(1.0,),
        tail_model=(1.0, 2.0, ((1.0 / math.pi, 0.0), (-1.0 / math.pi, 1.0))))
    k["poisson"] = KernelSpec(
        "poisson", lambda t: 1.0 / (math.pi * (1.0 + t * t)), "infinite",
        2.0, 0.65, 2, 0, _phi_poisson, "1/(pi (1+t^2))")
    k["gauss"] = KernelSpec(
        "gauss", lambda t: math.exp(-t * t) / math.sqrt(math.pi), "infinite",
        2.0, 1.05, 4, 0, _phi_gauss, "exp(-t^2)/sqrt(pi)")
    # cosh overflows past an argument of ~710, and 1/cosh is 0 well before
    k["sech"] = KernelSpec(
        "sech", lambda t: 0.5 / math.cosh(0.5 * math.pi * t) if abs(t) < 440 else 0.0,
        "infinite", 2.0, 0.9, 3, 0, _phi_sech, "1/(2 cosh(pi t/2))")
    k["sech2"] = KernelSpec(
        "sech2",
        lambda t: 0.25 * math.pi / math.cosh(0.5 * math.pi * t) ** 2 if abs(t) < 220 else 0.0,
        "infinite", 2.0, 1.1, 3, 0, _phi_sech2, "pi/(4 cosh^2(pi t/2))")
    k["laplace"] = KernelSpec(
        "laplace", lambda t: 0.5 * math.exp(-abs(t)), "infinite",
        2.0, 0.8, 1, 0, _phi_laplace, "(1/2) e^{-t}")
    k["exp_cos"] = KernelSpec(
        "exp_cos", lambda t: math.exp(-abs(t)) * math.cos(t), "infinite",
        3.0, 3.7, 1, 0, _phi_exp_cos, "e^{-t} cos t", osc_freqs=(1.0,))
    return k


_CATALOG: dict[str, KernelSpec] | None = None
_ALIASES = {"cauchy": "poisson"}


def _catalog() -> dict[str, KernelSpec]:
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _builtins()
    return _CATALOG


def builtin(name: str) -> KernelSpec:
    """Look up a catalog kernel by name ('cauchy' aliases 'poisson')."""
    key = _ALIASES.get(name, name)
    cat = _catalog()
    if key not in cat:
        raise UnknownKernel(
            f"unknown kernel {name!r}; available: {', '.join(sorted(cat))}")
    return cat[key]


def catalog_names() -> list[str]:
    return sorted(_catalog())


def _support_end(k: KernelSpec) -> float | None:
    return 1.0 if k.support == "finite" else None


def validate(k: KernelSpec, cfg: QuadConfig | None = None) -> ValidationReport:
    """Check normalization, the decay envelope on a log grid, and the
    declared vanishing moments."""
    cfg = cfg or QuadConfig()
    if k.support == "finite":
        norm = 2.0 * integrate(k.omega, 0.0, 1.0, cfg)
        grid = np.concatenate([[0.0], np.geomspace(1e-3, 1.0, 120)])
    else:
        # total mass equals the multiplier at zero
        norm = phi(k, 0.0, cfg)
        grid = np.concatenate([[0.0], np.geomspace(1e-3, 1e4, 160)])
    resid = norm - 1.0

    violations = []
    for t in grid:
        bound = (1.0 + t) ** k.decay_lambda * abs(k.omega(float(t)))
        if bound > k.decay_a * (1.0 + 1e-9):
            violations.append((float(t), float(bound)))

    moments = []
    if k.support == "finite" and k.moment_order_q >= 1:
        moments = check_moments(k, k.moment_order_q, cfg)

    ok = (abs(resid) <= 1e-8 and not violations
          and all(abs(m) <= 1e-8 for m in moments))
    return ValidationReport(k.name, resid, violations, moments, ok)


def delta_eval(k: KernelSpec, r: float, x: float) -> float:
    """Delta-family member (1/r) Phi(x/r) = (1/r) omega(|x|/r)."""
    if r <= 0:
        raise DomainError("scale r must be positive")
    t = abs(x) / r
    if k.support == "finite" and t > 1.0:
        return 0.0
    return k.omega(t) / r


def smooth(f, k: KernelSpec, r: float, x: float,
           cfg: QuadConfig | None = None) -> float:
    """Mollified value S_r(f; x) = int [f(x+rt) + f(x-rt)] omega(t) dt.

    The symmetric split keeps jump points of f at the edge of the range
    of integration instead of inside a panel, and gives the midpoint
    value at a jump of f as r -> 0.
    """
    if r <= 0:
        raise DomainError("scale r must be positive")
    g = lambda t: (f(x + r * t) + f(x - r * t)) * k.omega(t)
    if k.support == "finite":
        return integrate(g, 0.0, 1.0, cfg)
    return integrate_improper(g, 0.0, cfg)


def _si(x: float, cfg: QuadConfig) -> float:
    """Sine integral Si(x) for x >= 0."""
    if x < 100.0:
        f = lambda u: math.sin(u) / u if u > 1e-12 else 1.0
        return integrate(f, 0.0, x, cfg)
    # asymptotic form, remainder below 1e-9 from here on
    c, s = math.cos(x), math.sin(x)
    x2 = x * x
    return (0.5 * math.pi
            - (c / x) * (1.0 - 2.0 / x2 + 24.0 / (x2 * x2))
            - (s / x2) * (1.0 - 6.0 / x2 + 120.0 / (x2 * x2)))


def _cos_tail_over_t2(nu: float, b: float, cfg: QuadConfig) -> float:
    """int_b^inf cos(nu t) / t^2 dt, by parts through Si."""
    if nu <= 1e-12:
        return 1.0 / b
    x = nu * b
    return math.cos(x) / b - nu * (0.5 * math.pi - _si(x, cfg))


def _phi_tail_model(k: KernelSpec, z: float, cfg: QuadConfig) -> float:
    t0, lam, terms = k.tail_model
    if lam != 2.0:
        raise DomainError("analytic transform tail requires a 1/t^2 envelope")
    b = max(_PHI_HEAD_CUT, t0)
    head = integrate(lambda t: k.omega(t) * math.cos(z * t), 0.0, b, cfg)
    tail = 0.0
    for c, f in terms:
        tail += 0.5 * c * (_cos_tail_over_t2(f + z, b, cfg)
                           + _cos_tail_over_t2(abs(f - z), b, cfg))
    return 2.0 * (head + tail)


def _phi_averaged(k: KernelSpec, z: float, cfg: QuadConfig) -> float:
    """Truncated transform with half-period averaging and Richardson.

    Truncations I(T) approach the limit with oscillations at z and at
    the beat frequencies |f -+ z| of the declared profile frequencies.
    Each is cancelled by averaging cutoffs shifted twice by half its
    period; the remaining monotone tail, of order T^(1-lambda), is
    removed by two Richardson steps in the declared decay exponent.
    """
    freqs = {z}
    for f in k.osc_freqs:
        freqs.update((abs(f - z), f + z))
    shifts = []
    for f in sorted(freqs):
        if f > 1e-9:
            shifts += [math.pi / f] * 2
    offsets = {0.0: 1.0}
    for s in shifts:
        nxt: dict[float, float] = {}
        for off, w in offsets.items():
            for o2 in (off, off + s):
                nxt[o2] = nxt.get(o2, 0.0) + 0.5 * w
        offsets = nxt

    levels = [_PHI_BASE_CUT * 2.0 ** j for j in range(3)]
    cuts = sorted({lev + off for lev in levels for off in offsets})
    g = lambda t: k.omega(t) * math.cos(z * t)
    vals = {}
    acc = integrate(g, 0.0, cuts[0], cfg)
    vals[cuts[0]] = acc
    for a, b in zip(cuts, cuts[1:]):
        acc += integrate(g, a, b, cfg)
        vals[b] = acc

    avg = [sum(w * vals[lev + off] for off, w in offsets.items())
           for lev in levels]
    p = k.decay_lambda - 1.0
    for step in range(2):
        fac = 2.0 ** (p + step)
        avg = [(fac * hi - lo) / (fac - 1.0) for lo, hi in zip(avg, avg[1:])]
    return 2.0 * avg[0]


def phi(k: KernelSpec, z: float, cfg: QuadConfig | None = None) -> float:
    """Multiplier phi(z) = 2 int_0^inf omega(t) cos(zt) dt by quadrature.

    Even in z and phi(0) = 1 for a normalized kernel.  Profiles with an
    exact 1/t^2 tail decomposition use it analytically; other infinite
    profiles go through averaged truncations (accurate to roughly 1e-7
    provided osc_freqs declares any intrinsic ringing).
    """
    z = abs(z)
    g = lambda t: k.omega(t) * math.cos(z * t)
    if k.support == "finite":
        return 2.0 * integrate(g, 0.0, 1.0, cfg)
    cfg = cfg or QuadConfig()
    if k.tail_model is not None:
        return _phi_tail_model(k, z, cfg)
    return _phi_averaged(k, z, cfg)


def convolve(k1: KernelSpec, k2: KernelSpec, cfg: QuadConfig | None = None):
    """Convolution of the two delta families: returns (r, x) -> value.

    The result is again a delta family; for two Cauchy profiles it is
    the Cauchy profile at doubled scale.
    """

    def conv(r: float, x: float) -> float:
        if r <= 0:
            raise DomainError("scale r must be positive")
        g = lambda t: delta_eval(k1, r, x - t) * delta_eval(k2, r, t)
        if k2.support == "finite":
            lo, hi = -r, r
            if k1.support == "finite":
                lo, hi = max(lo, x - r), min(hi, x + r)
                if lo >= hi:
                    return 0.0
            return integrate(g, lo, hi, cfg)
        if k1.support == "finite":
            return integrate(g, x - r, x + r, cfg)
        return integrate_improper(lambda t: g(t) + g(-t), 0.0, cfg)

    return conv


def _phi_values(k: KernelSpec, z: np.ndarray, cfg: QuadConfig | None) -> np.ndarray:
    if k.phi_form is not None:
        return np.array([k.phi_form(float(v)) for v in z])
    return np.array([phi(k, float(v), cfg) for v in z])


def periodize(pk: PeriodicKernel, x: float) -> float:
    """2 pi periodic delta kernel: sum of the r-scaled family over all
    2 pi translates.

    Finite support: exact (single image for r <= pi, the handful of
    overlapping images otherwise).  Infinite support: the multiplier
    cosine series 1/pi (1/2 + sum phi(kr) cos kx) when a closed-form phi
    is available, else direct image summation truncated by the decay
    envelope.
    """
    k, r = pk.base, pk.r
    xr = math.remainder(x, 2.0 * math.pi)
    if k.support == "finite":
        if r <= math.pi:
            return delta_eval(k, r, xr)
        j_max = int(math.ceil((r - xr) / (2.0 * math.pi)))
        j_min = int(math.floor((-r - xr) / (2.0 * math.pi)))
        return sum(delta_eval(k, r, xr + 2.0 * math.pi * j)
                   for j in range(j_min, j_max + 1))
    if k.phi_form is not None:
        total = 0.5
        kk = 1
        while kk < 2_000_000:
            fac = k.phi_form(kk * r)
            total += fac * math.cos(kk * xr)
            if abs(fac) < 1e-13:
                break
            kk += 1
        return total / math.pi
    # Image summation; per-term cutoff from the decay envelope.
    total = delta_eval(k, r, xr)
    j = 1
    while j < 1_000_000:
        total += delta_eval(k, r, xr + 2.0 * math.pi * j)
        total += delta_eval(k, r, xr - 2.0 * math.pi * j)
        bound = (k.decay_a / r) * (r / (r + 2.0 * j * math.pi - math.pi)) ** k.decay_lambda
        if bound < 1e-12:
            break
        j += 1
    return total


def periodic_smooth(s, k: KernelSpec, r: float, x,
                    cfg: QuadConfig | None = None):
    """Damped partial sum: multiplies mode j of the series by phi(j r).

    Equals the periodic convolution of the series with the periodized
    delta kernel at scale r.
    """
    if r <= 0:
        raise DomainError("scale r must be positive")
    n = s.n_modes
    factors = _phi_values(k, np.arange(n + 1) * r, cfg)
    b_full = np.concatenate([[0.0], s.b])
    arr = np.asarray(x, dtype=float)
    z = arr.ravel() * (math.pi / s.l)
    out = backend.series_eval(s.a, b_full, factors, z).reshape(arr.shape)
    return float(out) if arr.ndim == 0 else out


def check_moments(k: KernelSpec, q: int, cfg: QuadConfig | None = None) -> list:
    """Moments int_0^1 t^j omega(t) dt for j = 1..q (finite support only)."""
    if k.support != "finite":
        raise DomainError("moment check requires a finite-support kernel")
    if q < 1:
        raise DomainError("q must be at least 1; the zeroth moment is the "
                          "normalization, checked by validate()")
    return [integrate(lambda t, j=j: t ** j * k.omega(t), 0.0, 1.0, cfg)
            for j in range(1, q + 1)]


def kernel_from_dict(d: dict) -> KernelSpec:
    """Custom kernel from a JSON-style dict.

    Keys: name, support, omega (expression in t), lambda, A, p, q, and
    optionally osc_freqs for ringing infinite profiles.
    """
    missing = {"name", "support", "omega"} - set(d)
    if missing:
        raise ValueError(f"kernel dict missing keys: {sorted(missing)}")
    expr = compile_expression(d["omega"], ("t",))
    support = d["support"]
    if support == "finite":
        omega = _finite(lambda t: float(expr(t)))
    elif support == "infinite":
        omega = lambda t: float(expr(abs(t)))
    else:
        raise ValueError(f"support must be finite or infinite, got {support!r}")
    return KernelSpec(
        name=str(d["name"]),
        omega=omega,
        support=support,
        decay_lambda=float(d.get("lambda", 2.0)),
        decay_a=float(d.get("A", 1.0)),
        smoothness_p=int(d.get("p", 1)),
        moment_order_q=int(d.get("q", 0)),
        phi_form=None,
        formula=d["omega"],
        osc_freqs=tuple(float(f) for f in d.get("osc_freqs", ())),
    )


def load_kernel(path: str) -> KernelSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return kernel_from_dict(json.load(fh))
