"""Trigonometric Fourier series on [-l, l]: coefficients by quadrature,
partial sums, complex form, termwise calculus, Parseval defect, and
double series on a rectangle.

Internally everything is computed in the angle variable z = pi x / l, so
mode k always has frequency k in z.  Coefficients come from quadrature
(never an FFT): an adaptive pass per coefficient for small N, and a
composite Gauss-Legendre sweep with panel-doubling error control for
large N, where the panel count tracks the highest mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import NonConvergence
from .quadrature import QuadConfig, composite_gauss_legendre, integrate

__all__ = [
    "TrigSeries",
    "ComplexTrigSeries",
    "DoubleTrigSeries",
    "trig_coefficients",
    "to_complex",
    "from_complex",
    "dirichlet_kernel",
    "partial_sum",
    "differentiate_series",
    "integrate_series",
    "parseval_gap",
    "double_trig_coefficients",
    "double_partial_sum",
    "to_json_dict",
    "from_json_dict",
]

_ADAPTIVE_MAX_N = 64
_GL_ORDER = 24
_PANEL_PHASE = 14.0
_MAX_BATCH_NODES = 2_500_000


@dataclass(frozen=True)
class TrigSeries:
    """Real series a0/2 + sum_k a_k cos(k pi x / l) + b_k sin(k pi x / l).

    a holds a_0..a_N, b holds b_1..b_N, so len(a) == len(b) + 1.
    """

    l: float
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", np.asarray(self.a, dtype=float))
        object.__setattr__(self, "b", np.asarray(self.b, dtype=float))
        if self.l <= 0:
            raise ValueError("half-period l must be positive")
        if len(self.a) != len(self.b) + 1:
            raise ValueError(
                f"need len(a) == len(b) + 1, got {len(self.a)} and {len(self.b)}")

    @property
    def n_modes(self) -> int:
        return len(self.b)


@dataclass(frozen=True)
class ComplexTrigSeries:
    """Complex form sum_{n=-N}^{N} c_n exp(i n pi x / l).

    c is stored as an array of length 2N + 1, index n at position N + n;
    Hermitian symmetry c_{-n} = conj(c_n) holds for real series.
    """

    l: float
    c: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "c", np.asarray(self.c, dtype=complex))
        if self.l <= 0:
            raise ValueError("half-period l must be positive")
        if len(self.c) % 2 != 1:
            raise ValueError("c must have odd length 2N + 1")

    @property
    def n_modes(self) -> int:
        return (len(self.c) - 1) // 2

    def coef(self, n: int) -> complex:
        """c_n with signed index n."""
        offset = self.n_modes
        if abs(n) > offset:
            raise IndexError(f"mode {n} outside stored range +-{offset}")
        return complex(self.c[offset + n])


@dataclass(frozen=True)
class DoubleTrigSeries:
    """Double series on [-p, p] x [-q, q] with the standard corner weights.

    Value: sum_{m,n} lam_mn [a_mn cos cos + b_mn cos sin + c_mn sin cos
    + d_mn sin sin] with angles m pi x / p, n pi y / q and lam_mn = 1/4,
    1/2, 1 according to how many of m, n are zero.
    """

    p: float
    q: float
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        if self.p <= 0 or self.q <= 0:
            raise ValueError("half-periods must be positive")
        shape = self.a.shape
        if any(getattr(self, name).shape != shape for name in "bcd"):
            raise ValueError("coefficient grids must share one shape")

    @property
    def m_modes(self) -> int:
        return self.a.shape[0] - 1

    @property
    def n_modes(self) -> int:
        return self.a.shape[1] - 1


def _coeffs_adaptive(g, nmax: int, mode: str, cfg: QuadConfig | None):
    """Per-coefficient adaptive quadrature in the angle variable."""
    a = np.zeros(nmax + 1)
    b = np.zeros(nmax)
    if mode == "full":
        a[0] = integrate(g, -math.pi, math.pi, cfg) / math.pi
        for n in range(1, nmax + 1):
            a[n] = integrate(lambda z, n=n: g(z) * math.cos(n * z),
                             -math.pi, math.pi, cfg) / math.pi
            b[n - 1] = integrate(lambda z, n=n: g(z) * math.sin(n * z),
                                 -math.pi, math.pi, cfg) / math.pi
    elif mode == "cosine_only":
        a[0] = 2.0 * integrate(g, 0.0, math.pi, cfg) / math.pi
        for n in range(1, nmax + 1):
            a[n] = 2.0 * integrate(lambda z, n=n: g(z) * math.cos(n * z),
                                   0.0, math.pi, cfg) / math.pi
    elif mode == "sine_only":
        for n in range(1, nmax + 1):
            b[n - 1] = 2.0 * integrate(lambda z, n=n: g(z) * math.sin(n * z),
                                       0.0, math.pi, cfg) / math.pi
    else:
        raise ValueError(f"mode must be full, cosine_only or sine_only, got {mode!r}")
    return a, b


def _eval_on_nodes(g, nodes: np.ndarray) -> np.ndarray:
    try:
        vals = np.asarray(g(nodes), dtype=float)
        if vals.shape != nodes.shape:
            raise TypeError
        return vals
    except (TypeError, ValueError):
        return np.array([g(float(t)) for t in nodes], dtype=float)


def _coeffs_batch(g, nmax: int, mode: str, cfg: QuadConfig):
    """Composite Gauss-Legendre sweep, panels doubled until two levels agree."""
    if mode == "full":
        z0, z1, scale = -math.pi, math.pi, 1.0 / math.pi
    elif mode in ("cosine_only", "sine_only"):
        z0, z1, scale = 0.0, math.pi, 2.0 / math.pi
    else:
        raise ValueError(f"mode must be full, cosine_only or sine_only, got {mode!r}")
    span = z1 - z0
    panels = max(16, int(math.ceil(nmax * span / _PANEL_PHASE)))
    panels += panels % 2  # keep 0 on a panel edge for even/odd kinks

    prev = None
    while panels * _GL_ORDER <= _MAX_BATCH_NODES:
        nodes, weights = composite_gauss_legendre(z0, z1, panels, _GL_ORDER)
        wf = weights * _eval_on_nodes(g, nodes)
        a, b = backend.trig_sweep(wf, nodes, nmax)
        a *= scale
        b *= scale
        if prev is not None:
            pa, pb = prev
            diff = max(np.max(np.abs(a - pa)), np.max(np.abs(b - pb)) if nmax else 0.0)
            scale_ref = max(np.max(np.abs(a)), np.max(np.abs(b)) if nmax else 0.0)
            if diff <= max(cfg.abs_tol, cfg.rel_tol * scale_ref):
                break
        prev = (a, b)
        panels *= 2
    else:
        raise NonConvergence(
            f"coefficient sweep did not stabilize within {_MAX_BATCH_NODES} nodes")

    if mode == "cosine_only":
        return a, np.zeros(nmax)
    if mode == "sine_only":
        a = np.zeros(nmax + 1)
        return a, b[1:]
    return a, b[1:]


def trig_coefficients(f, l: float, nmax: int, mode: str = "full",
                      cfg: QuadConfig | None = None) -> TrigSeries:
    """Fourier coefficients of f up to mode nmax by quadrature.

    mode 'full' integrates over [-l, l]; 'cosine_only' and 'sine_only'
    are the half-range expansions of f given on [0, l].
    """
    if l <= 0:
        raise ValueError("half-period l must be positive")
    if nmax < 0:
        raise ValueError("nmax must be nonnegative")
    g = lambda z: f(z * l / math.pi)
    if nmax <= _ADAPTIVE_MAX_N:
        a, b = _coeffs_adaptive(g, nmax, mode, cfg)
    else:
        a, b = _coeffs_batch(g, nmax, mode, cfg or QuadConfig())
    return TrigSeries(l=l, a=a, b=b)


def to_complex(s: TrigSeries) -> ComplexTrigSeries:
    """Complex form: c_0 = a_0/2, c_n = (a_n - i b_n)/2, c_{-n} = conj."""
    n = s.n_modes
    c = np.zeros(2 * n + 1, dtype=complex)
    c[n] = 0.5 * s.a[0]
    for k in range(1, n + 1):
        ck = 0.5 * (s.a[k] - 1j * s.b[k - 1])
        c[n + k] = ck
        c[n - k] = ck.conjugate()
    return ComplexTrigSeries(l=s.l, c=c)


def from_complex(cs: ComplexTrigSeries) -> TrigSeries:
    """Inverse of to_complex (real part convention)."""
    n = cs.n_modes
    a = np.zeros(n + 1)
    b = np.zeros(n)
    a[0] = 2.0 * cs.c[n].real
    for k in range(1, n + 1):
        a[k] = 2.0 * cs.c[n + k].real
        b[k - 1] = -2.0 * cs.c[n + k].imag
    return TrigSeries(l=cs.l, a=a, b=b)


def dirichlet_kernel(n: int, t: float) -> float:
    """D_n(t) = (1/pi)(1/2 + sum_{k<=n} cos kt).

    Closed form sin((n+1/2)t) / (2 pi sin(t/2)) away from the zeros of
    sin(t/2); the direct sum near them.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    s2 = math.sin(0.5 * t)
    if abs(s2) < 1e-8:
        return (0.5 + sum(math.cos(k * t) for k in range(1, n + 1))) / math.pi
    return math.sin((n + 0.5) * t) / (2.0 * math.pi * s2)


def _eval_series_at(s: TrigSeries, a: np.ndarray, b_full: np.ndarray,
                    factors: np.ndarray, x):
    arr = np.asarray(x, dtype=float)
    z = arr.ravel() * (math.pi / s.l)
    out = backend.series_eval(a, b_full, factors, z).reshape(arr.shape)
    return float(out) if arr.ndim == 0 else out


def partial_sum(s: TrigSeries, n: int, x):
    """Partial sum through mode n at x (scalar or array)."""
    if n > s.n_modes:
        raise IndexError(f"partial sum order {n} exceeds stored N={s.n_modes}")
    a = s.a[: n + 1]
    b_full = np.concatenate([[0.0], s.b[:n]])
    return _eval_series_at(s, a, b_full, np.ones(n + 1), x)


def differentiate_series(s: TrigSeries, m: int) -> TrigSeries:
    """Termwise m-th derivative: factors (k pi / l)^m and a quarter-turn
    phase per order.  m = 0 returns a copy; a_0 drops out for m >= 1."""
    if m < 0:
        raise ValueError("derivative order must be nonnegative")
    if m == 0:
        return TrigSeries(l=s.l, a=s.a.copy(), b=s.b.copy())
    n = s.n_modes
    k = np.arange(1, n + 1, dtype=float)
    lam = (k * math.pi / s.l) ** m
    a_old, b_old = s.a[1:], s.b
    rot = m % 4
    if rot == 0:
        a_new, b_new = lam * a_old, lam * b_old
    elif rot == 1:
        a_new, b_new = lam * b_old, -lam * a_old
    elif rot == 2:
        a_new, b_new = -lam * a_old, -lam * b_old
    else:
        a_new, b_new = -lam * b_old, lam * a_old
    return TrigSeries(l=s.l, a=np.concatenate([[0.0], a_new]), b=b_new)


def integrate_series(s: TrigSeries, x):
    """Termwise integral int_0^x (f - a_0/2) dt.

    Equals sum_k [a_k sin(lam_k x) + b_k (1 - cos(lam_k x))] / lam_k; the
    constant part sum_k b_k / lam_k is truncated at the stored N.
    """
    n = s.n_modes
    if n == 0:
        arr = np.asarray(x, dtype=float)
        out = np.zeros_like(arr)
        return float(out) if arr.ndim == 0 else out
    k = np.arange(1, n + 1, dtype=float)
    lam = k * math.pi / s.l
    const = 2.0 * float(np.sum(s.b / lam))  # goes into a_0/2
    a_int = np.concatenate([[const], -s.b / lam])
    b_full = np.concatenate([[0.0], s.a[1:] / lam])
    t = TrigSeries(l=s.l, a=a_int, b=b_full[1:])
    return _eval_series_at(t, t.a, b_full, np.ones(n + 1), x)


def parseval_gap(f, s: TrigSeries, cfg: QuadConfig | None = None) -> float:
    """(1/l) int_{-l}^{l} f^2 - [a_0^2/2 + sum (a_k^2 + b_k^2)].

    Nonnegative up to quadrature error, and decreasing as modes are added.
    """
    energy = integrate(lambda x: f(x) ** 2, -s.l, s.l, cfg) / s.l
    series_energy = 0.5 * s.a[0] ** 2 + float(np.sum(s.a[1:] ** 2) + np.sum(s.b ** 2))
    return energy - series_energy


def _axis_rule(nmax: int, cfg: QuadConfig, panels: int | None = None):
    if panels is None:
        panels = max(8, int(math.ceil(nmax * 2.0 * math.pi / _PANEL_PHASE)))
        panels += panels % 2
    return composite_gauss_legendre(-math.pi, math.pi, panels, _GL_ORDER), panels


def _eval_grid(g, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    try:
        vals = np.asarray(g(u[:, None], v[None, :]), dtype=float)
        if vals.shape != (len(u), len(v)):
            raise TypeError
        return vals
    except (TypeError, ValueError):
        return np.array([[g(float(uu), float(vv)) for vv in v] for uu in u])


def _double_sweep(g, m_max: int, n_max: int, panels_u: int, panels_v: int):
    (u, wu), _ = _axis_rule(m_max, QuadConfig(), panels_u)
    (v, wv), _ = _axis_rule(n_max, QuadConfig(), panels_v)
    grid = _eval_grid(g, u, v) * wu[:, None] * wv[None, :]
    mm = np.arange(m_max + 1, dtype=float)
    nn = np.arange(n_max + 1, dtype=float)
    cu = np.cos(np.outer(u, mm))
    su = np.sin(np.outer(u, mm))
    cv = np.cos(np.outer(v, nn))
    sv = np.sin(np.outer(v, nn))
    inv = 1.0 / math.pi ** 2
    a = inv * (cu.T @ grid @ cv)
    b = inv * (cu.T @ grid @ sv)
    c = inv * (su.T @ grid @ cv)
    d = inv * (su.T @ grid @ sv)
    return a, b, c, d


def double_trig_coefficients(f, p: float, q: float, m_max: int, n_max: int,
                             cfg: QuadConfig | None = None) -> DoubleTrigSeries:
    """Double Fourier coefficients of f on [-p, p] x [-q, q] by tensor
    Gauss-Legendre quadrature with panel-doubling error control."""
    cfg = cfg or QuadConfig()
    if p <= 0 or q <= 0:
        raise ValueError("half-periods must be positive")
    g = lambda u, v: f(u * p / math.pi, v * q / math.pi)
    pu = max(8, int(math.ceil(m_max * 2.0 * math.pi / _PANEL_PHASE)))
    pv = max(8, int(math.ceil(n_max * 2.0 * math.pi / _PANEL_PHASE)))
    pu += pu % 2
    pv += pv % 2
    prev = None
    while (pu * _GL_ORDER) * (pv * _GL_ORDER) <= 20_000_000:
        grids = _double_sweep(g, m_max, n_max, pu, pv)
        if prev is not None:
            diff = max(np.max(np.abs(gr - pg)) for gr, pg in zip(grids, prev))
            scale_ref = max(np.max(np.abs(gr)) for gr in grids)
            if diff <= max(cfg.abs_tol, cfg.rel_tol * scale_ref):
                break
        prev = grids
        pu *= 2
        pv *= 2
    else:
        raise NonConvergence("double coefficient sweep did not stabilize")
    a, b, c, d = grids
    return DoubleTrigSeries(p=p, q=q, a=a, b=b, c=c, d=d)


def _lambda_weights(m_max: int, n_max: int) -> np.ndarray:
    w = np.ones((m_max + 1, n_max + 1))
    w[0, :] *= 0.5
    w[:, 0] *= 0.5
    return w


def double_partial_sum(s: DoubleTrigSeries, m: int, n: int, x: float, y: float) -> float:
    """Truncated double sum through modes (m, n) at a point."""
    if m > s.m_modes or n > s.n_modes:
        raise IndexError(
            f"requested ({m}, {n}) exceeds stored ({s.m_modes}, {s.n_modes})")
    u = math.pi * x / s.p
    v = math.pi * y / s.q
    mm = np.arange(m + 1, dtype=float)
    nn = np.arange(n + 1, dtype=float)
    cu, su = np.cos(mm * u), np.sin(mm * u)
    cv, sv = np.cos(nn * v), np.sin(nn * v)
    w = _lambda_weights(m, n)
    val = (cu @ (w * s.a[: m + 1, : n + 1]) @ cv
           + cu @ (w * s.b[: m + 1, : n + 1]) @ sv
           + su @ (w * s.c[: m + 1, : n + 1]) @ cv
           + su @ (w * s.d[: m + 1, : n + 1]) @ sv)
    return float(val)


def to_json_dict(s) -> dict:
    """JSON-ready dict for a TrigSeries or DoubleTrigSeries."""
    if isinstance(s, TrigSeries):
        return {"l": s.l, "a": s.a.tolist(), "b": s.b.tolist()}
    if isinstance(s, DoubleTrigSeries):
        return {"p": s.p, "q": s.q, "a": s.a.tolist(), "b": s.b.tolist(),
                "c": s.c.tolist(), "d": s.d.tolist()}
    raise TypeError(f"cannot serialize {type(s).__name__}")


def from_json_dict(d: dict):
    """Rebuild a TrigSeries or DoubleTrigSeries from its JSON dict."""
    if "l" in d:
        return TrigSeries(l=float(d["l"]), a=np.asarray(d["a"], dtype=float),
                          b=np.asarray(d["b"], dtype=float))
    if "p" in d and "q" in d:
        return DoubleTrigSeries(
            p=float(d["p"]), q=float(d["q"]),
            a=np.asarray(d["a"], dtype=float), b=np.asarray(d["b"], dtype=float),
            c=np.asarray(d["c"], dtype=float), d=np.asarray(d["d"], dtype=float))
    raise ValueError("dict is neither a single nor a double series")
