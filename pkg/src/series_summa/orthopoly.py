"""Classical orthogonal polynomials, Gram-Schmidt orthonormalization, and
expansion of functions in an orthogonal family.

Everything is recurrence based; closed-form monomial coefficients are
exposed separately and kept exact (they come out as dyadic rationals).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import backend
from .errors import DegenerateInput, DomainError
from .quadrature import QuadConfig, integrate

__all__ = [
    "OrthoFamily",
    "ExpansionCoeffs",
    "legendre",
    "legendre_coefficients",
    "legendre_norm_sq",
    "legendre_derivative",
    "associated_legendre",
    "chebyshev",
    "gram_schmidt",
    "expand",
    "eval_series",
    "legendre_family",
    "chebyshev_family",
    "check_family",
]


@dataclass(frozen=True)
class OrthoFamily:
    """An orthogonal family on an interval with a weight.

    norm_sq(n) is the squared weighted L2 norm of member n; eval(n, x)
    evaluates member n.
    """

    name: str
    interval: tuple[float, float]
    weight: Callable[[float], float]
    norm_sq: Callable[[int], float]
    eval: Callable[[int, float], float]


@dataclass(frozen=True)
class ExpansionCoeffs:
    family: OrthoFamily
    c: np.ndarray


def legendre(n: int, x):
    """Legendre polynomial P_n(x) by the three-term recurrence.

    x may be a scalar or an array; values outside [-1, 1] are allowed
    (the recurrence does not care).
    """
    if n < 0:
        raise DomainError("degree must be nonnegative")
    arr = np.asarray(x, dtype=float)
    out = backend.legendre_sweep(n, arr.ravel()).reshape(arr.shape)
    return float(out) if arr.ndim == 0 else out


def legendre_coefficients(n: int) -> np.ndarray:
    """Monomial coefficients of P_n, lowest degree first, exactly.

    Coefficients are dyadic rationals; they are returned as floats that
    are exact as long as the integer numerators fit in 2^53, which holds
    for n <= 25.  Beyond that an OverflowError is raised rather than
    returning silently rounded values.
    """
    if n < 0:
        raise DomainError("degree must be nonnegative")
    coeffs = np.zeros(n + 1)
    for k in range(n // 2 + 1):
        num = (-1) ** k * math.comb(n, k) * math.comb(2 * n - 2 * k, n)
        if abs(num) >= 2 ** 53:
            raise OverflowError(
                f"legendre_coefficients: exact coefficients exceed 2^53 at "
                f"n={n}; supported range is n <= 25")
        coeffs[n - 2 * k] = num / 2 ** n
    return coeffs


def legendre_norm_sq(n: int) -> float:
    """Squared L2 norm of P_n on [-1, 1]: 2 / (2n + 1), exactly."""
    if n < 0:
        raise DomainError("degree must be nonnegative")
    return 2.0 / (2 * n + 1)


def legendre_derivative(n: int, x):
    """dP_n/dx via the derivative recurrence, stable at x = +-1."""
    if n < 0:
        raise DomainError("degree must be nonnegative")
    arr = np.asarray(x, dtype=float)
    if n == 0:
        out = np.zeros_like(arr)
        return float(out) if arr.ndim == 0 else out
    # d_{j+1} = d_{j-1} + (2j+1) P_j, carried along with the P recurrence.
    p_prev = np.ones_like(arr)
    p = arr.copy()
    d_prev = np.zeros_like(arr)
    d = np.ones_like(arr)
    for j in range(1, n):
        d_prev, d = d, d_prev + (2 * j + 1) * p
        p_prev, p = p, ((2 * j + 1) * arr * p - j * p_prev) / (j + 1)
    return float(d) if arr.ndim == 0 else d


def _legendre_derivatives(n: int, k: int, x: np.ndarray) -> np.ndarray:
    """k-th derivative of P_n at x, via repeated derivative recurrences."""
    table = [backend.legendre_sweep(j, x) for j in range(n + 1)]
    for m in range(1, k + 1):
        new = [np.zeros_like(x) for _ in range(n + 1)]
        for j in range(m - 1, n):
            prev2 = new[j - 1] if j >= 1 else 0.0
            new[j + 1] = prev2 + (2 * j + 1) * table[j]
        table = new
    return table[n]


def associated_legendre(n: int, k: int, x):
    """Associated function P_n^k(x) = (1-x^2)^(k/2) d^k P_n/dx^k.

    Requires |x| <= 1 and 0 <= k <= n; k = 0 reduces to P_n.
    """
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"need 0 <= k <= n, got n={n}, k={k}")
    arr = np.asarray(x, dtype=float)
    if np.any(np.abs(arr) > 1.0):
        raise DomainError("associated_legendre requires |x| <= 1")
    flat = arr.ravel()
    if k == 0:
        out = backend.legendre_sweep(n, flat).reshape(arr.shape)
        return float(out) if arr.ndim == 0 else out
    dk = _legendre_derivatives(n, k, flat)
    out = ((1.0 - flat * flat) ** (k / 2.0) * dk).reshape(arr.shape)
    return float(out) if arr.ndim == 0 else out


def chebyshev(kind: str, n: int, x):
    """Chebyshev polynomial T_n or U_n by recurrence (no arccos)."""
    if kind not in ("first", "second"):
        raise ValueError(f"kind must be 'first' or 'second', got {kind!r}")
    if n < 0:
        raise DomainError("degree must be nonnegative")
    arr = np.asarray(x, dtype=float)
    if n == 0:
        out = np.ones_like(arr)
        return float(out) if arr.ndim == 0 else out
    prev = np.ones_like(arr)
    cur = arr.copy() if kind == "first" else 2.0 * arr
    for _ in range(1, n):
        prev, cur = cur, 2.0 * arr * cur - prev
    return float(cur) if arr.ndim == 0 else cur


def gram_schmidt(fns, interval, weight=None, cfg: QuadConfig | None = None):
    """Orthonormalize callables on an interval with an optional weight.

    Returns a list of callables spanning the same space, orthonormal in
    the weighted inner product, with positive leading coefficient in the
    sense that each new member keeps the sign of its source function.
    Raises DegenerateInput when a residual norm drops below 1e-12.
    """
    a, b = interval
    w = weight if weight is not None else (lambda x: 1.0)

    def inner(u, v):
        return integrate(lambda x: w(x) * u(x) * v(x), a, b, cfg)

    ortho: list[Callable[[float], float]] = []
    for f in fns:
        comps = [inner(f, g) for g in ortho]
        basis = list(ortho)

        def residual(x, f=f, comps=comps, basis=basis):
            return f(x) - sum(c * g(x) for c, g in zip(comps, basis))

        norm = math.sqrt(max(inner(residual, residual), 0.0))
        if norm < 1e-12:
            raise DegenerateInput(
                f"function {len(ortho)} is linearly dependent on its "
                f"predecessors (residual norm {norm:.3e})")

        ortho.append(lambda x, h=residual, n=norm: h(x) / n)
    return ortho


def expand(f, family: OrthoFamily, n_terms: int, cfg: QuadConfig | None = None) -> ExpansionCoeffs:
    """Expansion coefficients c_n = (f, phi_n)_w / ||phi_n||^2, n = 0..N."""
    a, b = family.interval
    c = np.empty(n_terms + 1)
    for n in range(n_terms + 1):
        num = integrate(
            lambda x, n=n: family.weight(x) * f(x) * family.eval(n, x), a, b, cfg)
        c[n] = num / family.norm_sq(n)
    return ExpansionCoeffs(family=family, c=c)


def eval_series(coeffs: ExpansionCoeffs, x):
    """Evaluate sum_n c_n phi_n(x)."""
    fam = coeffs.family
    total = None
    for n, cn in enumerate(coeffs.c):
        term = cn * np.asarray(fam.eval(n, x), dtype=float)
        total = term if total is None else total + term
    return total


def legendre_family() -> OrthoFamily:
    return OrthoFamily(
        name="legendre",
        interval=(-1.0, 1.0),
        weight=lambda x: 1.0,
        norm_sq=legendre_norm_sq,
        eval=legendre,
    )


def chebyshev_family(kind: str = "first") -> OrthoFamily:
    if kind == "first":
        # The clamp keeps adaptive quadrature finite when a node rounds
        # onto +-1; weighted integrals bottom out near 1e-8 because the
        # 1/sqrt singularity sits at the edge of double resolution.
        return OrthoFamily(
            name="chebyshev_first",
            interval=(-1.0, 1.0),
            weight=lambda x: 1.0 / math.sqrt(max(1.0 - x * x, 1e-16)),
            norm_sq=lambda n: math.pi if n == 0 else math.pi / 2.0,
            eval=lambda n, x: chebyshev("first", n, x),
        )
    if kind == "second":
        return OrthoFamily(
            name="chebyshev_second",
            interval=(-1.0, 1.0),
            weight=lambda x: math.sqrt(max(1.0 - x * x, 0.0)),
            norm_sq=lambda n: math.pi / 2.0,
            eval=lambda n, x: chebyshev("second", n, x),
        )
    raise ValueError(f"kind must be 'first' or 'second', got {kind!r}")


def check_family(family: OrthoFamily, nmax: int, cfg: QuadConfig | None = None) -> dict:
    """Orthogonality / normalization report used by the invariant tests.

    Returns max |<phi_i, phi_j>| off the diagonal and the max relative
    norm error on it, over 0 <= i <= j <= nmax.
    """
    a, b = family.interval
    max_off = 0.0
    max_norm_err = 0.0
    for i in range(nmax + 1):
        for j in range(i, nmax + 1):
            val = integrate(
                lambda x, i=i, j=j: family.weight(x)
                * family.eval(i, x) * family.eval(j, x),
                a, b, cfg)
            if i == j:
                max_norm_err = max(
                    max_norm_err, abs(val - family.norm_sq(i)) / family.norm_sq(i))
            else:
                max_off = max(max_off, abs(val))
    return {"max_offdiag": max_off, "max_norm_rel_err": max_norm_err}
