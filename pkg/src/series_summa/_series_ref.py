"""Numpy reference implementations of the hot loops.

Same signatures as the compiled module _series_core; backend.py picks
whichever is importable.  The k-recurrence multiplies by a fixed unit
rotation, so phase error grows like k * eps and stays below 1e-11 for
k up to 1e4.
"""

from __future__ import annotations

import numpy as np

__all__ = ["trig_sweep", "series_eval", "legendre_sweep"]


def trig_sweep(wf: np.ndarray, z: np.ndarray, nmax: int):
    """Sums A[k] = sum_i wf[i] cos(k z[i]), B[k] = sum_i wf[i] sin(k z[i]).

    Returns arrays of length nmax + 1; B[0] is 0.
    """
    wf = np.ascontiguousarray(wf, dtype=np.float64)
    z = np.ascontiguousarray(z, dtype=np.float64)
    a = np.empty(nmax + 1)
    b = np.zeros(nmax + 1)
    a[0] = wf.sum()
    c1 = np.cos(z)
    s1 = np.sin(z)
    ck = np.ones_like(z)
    sk = np.zeros_like(z)
    for k in range(1, nmax + 1):
        ck, sk = ck * c1 - sk * s1, sk * c1 + ck * s1
        a[k] = wf @ ck
        b[k] = wf @ sk
    return a, b


def series_eval(a: np.ndarray, b: np.ndarray, factors: np.ndarray, z: np.ndarray):
    """Evaluates factors[0]*a[0]/2 + sum_k factors[k]*(a[k] cos kz + b[k] sin kz).

    a, b, factors all have length N + 1 (b[0] ignored).
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    factors = np.asarray(factors, dtype=np.float64)
    z = np.ascontiguousarray(z, dtype=np.float64)
    c1 = np.cos(z)
    s1 = np.sin(z)
    ck = np.ones_like(z)
    sk = np.zeros_like(z)
    y = np.full_like(z, 0.5 * a[0] * factors[0])
    for k in range(1, len(a)):
        ck, sk = ck * c1 - sk * s1, sk * c1 + ck * s1
        y += factors[k] * (a[k] * ck + b[k] * sk)
    return y


def legendre_sweep(n: int, x: np.ndarray):
    """Legendre polynomial P_n on an array, by the three-term recurrence."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    if n == 0:
        return np.ones_like(x)
    pm = np.ones_like(x)
    p = x.copy()
    for k in range(1, n):
        pm, p = p, ((2 * k + 1) * x * p - k * pm) / (k + 1)
    return p
