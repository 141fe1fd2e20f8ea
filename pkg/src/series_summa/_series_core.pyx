# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: trig coefficient sweeps, damped series evaluation,
Legendre recurrence over arrays.  Mirrors _series_ref exactly."""

from libc.math cimport cos, sin

import numpy as np

__all__ = ["trig_sweep", "series_eval", "legendre_sweep"]


def trig_sweep(wf, z, int nmax):
    """Sums A[k] = sum_i wf[i] cos(k z[i]), B[k] = sum_i wf[i] sin(k z[i])."""
    cdef double[::1] wfv = np.ascontiguousarray(wf, dtype=np.float64)
    cdef double[::1] zv = np.ascontiguousarray(z, dtype=np.float64)
    cdef Py_ssize_t npts = wfv.shape[0]
    a_out = np.zeros(nmax + 1)
    b_out = np.zeros(nmax + 1)
    cdef double[::1] av = a_out
    cdef double[::1] bv = b_out
    cdef double[::1] ck = np.empty(npts)
    cdef double[::1] sk = np.empty(npts)
    cdef double[::1] c1 = np.empty(npts)
    cdef double[::1] s1 = np.empty(npts)
    cdef Py_ssize_t i
    cdef int k
    cdef double sa, sb, c, s, w
    sa = 0.0
    for i in range(npts):
        c1[i] = cos(zv[i])
        s1[i] = sin(zv[i])
        ck[i] = 1.0
        sk[i] = 0.0
        sa += wfv[i]
    av[0] = sa
    for k in range(1, nmax + 1):
        sa = 0.0
        sb = 0.0
        for i in range(npts):
            c = ck[i] * c1[i] - sk[i] * s1[i]
            s = sk[i] * c1[i] + ck[i] * s1[i]
            ck[i] = c
            sk[i] = s
            w = wfv[i]
            sa += w * c
            sb += w * s
        av[k] = sa
        bv[k] = sb
    return a_out, b_out


def series_eval(a, b, factors, z):
    """factors[0]*a[0]/2 + sum_k factors[k]*(a[k] cos kz + b[k] sin kz)."""
    cdef double[::1] av = np.ascontiguousarray(a, dtype=np.float64)
    cdef double[::1] bv = np.ascontiguousarray(b, dtype=np.float64)
    cdef double[::1] fv = np.ascontiguousarray(factors, dtype=np.float64)
    cdef double[::1] zv = np.ascontiguousarray(z, dtype=np.float64)
    cdef Py_ssize_t npts = zv.shape[0]
    cdef Py_ssize_t nmodes = av.shape[0]
    out = np.empty(npts)
    cdef double[::1] yv = out
    cdef Py_ssize_t i
    cdef int k
    cdef double c1, s1, c, s, cn, y
    for i in range(npts):
        c1 = cos(zv[i])
        s1 = sin(zv[i])
        c = 1.0
        s = 0.0
        y = 0.5 * av[0] * fv[0]
        for k in range(1, nmodes):
            cn = c * c1 - s * s1
            s = s * c1 + c * s1
            c = cn
            y += fv[k] * (av[k] * c + bv[k] * s)
        yv[i] = y
    return out


def legendre_sweep(int n, x):
    """Legendre polynomial P_n on an array, by the three-term recurrence."""
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t npts = xv.shape[0]
    out = np.empty(npts)
    cdef double[::1] pv = out
    cdef Py_ssize_t i
    cdef int k
    cdef double ak, bk, dk
    cdef double pm0, p0, x0
    cdef double pm1, p1, x1
    cdef double pm2, p2, x2
    cdef double pm3, p3, x3
    if n == 0:
        for i in range(npts):
            pv[i] = 1.0
        return out
    # The (2k+1)x p - k pm over k+1 form is kept verbatim so that the
    # endpoint identity P_n(+-1) = (+-1)^n stays exact in floating
    # point; four interleaved points overlap the division latency.
    i = 0
    while i + 4 <= npts:
        x0 = xv[i]; x1 = xv[i + 1]; x2 = xv[i + 2]; x3 = xv[i + 3]
        pm0 = 1.0; pm1 = 1.0; pm2 = 1.0; pm3 = 1.0
        p0 = x0; p1 = x1; p2 = x2; p3 = x3
        for k in range(1, n):
            ak = 2.0 * k + 1.0
            bk = k
            dk = k + 1.0
            pm0, p0 = p0, (ak * x0 * p0 - bk * pm0) / dk
            pm1, p1 = p1, (ak * x1 * p1 - bk * pm1) / dk
            pm2, p2 = p2, (ak * x2 * p2 - bk * pm2) / dk
            pm3, p3 = p3, (ak * x3 * p3 - bk * pm3) / dk
        pv[i] = p0; pv[i + 1] = p1; pv[i + 2] = p2; pv[i + 3] = p3
        i += 4
    while i < npts:
        x0 = xv[i]
        pm0 = 1.0
        p0 = x0
        for k in range(1, n):
            pm0, p0 = p0, ((2.0 * k + 1.0) * x0 * p0 - k * pm0) / (k + 1.0)
        pv[i] = p0
        i += 1
    return out
