"""Compiled core against the numpy reference, and the fallback switch."""

import os
import subprocess
import sys

import numpy as np
import pytest

from series_summa import _series_ref, backend

pytestmark = pytest.mark.skipif(
    not backend.HAVE_NATIVE, reason="compiled core not built")


def rng():
    return np.random.default_rng(20240811)


def test_trig_sweep_matches_reference():
    from series_summa import _series_core

    g = rng()
    for nmax in (0, 1, 17, 64):
        wf = g.normal(size=200)
        z = g.uniform(-np.pi, np.pi, size=200)
        a1, b1 = _series_core.trig_sweep(wf, z, nmax)
        a2, b2 = _series_ref.trig_sweep(wf, z, nmax)
        assert np.max(np.abs(a1 - a2)) < 1e-12
        assert np.max(np.abs(b1 - b2)) < 1e-12
        assert b1[0] == 0.0


def test_series_eval_matches_reference():
    from series_summa import _series_core

    g = rng()
    for n in (1, 9, 40):
        a = g.normal(size=n + 1)
        b = g.normal(size=n + 1)
        factors = g.uniform(0.0, 1.0, size=n + 1)
        z = g.uniform(-7.0, 7.0, size=129)
        y1 = _series_core.series_eval(a, b, factors, z)
        y2 = _series_ref.series_eval(a, b, factors, z)
        assert np.max(np.abs(y1 - y2)) < 1e-12


def test_legendre_sweep_matches_reference():
    from series_summa import _series_core

    g = rng()
    x = g.uniform(-1.0, 1.0, size=257)
    for n in (0, 1, 2, 15, 40):
        p1 = _series_core.legendre_sweep(n, x)
        p2 = _series_ref.legendre_sweep(n, x)
        assert np.max(np.abs(p1 - p2)) < 1e-12


def test_force_fallback_environment_switch():
    env = dict(os.environ, SERIES_SUMMA_FORCE_FALLBACK="1")
    code = ("from series_summa import backend; "
            "import sys; sys.exit(0 if not backend.HAVE_NATIVE else 3)")
    proc = subprocess.run([sys.executable, "-c", code], env=env,
                          capture_output=True)
    assert proc.returncode == 0, proc.stderr.decode()


def test_native_flag_reported():
    assert backend.trig_sweep is not _series_ref.trig_sweep
