"""Times the compiled backend against the numpy reference.

Runs the three hot loops (coefficient sweep, damped series evaluation,
Legendre recurrence) on representative sizes and prints one row per
workload.  Usage:

    python3 benchmarks/compare_backends.py [--repeats 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from series_summa import _series_ref

try:
    from series_summa import _series_core
except ImportError:
    _series_core = None


def _best(fn, repeats: int) -> tuple[float, object]:
    out = None
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def _diff(a, b) -> float:
    if isinstance(a, tuple):
        return max(_diff(u, v) for u, v in zip(a, b))
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def workloads():
    rng = np.random.default_rng(20240811)

    for points, nmax in ((4096, 2000), (16384, 10000)):
        wf = rng.standard_normal(points)
        z = rng.uniform(-np.pi, np.pi, points)
        yield (f"trig_sweep    {points:>6} pts, nmax {nmax:>6}",
               lambda m, wf=wf, z=z, nmax=nmax: m.trig_sweep(wf, z, nmax))

    for n in (512, 4096):
        a = rng.standard_normal(n + 1)
        b = rng.standard_normal(n + 1)
        fac = np.exp(-0.01 * np.arange(n + 1.0))
        z = np.linspace(-np.pi, np.pi, 2001)
        yield (f"series_eval   {n:>6} modes, 2001 pts",
               lambda m, a=a, b=b, fac=fac, z=z: m.series_eval(a, b, fac, z))

    for n in (20, 100):
        x = np.linspace(-1.0, 1.0, 100_001)
        yield (f"legendre_sweep  n {n:>4}, 100001 pts",
               lambda m, n=n, x=x: m.legendre_sweep(n, x))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=3,
                    help="timing repeats per workload, best is kept")
    args = ap.parse_args()

    if _series_core is None:
        print("compiled backend not built; timing the reference only\n")
    header = f"{'workload':<36} {'reference':>10} {'compiled':>10} {'speedup':>8}  max diff"
    print(header)
    print("-" * len(header))
    for label, run in workloads():
        t_ref, out_ref = _best(lambda: run(_series_ref), args.repeats)
        if _series_core is None:
            print(f"{label:<36} {t_ref * 1e3:>8.2f}ms {'-':>10} {'-':>8}")
            continue
        t_nat, out_nat = _best(lambda: run(_series_core), args.repeats)
        print(f"{label:<36} {t_ref * 1e3:>8.2f}ms {t_nat * 1e3:>8.2f}ms "
              f"{t_ref / t_nat:>7.1f}x  {_diff(out_ref, out_nat):.2e}")


if __name__ == "__main__":
    main()
