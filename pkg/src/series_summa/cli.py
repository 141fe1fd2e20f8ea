"""Batch command line front end.

Subcommands expand, sum, smooth, kernels, methods and the solve family
emit CSV or JSON for downstream plotting; outputs are deterministic
(identical invocations give byte-identical bytes).  Exit code 0 means
the artifact was written, 2 a usage problem, 1 a numerical failure
reported as a JSON object on the error stream.

The environment variable SERIES_SUMMA_THREADS caps the thread pools of
the numeric libraries; 0 or unset leaves the choice to them.  It is
applied before anything numeric loads, which is why the heavy imports
happen inside main().
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

__all__ = ["main"]


class _UsageError(Exception):
    pass


def _configure_threads() -> None:
    raw = os.environ.get("SERIES_SUMMA_THREADS", "").strip()
    if not raw:
        return
    try:
        n = int(raw)
    except ValueError:
        raise _UsageError(f"SERIES_SUMMA_THREADS must be an integer, got {raw!r}")
    if n < 0:
        raise _UsageError("SERIES_SUMMA_THREADS must be nonnegative")
    if n == 0:
        return
    for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ.setdefault(var, str(n))


def _scalar(value) -> float:
    """Numeric config value: a number, or an expression like 'pi/4'."""
    if isinstance(value, (int, float)):
        return float(value)
    from .expressions import compile_expression

    return float(compile_expression(str(value), ()) ())


def _data_function(entry, variables: tuple[str, ...]):
    """Data field of a problem config: an expression string in the given
    variables, or {"series": path} pointing at an expand artifact (one
    variable only)."""
    from .expressions import compile_expression

    if isinstance(entry, str):
        return compile_expression(entry, variables)
    if isinstance(entry, dict) and set(entry) == {"series"}:
        if len(variables) != 1:
            raise _UsageError("a stored series only provides one-variable data")
        from .fourier import from_json_dict, partial_sum

        with open(entry["series"], encoding="utf-8") as fh:
            s = from_json_dict(json.load(fh))
        return lambda x: partial_sum(s, s.n_modes, x)
    raise _UsageError(f"bad data entry {entry!r}: expected an expression "
                      "string or {\"series\": path}")


def _zero(*args):
    import numpy as np

    out = np.zeros_like(np.asarray(args[0], dtype=float))
    for extra in args[1:]:
        out = out + np.zeros_like(np.asarray(extra, dtype=float))
    return out


def _quad_config(args):
    if args.tol is None:
        return None
    from .quadrature import QuadConfig

    if args.tol <= 0:
        raise _UsageError("--tol must be positive")
    return QuadConfig(abs_tol=args.tol, rel_tol=args.tol)


def _parse_times(text: str) -> list:
    times = [_scalar(part) for part in text.split(",") if part.strip()]
    if not times:
        raise _UsageError("--times must list at least one instant")
    return times


def _parse_grid2(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise _UsageError(f"--grid expects NXxNY, got {text!r}")
    try:
        nx, ny = int(parts[0]), int(parts[1])
    except ValueError:
        raise _UsageError(f"--grid expects integers, got {text!r}")
    if nx < 2 or ny < 2:
        raise _UsageError("grid needs at least 2 points per axis")
    return nx, ny


def _axis(points: int, upper: float):
    import numpy as np

    if points < 2:
        raise _UsageError("grid needs at least 2 points")
    return np.linspace(0.0, upper, points)


def _load_config(path: str, kind: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise _UsageError(f"cannot read config {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise _UsageError(f"config {path} is not valid JSON: {exc}")
    if cfg.get("kind") != kind:
        raise _UsageError(f"config kind {cfg.get('kind')!r} does not match "
                          f"the solve-{kind} command")
    return cfg


def _problem_kernel(cfg: dict):
    from .kernels import builtin

    return builtin(cfg.get("kernel", "gauss"))


# --- subcommand handlers: each returns (json_obj, csv_header, csv_rows) ---


def _cmd_expand(args):
    from .fourier import to_json_dict, trig_coefficients

    if args.N < 0:
        raise _UsageError("--N must be nonnegative")
    fn = _data_function(args.fn, ("x",))
    s = trig_coefficients(fn, _scalar(args.l), args.N, mode=args.mode,
                          cfg=_quad_config(args))
    rows = [(0, s.a[0], 0.0)]
    rows += [(k, s.a[k], s.b[k - 1]) for k in range(1, s.n_modes + 1)]
    return to_json_dict(s), ("k", "a", "b"), rows


def _method_param(m, value) -> float | int:
    """Parsed parameter, coerced to int for the discrete methods."""
    v = _scalar(value)
    if m.param_kind != "discrete_n":
        return v
    if v != int(v):
        raise _UsageError(f"method {m.name} needs an integer order, got {v}")
    return int(v)


def _cmd_sum(args):
    from .fourier import from_json_dict
    from .summation import generalized_sum, method, summed_partial

    with open(args.series, encoding="utf-8") as fh:
        s = from_json_dict(json.load(fh))
    m = method(args.method, extra=args.extra)
    x = _scalar(args.x)
    if args.schedule is not None:
        schedule = [_method_param(m, part) for part in args.schedule.split(",")
                    if part.strip()]
        res = generalized_sum(s, m, x=x, schedule=schedule)
        obj = {"value": res.value, "converged": res.converged,
               "residual": res.residual, "schedule": list(res.schedule),
               "estimates": list(res.estimates)}
        rows = list(zip(res.schedule, res.estimates))
        return obj, ("param", "estimate"), rows
    if args.param is None:
        raise _UsageError("sum needs --schedule or --param")
    param = _method_param(m, args.param)
    value = summed_partial(s, m, param, x)
    return ({"value": value}, ("param", "value"), [(param, value)])


def _cmd_smooth(args):
    from .kernels import builtin, load_kernel, periodic_smooth, smooth

    if (args.fn is None) == (args.series is None):
        raise _UsageError("smooth needs exactly one of --fn or --series")
    kern = load_kernel(args.kernel_file) if args.kernel_file else builtin(args.kernel)
    r = _scalar(args.r)
    cfg = _quad_config(args)
    if args.fn is not None:
        if args.grid_from is None or args.grid_to is None:
            raise _UsageError("smooth --fn needs --from and --to")
        lo, hi = _scalar(args.grid_from), _scalar(args.grid_to)
        if not lo < hi:
            raise _UsageError("--from must be below --to")
        xs = _axis(args.points, 1.0) * (hi - lo) + lo
        fn = _data_function(args.fn, ("x",))
        us = [smooth(fn, kern, r, float(x), cfg) for x in xs]
    else:
        from .fourier import from_json_dict

        with open(args.series, encoding="utf-8") as fh:
            s = from_json_dict(json.load(fh))
        lo = -s.l if args.grid_from is None else _scalar(args.grid_from)
        hi = s.l if args.grid_to is None else _scalar(args.grid_to)
        if not lo < hi:
            raise _UsageError("--from must be below --to")
        xs = _axis(args.points, 1.0) * (hi - lo) + lo
        us = [float(periodic_smooth(s, kern, r, float(x), cfg)) for x in xs]
    xs = [float(x) for x in xs]
    return ({"x": xs, "u": us}, ("x", "u"), list(zip(xs, us)))


def _cmd_kernels(args):
    from .kernels import builtin, catalog_names, load_kernel, validate

    if args.action == "list":
        names = catalog_names()
        return ({"kernels": names}, ("name",), [(n,) for n in names])
    if args.kernel_file:
        targets = [load_kernel(args.kernel_file)]
    elif args.kernel:
        targets = [builtin(args.kernel)]
    else:
        targets = [builtin(n) for n in catalog_names()]
    reports = [validate(k, _quad_config(args)) for k in targets]
    obj = {"reports": [{
        "name": rep.name,
        "ok": rep.ok,
        "normalization_residual": rep.normalization_residual,
        "decay_violations": rep.decay_violations,
        "moment_residuals": rep.moment_residuals,
    } for rep in reports]}
    rows = [(rep.name, rep.ok, rep.normalization_residual,
             len(rep.decay_violations)) for rep in reports]
    return obj, ("name", "ok", "normalization_residual", "decay_violations"), rows


def _cmd_methods(args):
    from .summation import method_names

    names = method_names()
    return ({"methods": names}, ("name",), [(n,) for n in names])


def _cmd_solve_string(args):
    import numpy as np

    from .pde import StringProblem, string_forced, string_free

    cfg = _load_config(args.config, "string")
    l = _scalar(cfg["geometry"]["l"])
    data = cfg.get("data", {})
    problem = StringProblem(
        l=l, a=_scalar(cfg["a"]),
        chi=_data_function(data["chi"], ("x",)) if "chi" in data else _zero,
        psi=_data_function(data["psi"], ("x",)) if "psi" in data else _zero,
        f=_data_function(data["f"], ("x", "t")) if "f" in data else None)
    n_modes = int(cfg["N"])
    r = _scalar(cfg.get("r", 0.0))
    kern = _problem_kernel(cfg)
    quad = _quad_config(args)
    sol = string_free(problem, n_modes, r=r, k=kern, cfg=quad)
    forced = (string_forced(problem, n_modes, r=r, k=kern, t_quad=quad)
              if problem.f is not None else None)
    xs = _axis(args.points, l)
    times = _parse_times(args.times)
    rows = []
    values = []
    for t in times:
        u = np.asarray(sol.eval(xs, t), dtype=float)
        if forced is not None:
            u = u + np.asarray(forced(xs, t), dtype=float)
        values.append([float(v) for v in u])
        rows += [(float(x), float(t), float(v)) for x, v in zip(xs, u)]
    obj = {"x": [float(x) for x in xs], "t": [float(t) for t in times],
           "u": values}
    return obj, ("x", "t", "u"), rows


def _cmd_solve_membrane(args):
    import numpy as np

    from .pde import MembraneProblem, membrane_forced, membrane_free

    cfg = _load_config(args.config, "membrane")
    l1 = _scalar(cfg["geometry"]["l1"])
    l2 = _scalar(cfg["geometry"]["l2"])
    data = cfg.get("data", {})
    problem = MembraneProblem(
        l1=l1, l2=l2, a=_scalar(cfg["a"]),
        chi=_data_function(data["chi"], ("x", "y")) if "chi" in data else _zero,
        psi=_data_function(data["psi"], ("x", "y")) if "psi" in data else _zero,
        f=_data_function(data["f"], ("x", "y", "t")) if "f" in data else None)
    m_modes, n_modes = int(cfg["M"]), int(cfg["N"])
    r = _scalar(cfg.get("r", 0.0))
    kern = _problem_kernel(cfg)
    quad = _quad_config(args)
    sol = membrane_free(problem, m_modes, n_modes, r=r, k=kern, cfg=quad)
    forced = (membrane_forced(problem, m_modes, n_modes, r=r, k=kern, cfg=quad)
              if problem.f is not None else None)
    nx, ny = _parse_grid2(args.grid)
    xs, ys = _axis(nx, l1), _axis(ny, l2)
    times = _parse_times(args.times)
    rows = []
    values = []
    for t in times:
        u = np.asarray(sol.eval(xs, ys, t), dtype=float)
        if forced is not None:
            u = u + np.asarray(forced(xs, ys, t), dtype=float)
        values.append([[float(v) for v in row] for row in u])
        rows += [(float(x), float(y), float(t), float(u[i, j]))
                 for i, x in enumerate(xs) for j, y in enumerate(ys)]
    obj = {"x": [float(x) for x in xs], "y": [float(y) for y in ys],
           "t": [float(t) for t in times], "u": values}
    return obj, ("x", "y", "t", "u"), rows


def _cmd_solve_helmholtz(args):
    import numpy as np

    from .pde import HelmholtzProblem, helmholtz_solve

    cfg = _load_config(args.config, "helmholtz")
    l1 = _scalar(cfg["geometry"]["l1"])
    l2 = _scalar(cfg["geometry"]["l2"])
    data = cfg.get("data", {})
    if "F" not in data:
        raise _UsageError("helmholtz config needs data.F")
    problem = HelmholtzProblem(l1=l1, l2=l2, theta=_scalar(cfg["theta"]),
                               F=_data_function(data["F"], ("x", "y")))
    sol = helmholtz_solve(problem, int(cfg["M"]), int(cfg["N"]),
                          r=_scalar(cfg.get("r", 0.0)),
                          k=_problem_kernel(cfg), cfg=_quad_config(args))
    nx, ny = _parse_grid2(args.grid)
    xs, ys = _axis(nx, l1), _axis(ny, l2)
    u = np.asarray(sol(xs, ys), dtype=float)
    rows = [(float(x), float(y), float(u[i, j]))
            for i, x in enumerate(xs) for j, y in enumerate(ys)]
    obj = {"x": [float(x) for x in xs], "y": [float(y) for y in ys],
           "u": [[float(v) for v in row] for row in u]}
    return obj, ("x", "y", "u"), rows


def _format_cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _render(payload, fmt: str) -> str:
    obj, header, rows = payload
    if fmt == "json":
        return json.dumps(obj, indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_format_cell(v) for v in row])
    return buf.getvalue()


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="series-summa",
        description="Orthogonal expansions, generalized summation, "
                    "kernel mollification and series-form boundary problems.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--tol", type=float, default=None,
                       help="quadrature tolerance override")

    p = sub.add_parser("expand", help="Fourier coefficients of an expression")
    p.add_argument("--fn", required=True, help="expression in x")
    p.add_argument("--l", required=True, help="half-period (number or expression)")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--mode", choices=("full", "cosine_only", "sine_only"),
                   default="full")
    common(p)
    p.set_defaults(handler=_cmd_expand)

    p = sub.add_parser("sum", help="generalized summation of a stored series")
    p.add_argument("--series", required=True, help="expand output (JSON)")
    p.add_argument("--method", required=True)
    p.add_argument("--extra", type=float, default=None,
                   help="method parameter (riesz exponent)")
    p.add_argument("--x", required=True, help="evaluation point")
    p.add_argument("--schedule", default=None,
                   help="comma list of method parameters r or n")
    p.add_argument("--param", default=None,
                   help="single method parameter instead of a schedule")
    common(p)
    p.set_defaults(handler=_cmd_sum)

    p = sub.add_parser("smooth", help="kernel mollification on a grid")
    p.add_argument("--fn", default=None, help="expression in x")
    p.add_argument("--series", default=None, help="expand output (JSON)")
    p.add_argument("--kernel", default="gauss")
    p.add_argument("--kernel-file", default=None, help="custom kernel JSON")
    p.add_argument("--r", required=True, help="mollification scale")
    p.add_argument("--from", dest="grid_from", default=None)
    p.add_argument("--to", dest="grid_to", default=None)
    p.add_argument("--points", type=int, default=101)
    common(p)
    p.set_defaults(handler=_cmd_smooth)

    p = sub.add_parser("kernels", help="kernel catalog")
    p.add_argument("action", choices=("list", "validate"))
    p.add_argument("--kernel", default=None)
    p.add_argument("--kernel-file", default=None)
    common(p)
    p.set_defaults(handler=_cmd_kernels)

    p = sub.add_parser("methods", help="summation method catalog")
    p.add_argument("action", choices=("list",))
    common(p)
    p.set_defaults(handler=_cmd_methods)

    p = sub.add_parser("solve-string", help="string problem from a config")
    p.add_argument("--config", required=True)
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--times", default="0")
    common(p)
    p.set_defaults(handler=_cmd_solve_string)

    p = sub.add_parser("solve-membrane", help="membrane problem from a config")
    p.add_argument("--config", required=True)
    p.add_argument("--grid", default="33x33")
    p.add_argument("--times", default="0")
    common(p)
    p.set_defaults(handler=_cmd_solve_membrane)

    p = sub.add_parser("solve-helmholtz", help="Helmholtz problem from a config")
    p.add_argument("--config", required=True)
    p.add_argument("--grid", default="33x33")
    common(p)
    p.set_defaults(handler=_cmd_solve_helmholtz)

    return parser


def main(argv=None) -> int:
    try:
        _configure_threads()
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    from .errors import NonConvergence, ResonanceError, SeriesSummaError

    try:
        payload = args.handler(args)
        text = _render(payload, args.format)
    except (NonConvergence, ResonanceError) as exc:
        json.dump({"error": type(exc).__name__, "message": str(exc)},
                  sys.stderr)
        sys.stderr.write("\n")
        return 1
    except (_UsageError, SeriesSummaError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
