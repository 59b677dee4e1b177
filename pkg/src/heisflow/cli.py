"""Command line front end: evaluate grids, find loci, trace flows, verify.

Output is deterministic: floats print through %.17g (lossless for binary64
and locale independent), JSON keys keep insertion order, and randomized
verification takes an explicit --seed.  Non-finite floats become null in
JSON and literal nan/inf tokens in CSV.

Exit codes: 0 success; 1 a verification check failed or the requested
computation has no result (e.g. flow seeded on the characteristic locus);
2 bad usage, unknown surface, or a malformed surface file.
"""

from __future__ import annotations

import argparse
import math
import os
import re
import sys

from .curvature import mean_curvature_local
from .errors import CharacteristicPoint, HeisflowError, OutOfDomain, SpecError, UnknownName
from .flow import integrate_flow
from .horizontal import EPS_CHAR, horizontal_normal, induced_form
from .locus import characteristic_locus
from .patch import SurfaceHandle, eval_jet2
from .builders import resolve_surface
from .verify import DEFAULT_SEED, SUITES, run_suite

__all__ = ["main"]

_GRID_RE = re.compile(r"^(\d+)x(\d+)$")


def _parse_grid(text: str) -> tuple[int, int]:
    m = _GRID_RE.match(text)
    if not m:
        raise argparse.ArgumentTypeError(f"grid must look like 25x25, got {text!r}")
    nu, nv = int(m.group(1)), int(m.group(2))
    if nu < 1 or nv < 1:
        raise argparse.ArgumentTypeError("grid axes must be >= 1")
    return nu, nv


def _fmt(x: float) -> str:
    return "%.17g" % x


def _json_dump(value, out, indent=0):
    """Minimal JSON writer with %.17g floats and null for non-finite."""
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            out.write("{}")
            return
        out.write("{\n")
        for i, (k, v) in enumerate(value.items()):
            out.write(f'{pad}  "{k}": ')
            _json_dump(v, out, indent + 1)
            out.write(",\n" if i < len(value) - 1 else "\n")
        out.write(pad + "}")
    elif isinstance(value, (list, tuple)):
        if not value:
            out.write("[]")
            return
        flat = all(isinstance(v, (int, float, str, bool, type(None))) for v in value)
        if flat:
            out.write("[" + ", ".join(_json_atom(v) for v in value) + "]")
            return
        out.write("[\n")
        for i, v in enumerate(value):
            out.write(pad + "  ")
            _json_dump(v, out, indent + 1)
            out.write(",\n" if i < len(value) - 1 else "\n")
        out.write(pad + "]")
    else:
        out.write(_json_atom(value))


def _json_atom(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _fmt(value) if math.isfinite(value) else "null"
    if isinstance(value, str):
        escaped = (
            value.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
        )
        return f'"{escaped}"'
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _emit(report: dict, columns: list[str] | None, fmt: str, out_path: str | None):
    if fmt == "csv":
        lines = [",".join(columns)]
        for row in report["rows"]:
            lines.append(",".join(_fmt(x) if isinstance(x, float) else str(x) for x in row))
        text = "\n".join(lines) + "\n"
    else:
        import io

        buf = io.StringIO()
        _json_dump(report, buf)
        text = buf.getvalue() + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _axis_points(lo: float, hi: float, n: int) -> list[float]:
    if n == 1:
        return [lo]
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def _sub_range(pair, lo: float, hi: float, name: str) -> tuple[float, float]:
    if pair is None:
        return lo, hi
    a, b = float(pair[0]), float(pair[1])
    if not (math.isfinite(a) and math.isfinite(b) and a < b):
        raise SpecError(f"--{name} must be an increasing pair, got {pair}")
    if a < lo or b > hi:
        raise OutOfDomain(
            f"--{name} [{a}, {b}] leaves the surface domain [{lo}, {hi}]"
        )
    return a, b


def _cmd_eval(args, eps_char: float) -> int:
    surface = resolve_surface(args.surface)
    dom = surface.domain
    u0, u1 = _sub_range(args.urange, dom.u_min, dom.u_max, "urange")
    v0, v1 = _sub_range(args.vrange, dom.v_min, dom.v_max, "vrange")
    nu, nv = args.grid
    columns = ["u", "v", "x", "y", "t", "n1", "n2", "nh_norm", "p_u", "p_v", "H"]
    rows = []
    for u in _axis_points(u0, u1, nu):
        for v in _axis_points(v0, v1, nv):
            j = eval_jet2(surface, u, v)
            nh = horizontal_normal(j)
            pf = induced_form(j)
            try:
                h = mean_curvature_local(surface, u, v, eps_char=eps_char, warn=False).H
            except CharacteristicPoint:
                h = math.nan
            x, y, t = (float(c) for c in j.value)
            rows.append([u, v, x, y, t, nh.n1, nh.n2, nh.norm, pf.p_u, pf.p_v, h])
    report = {
        "surface": surface.label or args.surface,
        "grid": [nu, nv],
        "urange": [u0, u1],
        "vrange": [v0, v1],
        "eps_char": eps_char,
        "columns": columns,
        "rows": rows,
    }
    _emit(report, columns, args.format, args.out)
    return 0


def _cmd_locus(args, eps_char: float) -> int:
    surface = resolve_surface(args.surface)
    pts = characteristic_locus(surface, grid=args.grid, refine=args.refine)
    columns = ["u", "v", "x", "y", "t", "nh_norm"]
    report = {
        "surface": surface.label or args.surface,
        "grid": list(args.grid),
        "refine": args.refine,
        "count": len(pts),
        "columns": columns,
        "rows": [[p.u, p.v, p.x, p.y, p.t, p.nh_norm] for p in pts],
    }
    _emit(report, columns, args.format, args.out)
    return 0


def _cmd_flow(args, eps_char: float) -> int:
    surface = resolve_surface(args.surface)
    u, v = args.seed
    trace = integrate_flow(
        surface, u, v, ds=args.ds, max_steps=args.steps, eps_char=eps_char
    )
    columns = ["s", "u", "v", "x", "y", "t", "arc"]
    rows = []
    for i in range(len(trace)):
        rows.append(
            [
                float(trace.params[i]),
                float(trace.uv[i, 0]),
                float(trace.uv[i, 1]),
                float(trace.points[i, 0]),
                float(trace.points[i, 1]),
                float(trace.points[i, 2]),
                float(trace.arc[i]),
            ]
        )
    report = {
        "surface": surface.label or args.surface,
        "seed": [u, v],
        "ds": args.ds,
        "steps": args.steps,
        "seed_index": trace.seed_index,
        "stop_backward": trace.stop_backward,
        "stop_forward": trace.stop_forward,
        "columns": columns,
        "rows": rows,
    }
    _emit(report, columns, args.format, args.out)
    print(
        f"traced {len(trace)} points; stopped backward: {trace.stop_backward}, "
        f"forward: {trace.stop_forward}",
        file=sys.stderr,
    )
    return 0


def _cmd_verify(args, eps_char: float) -> int:
    report = run_suite(suite=args.suite, seed=args.seed, eps_char=eps_char)
    for check in report["checks"]:
        status = "PASS" if check["passed"] else "FAIL"
        stat = check["stat"]
        stat_text = _fmt(stat) if isinstance(stat, float) else str(stat)
        print(
            f"{status} {check['name']}: stat={stat_text} tol={_fmt(check['tol'])} "
            f"n={check['count']}",
            file=sys.stderr,
        )
    if args.out:
        import io

        buf = io.StringIO()
        _json_dump(report, buf)
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(buf.getvalue() + "\n")
    else:
        _json_dump(report, sys.stdout)
        sys.stdout.write("\n")
    return 0 if report["passed"] else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heisflow",
        description="Surface curvature and horizontal flow tools for the "
        "first Heisenberg group.",
    )
    parser.add_argument(
        "--eps-char",
        type=float,
        default=None,
        help="characteristic threshold scale (default 1e-9 or "
        "HEISFLOW_EPS_CHAR)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output_flags(p):
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None, help="write output to this path")

    p_eval = sub.add_parser("eval", help="evaluate normals, form and H on a grid")
    p_eval.add_argument("surface", help="catalog name or surface JSON file")
    p_eval.add_argument("--grid", type=_parse_grid, default=(25, 25), metavar="NxM")
    p_eval.add_argument("--urange", nargs=2, type=float, default=None, metavar=("LO", "HI"))
    p_eval.add_argument("--vrange", nargs=2, type=float, default=None, metavar=("LO", "HI"))
    add_output_flags(p_eval)

    p_locus = sub.add_parser("locus", help="locate the characteristic locus")
    p_locus.add_argument("surface")
    p_locus.add_argument("--grid", type=_parse_grid, default=(101, 101), metavar="NxM")
    p_locus.add_argument("--refine", type=int, default=60)
    add_output_flags(p_locus)

    p_flow = sub.add_parser("flow", help="trace the horizontal flow leaf")
    p_flow.add_argument("surface")
    p_flow.add_argument(
        "--seed", nargs=2, type=float, required=True, metavar=("U", "V"),
        help="parameter seed point of the leaf",
    )
    p_flow.add_argument("--ds", type=float, default=1e-3)
    p_flow.add_argument("--steps", type=int, default=2000)
    add_output_flags(p_flow)

    p_verify = sub.add_parser("verify", help="run a self-verification suite")
    p_verify.add_argument("--suite", choices=sorted(SUITES), default="all")
    p_verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_verify.add_argument("--out", default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.eps_char is not None:
        eps_char = args.eps_char
    else:
        env = os.environ.get("HEISFLOW_EPS_CHAR")
        try:
            eps_char = float(env) if env else EPS_CHAR
        except ValueError:
            print(f"heisflow: bad HEISFLOW_EPS_CHAR value {env!r}", file=sys.stderr)
            return 2
    if not (eps_char > 0.0 and math.isfinite(eps_char)):
        print(f"heisflow: eps-char must be positive, got {eps_char}", file=sys.stderr)
        return 2

    handlers = {
        "eval": _cmd_eval,
        "locus": _cmd_locus,
        "flow": _cmd_flow,
        "verify": _cmd_verify,
    }
    try:
        return handlers[args.command](args, eps_char)
    except (UnknownName, SpecError, OutOfDomain, ValueError) as e:
        print(f"heisflow: {e}", file=sys.stderr)
        return 2
    except CharacteristicPoint as e:
        print(f"heisflow: {e}", file=sys.stderr)
        return 1
    except HeisflowError as e:
        print(f"heisflow: {e}", file=sys.stderr)
        return 1
