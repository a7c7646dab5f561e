"""Command-line front end.

Exit codes: 0 success, 1 a checked identity or inequality failed, 2 the
computation was infeasible or degenerate (or the solver gave up), 3 bad input
(parse error, size cap, bad tolerance).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import graph as gc
from . import linalg
from . import parameters as P
from .errors import DegenerateQuotient, OsGraphError, SizeCapExceeded, SolverError
from .sdp import SolverSettings, dump_problem

EXIT_OK, EXIT_CHECK, EXIT_SOLVER, EXIT_INPUT = 0, 1, 2, 3

ENV_TOL = {"gap_tol": "OSGRAPH_GAP_TOL", "feas_tol": "OSGRAPH_FEAS_TOL",
           "flag_tol": "OSGRAPH_FLAG_TOL"}
DEFAULT_TOL = {"gap_tol": SolverSettings.gap_tol, "feas_tol": SolverSettings.feas_tol,
               "flag_tol": P.FLAG_TOL}

PARAMS = ("theta", "theta_bar", "theta_dual", "d_inf", "d_inf_dual", "sigma", "sigma_dual",
          "gamma", "omega", "chi", "alpha", "phi_induced", "ratio", "lambda1")
DEFAULT_PARAMS = "theta,theta_bar,d_inf,sigma,gamma,omega,chi"
NEEDS_X = {"d_inf", "d_inf_dual", "sigma", "sigma_dual", "ratio"}


class InputError(OsGraphError):
    pass


# --- configuration ----------------------------------------------------------------

def _tolerance(args, name):
    val = getattr(args, name, None)
    source = "--" + name.replace("_", "-")
    if val is None:
        env = os.environ.get(ENV_TOL[name])
        if env is None:
            return DEFAULT_TOL[name]
        source = ENV_TOL[name]
        try:
            val = float(env)
        except ValueError:
            raise InputError(f"{source}={env!r} is not a number") from None
    if not (val > 0 and math.isfinite(val)):
        raise InputError(f"{source} must be positive, got {val}")
    return val


def _settings(args) -> SolverSettings:
    return SolverSettings(gap_tol=_tolerance(args, "gap_tol"), feas_tol=_tolerance(args, "feas_tol"))


def _check_cap(g, cap):
    if g.n > cap:
        raise SizeCapExceeded(f"graph has {g.n} vertices, above the size cap {cap}")


def _load_x(source, g):
    if source == "RG":
        return gc.r_matrix(g)
    if source == "I":
        return np.eye(g.n)
    if source == "AG":
        return gc.adjacency(g)
    return linalg.read_matrix(source)


def _parse_params(text):
    names = [p.strip() for p in text.split(",") if p.strip()]
    bad = [p for p in names if p not in PARAMS]
    if bad or not names:
        raise InputError(f"unknown parameter(s) {bad}; choose from {','.join(PARAMS)}")
    return names


# --- evaluation -------------------------------------------------------------------

def compute_values(g, x, names, settings) -> dict:
    """Evaluate the requested parameters; integers stay exact, the rest are floats."""
    out = {}
    cache = {}

    def get(name, fn):
        if name not in cache:
            cache[name] = fn()
        return cache[name]

    for name in names:
        if name == "theta":
            v = get(name, lambda: P.theta(g, settings))
        elif name == "theta_bar":
            v = get(name, lambda: P.theta_bar(g, settings))
        elif name == "theta_dual":
            v = P.theta_dual(g, settings)
        elif name == "d_inf":
            v = get(name, lambda: P.d_inf(g, x, settings))
        elif name == "d_inf_dual":
            v = P.d_inf_dual(g, x, settings)
        elif name == "sigma":
            v = get(name, lambda: P.sigma(g, x, settings))
        elif name == "sigma_dual":
            v = P.sigma_dual(g, x, settings)
        elif name == "gamma":
            v = P.gamma(g, settings)
        elif name == "omega":
            v = gc.clique_number(g)
        elif name == "chi":
            v = gc.chromatic_number(g)
        elif name == "alpha":
            v = gc.independence_number(g)
        elif name == "phi_induced":
            v = gc.induced_bipartite_max(g)[2]
        elif name == "lambda1":
            v = linalg.lambda_max(gc.adjacency(g)) if g.n else 0.0
        else:  # ratio
            s = get("sigma", lambda: P.sigma(g, x, settings))
            if P.is_degenerate(s, x):
                raise DegenerateQuotient("sigma(G, X) vanishes, so X lies in S_G-perp")
            v = float(get("d_inf", lambda: P.d_inf(g, x, settings))) / float(s)
        out[name] = v if isinstance(v, int) else float(v)
    return out


def _clean(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    if isinstance(v, dict):
        return {k: _clean(w) for k, w in v.items()}
    if isinstance(v, (list, tuple)):
        return [_clean(w) for w in v]
    return v


def _dump_json(obj) -> str:
    return json.dumps(_clean(obj), indent=2, allow_nan=False)


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(row.get(h)) for h in header])
    return buf.getvalue()


def _human(pairs) -> str:
    width = max((len(k) for k, _ in pairs), default=0)
    return "".join(f"{k:<{width}}  {_fmt(v)}\n" for k, v in pairs)


# --- commands ---------------------------------------------------------------------

def cmd_compute(args, out):
    g = gc.read_graph(args.graph)
    _check_cap(g, args.size_cap)
    names = _parse_params(args.params)
    x = _load_x(args.x, g) if NEEDS_X.intersection(names) else None
    values = compute_values(g, x, names, _settings(args))
    if args.format == "json":
        out.write(_dump_json({"graph": str(args.graph), "graph_hash": P.graph_hash(g), "n": g.n,
                              "edges": [list(e) for e in g.edge_list()], "x": args.x,
                              "values": values}) + "\n")
    elif args.format == "csv":
        out.write(_csv([dict(graph=args.graph, n=g.n, m=g.num_edges, **values)],
                       ["graph", "n", "m"] + names))
    else:
        out.write(_human([("graph", args.graph), ("n", g.n), ("edges", g.num_edges)]
                         + list(values.items())))
    return EXIT_OK


def cmd_sandwich(args, out):
    g = gc.read_graph(args.graph)
    _check_cap(g, args.size_cap)
    x = _load_x(args.x, g)
    rep = P.sandwich_report(g, x, _settings(args), flag_tol=_tolerance(args, "flag_tol"))
    failed = any(f.applicable and f.holds is False and f.name != "equality_case"
                 for f in rep.flags)
    if args.format == "json":
        d = rep.as_dict()
        d["graph"] = str(args.graph)
        out.write(_dump_json(d) + "\n")
    elif args.format == "csv":
        rows = [{"flag": f.name, "holds": "" if f.holds is None else str(f.holds).lower(),
                 "residual": float(f.residual), "applicable": str(f.applicable).lower()}
                for f in rep.flags]
        out.write(_csv(rows, ["flag", "holds", "residual", "applicable"]))
    else:
        pairs = [("graph", args.graph)] + list(rep.values.items())
        pairs += [(f"flag {f.name}", "n/a" if f.holds is None else f.holds) for f in rep.flags]
        pairs.append(("distortion_bounds", list(rep.distortion_bounds)))
        out.write(_human(pairs))
    return EXIT_CHECK if failed else EXIT_OK


PRODUCT_COLUMNS = ["trial", "d_inf_G", "d_inf_H", "d_inf_product", "d_inf_residual",
                   "sigma_G", "sigma_H", "sigma_product", "sigma_residual"]


def cmd_product_check(args, out):
    g, h = gc.read_graph(args.g), gc.read_graph(args.h)
    _check_cap(g, args.size_cap)
    _check_cap(h, args.size_cap)
    settings = _settings(args)
    flag_tol = _tolerance(args, "flag_tol")
    rng = np.random.default_rng(args.seed)
    rows = []
    for t in range(args.trials):
        x = linalg.random_symmetric(g.n, rng)
        y = linalg.random_symmetric(h.n, rng)
        r = P.product_check(g, h, x, y, settings, cap=args.product_cap)
        rows.append(dict(trial=t, **r.as_dict()))
    worst = max(max(r["d_inf_residual"], r["sigma_residual"]) for r in rows)
    if args.format == "json":
        out.write(_dump_json({"g": str(args.g), "h": str(args.h), "seed": args.seed,
                              "rows": rows, "max_residual": worst,
                              "flag_tol": flag_tol, "passed": worst <= flag_tol}) + "\n")
    elif args.format == "csv":
        out.write(_csv(rows, PRODUCT_COLUMNS))
    else:
        out.write(_csv(rows, PRODUCT_COLUMNS).replace(",", "  "))
        out.write(f"max residual {worst!r} (flag_tol {flag_tol:g})\n")
    return EXIT_OK if worst <= flag_tol else EXIT_CHECK


def cmd_theta_stability(args, out):
    g = gc.read_graph(args.graph)
    _check_cap(g, args.size_cap)
    flag_tol = _tolerance(args, "flag_tol")
    r = P.theta_stability_check(g, args.p, _settings(args), cap=args.product_cap)
    row = {"graph": str(args.graph), "p": args.p, "theta_G": r.theta_G,
           "theta_product": r.theta_product, "residual": r.residual}
    if args.format == "json":
        out.write(_dump_json(dict(row, passed=r.residual <= flag_tol)) + "\n")
    elif args.format == "csv":
        out.write(_csv([row], list(row)))
    else:
        out.write(_human(list(row.items())))
    return EXIT_OK if r.residual <= flag_tol else EXIT_CHECK


def cmd_iso(args, out):
    g, h = gc.read_graph(args.g), gc.read_graph(args.h)
    perm = None
    if g.n == h.n:
        perm = gc.is_isomorphic(g, h, cap=args.iso_cap)
    row = {"isomorphic": perm is not None, "permutation": perm}
    if args.format == "json":
        out.write(_dump_json(row) + "\n")
    elif args.format == "csv":
        out.write(_csv([{"isomorphic": str(perm is not None).lower(),
                         "permutation": "" if perm is None else " ".join(map(str, perm))}],
                       ["isomorphic", "permutation"]))
    else:
        out.write(_human([("isomorphic", perm is not None),
                          ("permutation", "" if perm is None else " ".join(map(str, perm)))]))
    return EXIT_OK


def _batch_row(job):
    path, names, x_source, gap_tol, feas_tol, cap = job
    row = {"path": path, "status": "ok", "error": ""}
    code = EXIT_OK
    try:
        g = gc.read_graph(path)
        _check_cap(g, cap)
        row.update(n=g.n, m=g.num_edges, graph_hash=P.graph_hash(g))
        x = _load_x(x_source, g) if NEEDS_X.intersection(names) else None
        row.update(compute_values(g, x, names, SolverSettings(gap_tol=gap_tol, feas_tol=feas_tol)))
    except (SolverError, DegenerateQuotient) as exc:
        code = EXIT_SOLVER
        row.update(status=type(exc).__name__, error=_describe_failure(exc))
    except (OsGraphError, OSError) as exc:
        code = EXIT_INPUT
        row.update(status=type(exc).__name__, error=str(exc))
    return row, code


def cmd_batch(args, out):
    names = _parse_params(args.params)
    if args.list == "-":
        lines, base = sys.stdin.read().splitlines(), Path.cwd()
    else:
        lines, base = Path(args.list).read_text().splitlines(), Path(args.list).resolve().parent
    paths = []
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if line:
            p = Path(line)
            paths.append(str(p if p.is_absolute() else base / p))
    jobs = [(p, names, args.x, _tolerance(args, "gap_tol"), _tolerance(args, "feas_tol"),
             args.size_cap) for p in paths]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_batch_row, jobs))  # map keeps input order
    else:
        results = [_batch_row(j) for j in jobs]
    header = ["path", "n", "m", "graph_hash"] + names + ["status", "error"]
    rows = [r for r, _ in results]
    if args.format == "json":
        out.write(_dump_json(rows) + "\n")
    else:
        out.write(_csv(rows, header))
    return max((c for _, c in results), default=EXIT_OK)


# --- entry point ------------------------------------------------------------------

def _describe_failure(exc) -> str:
    msg = f"{type(exc).__name__}: {exc}"
    problem = getattr(exc, "problem", None)
    if problem is not None:
        fd, path = tempfile.mkstemp(prefix="osgraph-lmi-", suffix=".txt")
        with os.fdopen(fd, "w") as fh:
            fh.write(dump_problem(problem))
        msg += f" (LMI dumped to {path})"
    return msg


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="osgraph",
        description="Graph parameters from quotient operator norms: theta, d_inf, sigma, gamma.",
        epilog="Tolerance defaults may be overridden by OSGRAPH_GAP_TOL, OSGRAPH_FEAS_TOL and "
               "OSGRAPH_FLAG_TOL; command-line flags take precedence.")
    sub = ap.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "human"), default=None,
                        help="output format (default json; csv for batch)")
    common.add_argument("--gap-tol", type=float, default=None, help="SDP duality-gap tolerance")
    common.add_argument("--feas-tol", type=float, default=None, help="SDP feasibility tolerance")
    common.add_argument("--flag-tol", type=float, default=None,
                        help="tolerance for inequality flags and identity residuals")
    common.add_argument("--size-cap", type=int, default=gc.CLIQUE_CAP,
                        help="refuse graphs with more vertices (default %(default)s)")
    common.add_argument("--product-cap", type=int, default=P.PRODUCT_CAP,
                        help="refuse strong products with more vertices (default %(default)s)")
    xarg = argparse.ArgumentParser(add_help=False)
    xarg.add_argument("--x", default="RG",
                      help="X matrix: RG (default), I, AG, or a matrix file path")

    p = sub.add_parser("compute", parents=[common, xarg], help="evaluate selected parameters")
    p.add_argument("--graph", required=True)
    p.add_argument("--params", default=DEFAULT_PARAMS,
                   help=f"comma-separated subset of {','.join(PARAMS)}")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("sandwich", parents=[common, xarg],
                       help="full report with sandwich-type inequality flags")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_sandwich)

    p = sub.add_parser("product-check", parents=[common],
                       help="multiplicativity of d_inf and sigma under the strong product")
    p.add_argument("--g", required=True)
    p.add_argument("--h", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1)
    p.set_defaults(func=cmd_product_check)

    p = sub.add_parser("theta-stability", parents=[common],
                       help="compare theta(G) with theta of the strong product with K_p")
    p.add_argument("--graph", required=True)
    p.add_argument("--p", type=int, default=2)
    p.set_defaults(func=cmd_theta_stability)

    p = sub.add_parser("iso", parents=[common], help="brute-force isomorphism test")
    p.add_argument("--g", required=True)
    p.add_argument("--h", required=True)
    p.add_argument("--iso-cap", type=int, default=gc.ISO_CAP)
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("batch", parents=[common, xarg],
                       help="evaluate parameters for a list of graph files, one path per line")
    p.add_argument("list", help="file with one graph path per line ('-' for stdin); "
                                "relative paths resolve against the list file's directory")
    p.add_argument("--params", default=DEFAULT_PARAMS)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_batch, default_format="csv")
    return ap


def main(argv=None, out=None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout if out is None else out
    if args.format is None:
        args.format = getattr(args, "default_format", "json")
    try:
        return args.func(args, out)
    except (SolverError, DegenerateQuotient) as exc:
        print(f"osgraph: {_describe_failure(exc)}", file=sys.stderr)
        return EXIT_SOLVER
    except (OsGraphError, OSError) as exc:
        print(f"osgraph: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
