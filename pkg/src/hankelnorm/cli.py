"""Command-line front end.

Exit codes: 0 success, 1 a checked inequality or regression failed,
2 usage error, 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import bounds, dirichlet, verify
from .domains import ConformalDomain
from .errors import ConvergenceError

log = logging.getLogger("hankelnorm")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NONCONVERGENCE = 0, 1, 2, 3

CSV_HEADER = ["domain", "alpha", "dim", "lower_rigidity", "commutator",
              "upper_sharp", "putnam", "khavinson", "chain_ok"]


class UsageError(Exception):
    pass


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def parse_alpha(text: str) -> list[float]:
    """``a`` or an inclusive grid ``start:stop:step``."""
    parts = text.split(":")
    try:
        nums = [float(p) for p in parts]
    except ValueError as exc:
        raise UsageError(f"bad alpha value {text!r}") from exc
    if len(nums) == 1:
        values = nums
    elif len(nums) == 3:
        start, stop, step = nums
        if step <= 0:
            raise UsageError("alpha grid step must be positive")
        if stop < start:
            values = []
        else:
            count = int(math.floor((stop - start) / step + 1e-9)) + 1
            values = [round(start + i * step, 12) for i in range(count)]
    else:
        raise UsageError(f"bad alpha value {text!r}; use a or start:stop:step")
    for a in values:
        if a < -1:
            raise UsageError(f"alpha must be >= -1, got {a}")
    return values


def report_row(r: bounds.BoundReport) -> list[str]:
    return [r.domain_id, fmt(r.alpha), str(r.dim), fmt(r.lower_rigidity),
            fmt(r.commutator_norm), fmt(r.upper_sharp), fmt(r.upper_putnam),
            fmt(r.khavinson_lower), fmt(r.chain_ok)]


def render_reports(reports, form: str) -> str:
    rows = [report_row(r) for r in reports]
    if form == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        w.writerows(rows)
        return buf.getvalue()
    if form == "json":
        return json.dumps([dict(zip(CSV_HEADER, r)) for r in rows], indent=2) + "\n"
    return render_table(CSV_HEADER, rows)


def render_table(header, rows) -> str:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join(lines) + "\n"


def emit(text: str, out: str | None):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def load_domain(args) -> ConformalDomain:
    try:
        return ConformalDomain.resolve(args.domain, samples=args.samples)
    except FileNotFoundError as exc:
        raise UsageError(f"domain file not found: {args.domain}") from exc
    except ValueError as exc:
        raise UsageError(f"bad domain {args.domain!r}: {exc}") from exc


def sweep_reports(dom, alphas, dim, jobs=1):
    def one(a):
        return bounds.full_report(dom, alpha=a, dim=dim)

    if jobs > 1 and len(alphas) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(one, alphas))
    return [one(a) for a in alphas]


def cmd_bound(args) -> int:
    dom = load_domain(args)
    reports = sweep_reports(dom, parse_alpha(args.alpha), args.dim, args.jobs)
    emit(render_reports(reports, args.format), args.out)
    return EXIT_OK if all(r.chain_ok for r in reports) else EXIT_FAIL


def cmd_sweep(args) -> int:
    dom = load_domain(args)
    reports = sweep_reports(dom, parse_alpha(args.alpha), args.dim, args.jobs)
    emit(render_reports(reports, args.format or "csv"), args.out)
    return EXIT_OK if all(r.chain_ok for r in reports) else EXIT_FAIL


def cmd_rigidity(args) -> int:
    dom = load_domain(args)
    rows = []
    for a in parse_alpha(args.alpha):
        rho = bounds.rigidity(dom.map, a)
        one = bounds.norm_sq_of_one(dom.map, a)
        row = {"domain": dom.name, "alpha": a, "rigidity": rho, "norm_sq_of_one": one,
               "lower_bound": rho / one}
        if a == 0.0:
            phys, sv = bounds.st_venant_check(dom.map)
            row.update(rho_physical=phys, st_venant_bound=sv)
        rows.append(row)
    emit(render_dicts(rows, args.format), args.out)
    return EXIT_OK


def render_dicts(rows, form):
    keys = []
    for r in rows:
        keys += [k for k in r if k not in keys]
    if form == "json":
        return json.dumps(rows, indent=2) + "\n"
    table = [[fmt(r.get(k)) for k in keys] for r in rows]
    if form == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(keys)
        w.writerows(table)
        return buf.getvalue()
    return render_table(keys, table)


def cmd_example1(args) -> int:
    values = verify.example1_values(args.samples)
    pi = math.pi
    print(f"Per(Omega)           = {values['perimeter']:.12g}   (16)")
    print(f"Area(Omega)          = {values['area']:.12g}   (6 pi = {6 * pi:.12g})")
    print(f"Khavinson bound      = {values['khavinson']:.12g}   (9 pi^2/16 = {9 * pi**2 / 16:.12g})")
    print(f"Hardy rigidity bound = {values['rigidity_bound']:.12g}   (29 pi/16 = {29 * pi / 16:.12g})")
    for name, ok in verify.example1_comparisons(values):
        if not ok:
            print(f"FAILED: {name}", file=sys.stderr)
            return EXIT_FAIL
    return EXIT_OK


def cmd_verify(args) -> int:
    alphas = parse_alpha(args.alpha) if args.alpha else list(verify.DEFAULT_ALPHAS)
    domains = None
    if args.domain:
        domains = [load_domain(args)]
    checks = verify.run_battery(alphas=alphas, dim=args.dim, domains=domains, fd=args.fd)
    summary = {
        "passed": all(c.passed for c in checks),
        "checks": [c.as_dict() for c in checks],
    }
    emit(json.dumps(summary, indent=2, default=float) + "\n", args.out)
    failed = [c.name for c in checks if not c.passed]
    if failed:
        print("failed: " + ", ".join(failed), file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_dirichlet(args) -> int:
    if args.polygon:
        try:
            shape = dirichlet.read_polygon(args.polygon)
        except (OSError, ValueError) as exc:
            raise UsageError(f"bad polygon file: {exc}") from exc
        name, series = args.polygon, None
        extent = max(float(np.ptp(shape.real)), float(np.ptp(shape.imag)))
    else:
        dom = load_domain(args)
        shape, name = dom, dom.name
        series = math.pi * bounds.rigidity(dom.map, 0.0)
        extent = dom.diameter
    h = args.h if args.h else extent / 400
    grid = dirichlet.solve(shape, h, tol=args.tol, method=args.method)
    rho = dirichlet.torsional_rigidity_fd(grid)
    row = {"domain": name, "h": h, "method": grid.method, "iterations": grid.iterations,
           "residual": grid.residual, "rho_fd": rho}
    if series is not None:
        row["rho_series"] = series
        row["rel_diff"] = abs(rho - series) / series
    emit(render_dicts([row], args.format), args.out)
    if series is not None and row["rel_diff"] >= args.fd_rtol:
        return EXIT_FAIL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--domain", default="disk",
                        help="builtin name (disk, example1) or coefficient file")
    common.add_argument("--alpha", default="0", help="a or start:stop:step (inclusive)")
    common.add_argument("--dim", type=int, default=64)
    common.add_argument("--samples", type=int, default=4096)
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--format", choices=("csv", "json", "table"), default=None)
    common.add_argument("--jobs", type=int, default=1, help="threads for alpha sweeps")
    common.add_argument("--tol", type=float, default=1e-8,
                        help="residual tolerance for iterative solvers")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="hankelnorm", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("bound", parents=[common], help="inequality chain for one domain")
    sub.add_parser("rigidity", parents=[common], help="weighted torsional rigidity")
    sub.add_parser("example1", parents=[common], help="reproduce the cardioid example")
    sub.add_parser("sweep", parents=[common], help="CSV rows over an alpha grid")
    v = sub.add_parser("verify", parents=[common], help="run the property battery")
    v.add_argument("--fd", action="store_true", help="include the finite-difference check")
    d = sub.add_parser("dirichlet", parents=[common], help="finite-difference rigidity")
    d.add_argument("--polygon", default=None, help="closed polygon file (re im per vertex)")
    d.add_argument("--h", type=float, default=None, help="grid spacing (default diam/400)")
    d.add_argument("--method", choices=("cg", "sor"), default="cg")
    d.add_argument("--fd-rtol", type=float, default=0.03,
                   help="allowed relative gap to the series rigidity")
    return p


COMMANDS = {
    "bound": cmd_bound,
    "rigidity": cmd_rigidity,
    "example1": cmd_example1,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
    "dirichlet": cmd_dirichlet,
}


def _glue_alpha(argv):
    """Let ``--alpha -1:1:0.5`` through; argparse would read it as an option."""
    out, it = [], iter(argv)
    for tok in it:
        if tok == "--alpha":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--alpha={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _glue_alpha(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.dim < 1:
        print("error: --dim must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    if args.format is None and args.command != "sweep":
        args.format = "table"
    if args.command == "verify" and args.alpha == "0":
        args.alpha = None
    if args.command == "verify" and args.domain == "disk":
        args.domain = None
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"non-convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
