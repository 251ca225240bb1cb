"""Command-line entry point; every command writes CSV.

Reproduce the tables::

    brinkman-mg table --name 1 --omega one     # two-grid LFA factors, omega = 1
    brinkman-mg table --name 1 --omega opt     # same with optimal omega
    brinkman-mg table --name 2                 # measured two-grid factors, omega = 1
    brinkman-mg table --name 3                 # measured two-grid factors, optimal omega
    brinkman-mg table --name 4 --omega one --schur-iters 1   # V(1,1) iteration counts

Residual histories (figure data)::

    brinkman-mg solve --n 64 --eps 1 --levels 0 --omega one --schur-iters 2
"""

from __future__ import annotations

import argparse
import csv
import math
import re
import sys

import numpy as np

from . import lfa
from .multigrid import CycleConfig, solve
from .problems import discretization_error

TABLE_EPS = [1.0, 2.0**-2, 2.0**-4, 2.0**-6, 2.0**-8]
TABLE_N = [32, 64, 128, 256]
EXIT_USAGE = 1
EXIT_DIVERGED = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_eps(text: str) -> float:
    """Accept ``0.25``, ``2^-2`` or ``2**-2``."""
    m = re.fullmatch(r"\s*2\s*(\^|\*\*)\s*(-?\d+)\s*", text)
    value = 2.0 ** int(m.group(2)) if m else float(text)
    if not 0.0 < value <= 1.0:
        raise argparse.ArgumentTypeError(f"eps must lie in (0, 1], got {text}")
    return value


def parse_omega(text: str):
    key = text.strip().lower()
    if key in ("one", "opt"):
        return key
    try:
        value = float(key)
    except ValueError:
        raise argparse.ArgumentTypeError(f"omega must be 'one', 'opt' or a number, got {text}")
    if value <= 0:
        raise argparse.ArgumentTypeError("omega must be positive")
    return value


def fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    return f"{x:.6g}"


def eps_label(eps: float) -> str:
    k = math.log2(eps)
    if k == int(k):
        return "1" if k == 0 else f"2^{int(k)}"
    return fmt(eps)


def _shared(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--eps", type=parse_eps, default=1.0)
    p.add_argument("--omega", type=parse_omega, default="one")
    p.add_argument("--nu1", type=int, default=1)
    p.add_argument("--nu2", type=int, default=1)
    p.add_argument("--schur-iters", type=int, default=3)
    p.add_argument("--omega-j", type=float, default=0.8)
    p.add_argument("--levels", type=int, default=0, help="0: down to n=4, 2: two-grid")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=100)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--out", default="-")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="brinkman-mg",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("lfa-smoothing", help="closed-form smoothing factors and optimal omega")
    _shared(p)
    p.add_argument("--h", type=float, default=None, help="meshsize (default 1/n)")
    p.add_argument("--eps-list", type=parse_eps, nargs="+", default=None)

    p = sub.add_parser("lfa-twogrid", help="two-grid LFA factors rho_h(nu)")
    _shared(p)
    p.add_argument("--h", type=float, default=None)
    p.add_argument("--nu", type=int, nargs="+", default=[1, 2, 3, 4])

    p = sub.add_parser("solve", help="multigrid solve of the manufactured problem; relres history")
    _shared(p)

    p = sub.add_parser("table", help="reproduce a results table (1-4)")
    _shared(p)
    p.add_argument("--name", required=True, choices=["1", "2", "3", "4"])
    p.add_argument("--runs", type=int, default=1, help="seeds averaged for tables 2-3")

    p = sub.add_parser("mms-convergence", help="discretisation errors and ratios")
    _shared(p)
    p.add_argument("--n-list", type=int, nargs="+", default=[32, 64, 128])
    return parser


def _config(args, **over) -> CycleConfig:
    opts = dict(
        n=args.n,
        eps=args.eps,
        omega=args.omega,
        nu1=args.nu1,
        nu2=args.nu2,
        schur_m=args.schur_iters,
        omega_j=args.omega_j,
        levels=args.levels,
        tol=args.tol,
        max_iter=args.max_iter,
        seed=args.seed,
    )
    opts.update(over)
    return CycleConfig(**opts)


def cmd_lfa_smoothing(args):
    h = args.h if args.h is not None else 1.0 / args.n
    rows = []
    for eps in args.eps_list or [args.eps]:
        b = lfa.spectral_bounds(h * h / (eps * eps))
        rows.append([eps, h, b.r, b.d1, b.d2, b.omega_opt, b.mu_opt, b.mu_omega_one])
    return ["eps", "h", "r", "d1", "d2", "omega_opt", "mu_opt", "mu_omega1"], rows, 0


def cmd_lfa_twogrid(args):
    h = args.h if args.h is not None else 1.0 / args.n
    rows = []
    for nu in args.nu:
        rho = lfa.twogrid_lfa_factor(args.eps, h, args.omega, nu, 0, samples=args.samples)
        rows.append([args.eps, h, args.omega, nu, rho])
    return ["eps", "h", "omega", "nu", "rho"], rows, 0


def cmd_solve(args):
    report = solve(_config(args))
    rows = [[k, rel] for k, rel in enumerate(report.history)]
    return ["iter", "relres"], rows, 0 if report.converged else EXIT_DIVERGED


def cmd_table(args):
    name = args.name
    rows = []
    if name == "1":
        h = 1.0 / args.n
        header = ["eps", "mu", "rho1", "rho2", "rho3", "rho4"]
        for eps in TABLE_EPS:
            r = h * h / (eps * eps)
            mu = lfa.mu_omega_one(r) if args.omega == "one" else lfa.mu_opt(r)
            rhos = [lfa.twogrid_lfa_factor(eps, h, args.omega, nu, 0, args.samples) for nu in (1, 2, 3, 4)]
            rows.append([eps_label(eps), mu] + rhos)
    elif name in ("2", "3"):
        omega = "one" if name == "2" else "opt"
        header = ["eps", "rho1", "rho2", "rho3", "rho4"]
        for eps in TABLE_EPS:
            row = [eps_label(eps)]
            for nu in (1, 2, 3, 4):
                vals = [
                    solve(_config(args, eps=eps, omega=omega, levels=2, nu1=nu, nu2=0, seed=args.seed + k)).rho_hat
                    for k in range(args.runs)
                ]
                row.append(float(np.mean(vals)))
            rows.append(row)
    else:
        header = ["eps"] + [f"n{n}" for n in TABLE_N]
        for eps in TABLE_EPS:
            counts = [
                solve(_config(args, n=n, eps=eps, nu1=1, nu2=1, levels=0)).iterations for n in TABLE_N
            ]
            rows.append([eps_label(eps)] + counts)
    return header, rows, 0


def cmd_mms(args):
    rows = []
    prev = None
    for n in args.n_list:
        eu, ep = discretization_error(n, args.eps, schur_m=args.schur_iters, omega=args.omega)
        ratios = [prev[0] / eu, prev[1] / ep] if prev else [float("nan"), float("nan")]
        rows.append([n, eu, ep] + ratios)
        prev = (eu, ep)
    return ["n", "err_u", "err_p", "ratio_u", "ratio_p"], rows, 0


COMMANDS = {
    "lfa-smoothing": cmd_lfa_smoothing,
    "lfa-twogrid": cmd_lfa_twogrid,
    "solve": cmd_solve,
    "table": cmd_table,
    "mms-convergence": cmd_mms,
}


def run_command(argv=None, stdout=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        header, rows, code = COMMANDS[args.command](args)
    except ValueError as exc:
        print(f"brinkman-mg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = stdout or sys.stdout
    close = False
    if args.out != "-":
        out = open(args.out, "w", newline="")
        close = True
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(x) for x in row])
    finally:
        if close:
            out.close()
    return code


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()
