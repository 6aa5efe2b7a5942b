"""mhyperg command line.

Exit codes: 0 success, 1 a check failed, 2 usage error.
Set MHYPERG_CACHE_DIR to keep computed Jack tables between runs.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from datetime import datetime, timezone
from fractions import Fraction

import numpy as np

from . import __version__
from .hyper import HyperParams, PoleError, Truncation, pfq, pfq_two
from .jack import TAGS, binom, jack, jack_power
from .partitions import ContainmentError, ParameterError, Partition, as_alpha, k_of, partitions_upto, rho, subpartitions
from .symfun import fraction_str, json_key
from .suites import SUITES, SuiteConfig, UsageError, run_suite, serialize, summarize

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits with 2 already; keep the message terse
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _partition(text: str) -> Partition:
    return Partition.parse(text) if text.strip() else Partition(())


def _floats(text: str) -> list[float]:
    return [float(Fraction(t)) for t in text.split(",") if t.strip()]


def _rationals(text: str) -> list[Fraction]:
    return [Fraction(t) for t in text.split(",") if t.strip()]


def _alphas(text: str) -> list:
    return [as_alpha(t) for t in text.split(",") if t.strip()]


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def _emit(args, payload: dict, rows: list[dict] | None = None) -> None:
    """Write JSON (default) or CSV of ``rows`` to --out or stdout."""
    fmt = "csv" if getattr(args, "csv", False) else "json"
    if fmt == "csv" and rows is not None:
        buf = io.StringIO()
        cols = sorted({k for r in rows for k in r})
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(v) if isinstance(v, (dict, list)) else v for k, v in r.items()})
        text = buf.getvalue()
    else:
        text = json.dumps(payload, indent=2, sort_keys=False) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _header(command: str) -> dict:
    return {"tool": "mhyperg", "version": __version__, "command": command,
            "generated": datetime.now(timezone.utc).isoformat(timespec="seconds")}


# ---------------------------------------------------------------------------
# Subcommands


def cmd_jack(args) -> int:
    lam = _partition(args.lam)
    alpha = as_alpha(args.alpha)
    if args.basis == "p":
        f = jack_power(lam, alpha, args.form, None, args.n)
    else:
        f = jack(lam, alpha, args.n, args.form)
    out = {"lambda": list(lam), "alpha": serialize(alpha), "n": args.n, "form": args.form, "basis": args.basis,
           "coeffs": f.to_json()}
    if args.json or args.out:
        _emit(args, out)
    else:
        for key, val in f.to_json().items():
            print(f"{args.basis}{key}\t{val}")
    return EXIT_OK


def cmd_pfq(args) -> int:
    params = HyperParams(tuple(_floats(args.upper)), tuple(_floats(args.lower)), as_alpha(args.alpha))
    x = _floats(args.x)
    tr = Truncation(args.max_degree)
    res = pfq_two(params, x, _floats(args.y), tr) if args.y else pfq(params, x, tr)
    out = {"value": res.value, "tail": res.tail, "degrees_used": res.degrees_used}
    if args.json or args.out:
        _emit(args, out)
    else:
        print(f"{res.value:.17g}\t(tail {res.tail:.3g}, degree {res.degrees_used})")
    return EXIT_OK


def _family(args):
    from . import ortho

    lam = _partition(args.lam)
    alpha = as_alpha(args.alpha)
    if args.family == "laguerre":
        return ortho.laguerre(lam, Fraction(args.a), alpha, args.n)
    if args.family == "jacobi":
        return ortho.jacobi(lam, Fraction(args.a), Fraction(args.b), alpha, args.n)
    if args.family == "hermite":
        return ortho.hermite(lam, alpha, args.n)
    raise UsageError(f"unknown family {args.family!r}")


def cmd_ortho(args) -> int:
    if args.family in ("laguerre", "jacobi") and args.a is None:
        raise UsageError(f"{args.family} needs --a")
    if args.family == "jacobi" and args.b is None:
        raise UsageError("jacobi needs --b")
    f = _family(args)
    out = {"family": args.family, "lambda": args.lam, "alpha": serialize(f.alpha), "n": f.n, "basis": f.basis,
           "coeffs": f.to_json()}
    if args.eval:
        pt = _rationals(args.eval)
        if len(pt) != f.n:
            raise UsageError(f"--eval needs {f.n} coordinates")
        out["value"] = fraction_str(f.evaluate(pt))
    _emit(args, out)
    return EXIT_OK


def cmd_opcheck(args) -> int:
    from . import operators, ortho

    lam = _partition(args.lam)
    alpha = as_alpha(args.alpha)
    k = k_of(alpha)
    n = args.n
    p = k * (n - 1) + 1
    if args.op == "E_ab":
        a, b = Fraction(args.a), Fraction(args.b)
        f = ortho.jacobi(lam, a, b, alpha, n).to_poly()
        op, ev = operators.E_jacobi(a, b, k, n), (a + b + 2 * p) * lam.size + 2 * rho(lam, alpha)
    elif args.op == "E_hermite":
        f = ortho.hermite(lam, alpha, n).to_poly()
        op, ev = operators.E_hermite(k, n), Fraction(-2 * lam.size)
    elif args.op == "E_laguerre":
        a = Fraction(args.a)
        f = ortho.laguerre(lam, a, alpha, n).to_poly()
        op, ev = operators.E_laguerre(a, k, n), Fraction(lam.size)
    elif args.op == "E_laplace":
        f = operators.omega_poly(lam, alpha, n)
        op, ev = operators.E_laplace(k, n), operators.laplace_eigenvalue(lam, k, n)
    elif args.op == "box2":
        f = operators.omega_poly(lam, alpha, n)
        op, ev = operators.box(2, k, n), rho(lam, alpha)
    elif args.op == "eps2":
        f = operators.omega_poly(lam, alpha, n)
        op, ev = operators.eps(2, n), Fraction(lam.size)
    else:
        raise UsageError(f"unknown operator {args.op!r}")
    res = operators.eigencheck(op, f, ev)
    ok = res.is_zero()
    out = {"op": args.op, "lambda": list(lam), "alpha": serialize(alpha), "n": n, "eigenvalue": fraction_str(Fraction(ev)),
           "residual_max": fraction_str(Fraction(res.max_abs_coeff())), "status": "pass" if ok else "fail"}
    _emit(args, out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_mc(args) -> int:
    from . import integrals

    alpha = as_alpha(args.alpha) if args.k is None else as_alpha(1 / Fraction(args.k))
    lam = _partition(args.lam)
    N, seed = args.samples, args.seed
    y = _floats(args.y) if args.y else None
    if args.check == "selberg":
        r = integrals.selberg_kadell_check(lam, float(Fraction(args.a)), float(Fraction(args.b)), args.n, alpha, N, seed)
    elif args.check == "laguerre-moment":
        r = integrals.laguerre_moment_check(lam, float(Fraction(args.a)), args.n, alpha, N, seed)
    elif args.check == "hermite-moment":
        r = integrals.hermite_even_moment(lam, alpha, args.n, N, seed)
    elif args.check == "orthogonality":
        mu = _partition(args.mu or "")
        a = float(Fraction(args.a)) if args.a is not None else None
        b = float(Fraction(args.b)) if args.b is not None else None
        r = integrals.orthogonality_check(args.family, lam, mu, alpha, args.n, a=a, b=b, samples=N, seed=seed)
    elif args.check == "laplace-omega":
        r = integrals.laplace_omega_check(lam, float(Fraction(args.a)), alpha, y, args.n, N, seed, args.max_degree)
    elif args.check == "hankel-kernel":
        r = integrals.hankel_check("kernel", alpha, args.n, float(Fraction(args.a)), y, z=_floats(args.z), samples=N,
                                   seed=seed, D=args.max_degree)
    elif args.check == "hankel-laguerre":
        r = integrals.hankel_check("laguerre", alpha, args.n, float(Fraction(args.a)), y, lam=lam, samples=N, seed=seed,
                                   D=args.max_degree)
    else:
        raise UsageError(f"unknown check {args.check!r}")
    out = {"estimate": r.estimate, "stderr": r.stderr, "target": r.target, "sigmas": r.sigmas, "verdict": r.verdict,
           "tail_allowance": r.tail_allowance, "status": r.status, "params": serialize(r.params)}
    if args.json or args.out:
        _emit(args, out)
    else:
        print(f"{r.check}: estimate {r.estimate:.6g} +- {r.stderr:.2g}, target {r.target:.6g}, "
              f"{r.sigmas:.2f} sigma -> {r.verdict}")
    if r.status == "evidence":
        return EXIT_OK
    return EXIT_OK if r.passed() else EXIT_FAIL


def cmd_run_suite(args) -> int:
    cfg = SuiteConfig(args.suite, _alphas(args.alpha), _ints(args.n), args.max_degree, args.samples, args.seed)
    code, rows = run_suite(cfg)
    payload = {"header": _header("run-suite"), "config": cfg.to_json(), "summary": summarize(rows), "rows": rows}
    _emit(args, payload, rows)
    return code


def _table_rows(args) -> list[dict]:
    from . import ortho

    alpha = as_alpha(args.alpha)
    rows = []
    if args.kind == "jack-coeffs":
        for lam in partitions_upto(args.max_size, None):
            f = jack(lam, alpha, args.n, args.form)
            rows.append({"lambda": json_key(lam), "form": args.form, "coeffs": f.to_json()})
    elif args.kind == "binomials":
        for lam in partitions_upto(args.max_size, None):
            for mu in subpartitions(lam):
                rows.append({"lambda": json_key(lam), "mu": json_key(mu), "binom": fraction_str(binom(lam, mu, alpha))})
    elif args.kind == "jacobi-c":
        if args.C is None:
            import sympy

            C = sympy.Symbol("C")
        else:
            C = Fraction(args.C)
        for lam in partitions_upto(args.max_size, None):
            for mu in subpartitions(lam):
                v = ortho.jacobi_c(lam, mu, C, alpha)
                if isinstance(v, Fraction):
                    text = fraction_str(v)
                else:
                    import sympy

                    text = str(sympy.factor(sympy.simplify(v)))
                rows.append({"lambda": json_key(lam), "mu": json_key(mu), "c": text})
    elif args.kind in ("laguerre", "hermite"):
        n = args.n or 2
        for lam in partitions_upto(args.max_size, n):
            if args.kind == "laguerre":
                f = ortho.laguerre(lam, Fraction(args.a if args.a is not None else 0), alpha, n)
            else:
                f = ortho.hermite(lam, alpha, n)
            rows.append({"lambda": json_key(lam), "basis": f.basis, "coeffs": f.to_json()})
    else:
        raise UsageError(f"unknown table {args.kind!r}")
    return rows


def cmd_emit_table(args) -> int:
    rows = _table_rows(args)
    params = {"kind": args.kind, "alpha": serialize(as_alpha(args.alpha)), "max_size": args.max_size, "n": args.n}
    _emit(args, {"params": params, "rows": rows}, rows)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="mhyperg", description="Jack polynomials and hypergeometric functions of matrix argument")
    ap.add_argument("--version", action="version", version=f"mhyperg {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, fmt=True):
        p.add_argument("--alpha", default="2", help="Jack parameter (rational or 'inf')")
        p.add_argument("--out", help="write output to this file")
        if fmt:
            g = p.add_mutually_exclusive_group()
            g.add_argument("--json", action="store_true", help="JSON output")
            g.add_argument("--csv", action="store_true", help="CSV output (tables and suites)")

    p = sub.add_parser("jack", help="coefficients of one Jack polynomial")
    common(p)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--n", type=int, default=None, help="number of variables (default: enough for all monomials)")
    p.add_argument("--form", choices=TAGS, default="P")
    p.add_argument("--basis", choices=("m", "p"), default="m", help="monomial or power-sum coefficients")
    p.set_defaults(func=cmd_jack)

    p = sub.add_parser("pfq", help="evaluate a hypergeometric series")
    common(p)
    p.add_argument("--upper", default="")
    p.add_argument("--lower", default="")
    p.add_argument("--x", required=True, help="eigenvalues, comma separated")
    p.add_argument("--y", help="second argument for the two-argument series")
    p.add_argument("--max-degree", type=int, default=30)
    p.set_defaults(func=cmd_pfq)

    p = sub.add_parser("ortho", help="Laguerre, Jacobi or Hermite polynomial")
    common(p)
    p.add_argument("--family", choices=("laguerre", "jacobi", "hermite"), required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eval", help="point (exact rationals) at which to evaluate")
    p.set_defaults(func=cmd_ortho)

    p = sub.add_parser("opcheck", help="exact eigenfunction check of a differential operator")
    common(p)
    p.add_argument("--op", choices=("E_ab", "E_hermite", "E_laguerre", "E_laplace", "box2", "eps2"), required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--a", default="1/2")
    p.add_argument("--b", default="1/2")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_opcheck)

    p = sub.add_parser("mc", help="Monte Carlo check of an integral identity")
    common(p)
    p.add_argument("--check", required=True,
                   choices=("selberg", "laguerre-moment", "hermite-moment", "orthogonality", "laplace-omega", "hankel-kernel",
                            "hankel-laguerre"))
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--k", help="k = 1/alpha (overrides --alpha)")
    p.add_argument("--lambda", dest="lam", default="")
    p.add_argument("--mu")
    p.add_argument("--family", choices=("laguerre", "jacobi", "hermite"), default="laguerre")
    p.add_argument("--a", default="2")
    p.add_argument("--b", default="3")
    p.add_argument("--y")
    p.add_argument("--z")
    p.add_argument("--max-degree", type=int, default=50)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("run-suite", help="run a named verification suite")
    common(p)
    p.set_defaults(alpha="1/2,1,2,3")
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--n", default="1,2,3", help="comma separated list of n")
    p.add_argument("--max-degree", type=int, default=6)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=cmd_run_suite)

    p = sub.add_parser("emit-table", help="write a table of exact coefficients")
    common(p)
    p.add_argument("--kind", choices=("jack-coeffs", "binomials", "jacobi-c", "laguerre", "hermite"), required=True)
    p.add_argument("--max-size", type=int, default=4)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--form", choices=TAGS, default="P")
    p.add_argument("--a")
    p.add_argument("--C", help="value of C for jacobi-c (symbolic when omitted)")
    p.set_defaults(func=cmd_emit_table)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ParameterError, ContainmentError, PoleError, ValueError) as exc:
        print(f"mhyperg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
