"""Command-line entry point.

    kfib fib --kappa 2 --n 10 --binet
    kfib ptilde --kappa 1 --order 5 --format json
    kfib bound --family W --kappa 1 --gamma 1 --lambda 0 --alpha 0
    kfib fekete --family SL --mu-from -2 --mu-to 4 --mu-steps 13
    kfib verify --suite all --config sweep.json

Exit codes: 0 success (an invalid bound domain still counts), 1 a
verification failure, 2 a usage error.
"""
import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from ._precision import to_mp
from .bounds import SPECIAL_CASES, bounds_for
from .errors import KfibError, UsageError
from .fibonacci import KappaContext, kfib_binet, kfib_rec
from .functionals import ClassSpec
from .quadfield import QuadNumber, qfloat
from .shelllike import ptilde_series
from .verify import SweepConfig, run_suite

__all__ = ["main", "OutputTable", "parse_rational"]

BASE_FAMILIES = ("W", "R", "B", "P")
ALL_FAMILIES = BASE_FAMILIES + tuple(SPECIAL_CASES)


def parse_rational(text: str) -> Fraction:
    """``"p/q"`` or a decimal string, read exactly."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


@dataclass
class OutputTable:
    headers: list
    rows: list

    def __post_init__(self):
        for row in self.rows:
            if len(row) != len(self.headers):
                raise ValueError("row length does not match header length")

    def render(self, fmt: str) -> str:
        if fmt == "json":
            records = [dict(zip(self.headers, (_json_cell(c) for c in row))) for row in self.rows]
            return json.dumps(records, indent=None) + "\n"
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.headers)
        for row in self.rows:
            w.writerow([_csv_cell(c) for c in row])
        return buf.getvalue()


def _float(x) -> float:
    if isinstance(x, QuadNumber):
        return float(qfloat(x, 64))
    v = to_mp(x)
    if v.imag != 0:
        raise TypeError("complex value in a real column")
    return float(v.real)


def _json_cell(c):
    if c is None or isinstance(c, (bool, str)):
        return c
    if isinstance(c, int):
        return c
    return _float(c)


def _csv_cell(c) -> str:
    if c is None:
        return ""
    if isinstance(c, bool):
        return "true" if c else "false"
    if isinstance(c, str):
        return c
    if isinstance(c, int):
        return str(c)
    return format(_float(c), ".17g")


def _exact_str(x):
    return None if x is None else str(x)


# --- subcommands -------------------------------------------------------------


def cmd_fib(args) -> tuple:
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    ctx = KappaContext.make(args.kappa)
    headers = ["n", "F", "F_value"]
    if args.binet:
        headers.append("binet_match")
    rows, ok = [], True
    for n in range(args.n + 1):
        v = kfib_rec(ctx, n)
        row = [n, str(v.a), v.a]
        if args.binet:
            match = kfib_binet(ctx, n) == v
            ok = ok and match
            row.append(match)
        rows.append(row)
    return OutputTable(headers, rows), 0 if ok else 1


def cmd_ptilde(args) -> tuple:
    if args.order < 0:
        raise UsageError("--order must be >= 0")
    ctx = KappaContext.make(args.kappa)
    coeffs = ptilde_series(ctx, max(args.order, 1)).coeffs[: args.order + 1]
    rows = [[n, str(c), c] for n, c in enumerate(coeffs)]
    return OutputTable(["n", "coefficient", "value"], rows), 0


# parameters each special-case family accepts
_SPECIAL_CASE_PARAMS = {
    "FSL": ("gamma", "lam"),
    "BSL": ("gamma", "alpha"),
    "HSL": ("gamma",),
    "SLg": ("gamma",),
    "SL": (),
    "KSL": (),
}


def _report(args):
    ctx = KappaContext.make(args.kappa)
    fam = args.family
    given = {k: getattr(args, k) for k in ("gamma", "lam", "alpha") if getattr(args, k) is not None}
    if fam in BASE_FAMILIES:
        if fam == "B" and "lam" not in given:
            given["lam"] = Fraction(1)
        return bounds_for(ClassSpec(fam, **given), ctx)
    allowed = _SPECIAL_CASE_PARAMS[fam]
    extra = sorted(set(given) - set(allowed))
    if extra:
        names = ", ".join("--lambda" if e == "lam" else f"--{e}" for e in extra)
        raise UsageError(f"family {fam} does not take {names}")
    defaults = {"gamma": Fraction(1), "lam": Fraction(0), "alpha": Fraction(0)}
    return SPECIAL_CASES[fam](ctx, *(given.get(k, defaults[k]) for k in allowed))


_BOUND_FIELDS = (
    "radicand",
    "a2_bound_sq",
    "a3_bound",
    "fekete_flat",
    "fekete_slope",
    "fekete_threshold",
)


def cmd_bound(args) -> tuple:
    rep = _report(args)
    headers = ["family", "kappa", "mode", "valid", "a2_bound"]
    row = [rep.family, str(args.kappa), rep.mode, rep.valid, rep.a2_bound]
    for name in _BOUND_FIELDS:
        val = getattr(rep, name)
        headers += [name, name + "_exact"]
        row += [val, _exact_str(val) if isinstance(val, (QuadNumber, Fraction)) else None]
    headers.append("notes")
    row.append("; ".join(rep.notes))
    return OutputTable(headers, [row]), 0


def cmd_fekete(args) -> tuple:
    if args.mu_steps < 1:
        raise UsageError("--mu-steps must be >= 1")
    rep = _report(args)
    headers = ["mu", "value", "branch", "threshold", "h_mu"]
    if not rep.valid:
        print(f"bounds not valid: {'; '.join(rep.notes)}", file=sys.stderr)
        return OutputTable(headers, []), 0
    a, b, k = args.mu_from, args.mu_to, args.mu_steps
    mus = [a] if k == 1 else [a + (b - a) * Fraction(i, k - 1) for i in range(k)]
    rows = []
    for mu in mus:
        fr = rep.fekete(mu)
        rows.append([mu, fr.value, fr.branch, fr.threshold, fr.h_mu])
    return OutputTable(headers, rows), 0


def cmd_verify(args) -> int:
    cfg = SweepConfig.from_file(args.config) if args.config else SweepConfig()
    if args.tolerance is not None:
        cfg.tolerance = args.tolerance
    records, summary, ok = run_suite(args.suite, cfg)
    out = sys.stdout
    for rec in records:
        out.write(json.dumps(rec, sort_keys=True) + "\n")
    out.write(json.dumps({"summary": summary}, sort_keys=True) + "\n")
    return 0 if ok else 1


# --- parser -------------------------------------------------------------------


def _add_format(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _add_class_params(p, families):
    p.add_argument("--family", choices=families, required=True)
    p.add_argument("--kappa", type=parse_rational, default=Fraction(1))
    p.add_argument("--gamma", type=parse_rational, default=None, help="default 1")
    p.add_argument("--lambda", dest="lam", type=parse_rational, default=None, help="default 0 (1 for B)")
    p.add_argument("--alpha", type=parse_rational, default=None, help="default 0")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kfib", description="kappa-Fibonacci shell-like coefficient bounds")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fib", help="kappa-Fibonacci numbers F_0..F_n")
    p.add_argument("--kappa", type=parse_rational, default=Fraction(1))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--binet", action="store_true", help="cross-check against the closed form")
    _add_format(p)

    p = sub.add_parser("ptilde", help="Taylor coefficients of the generating function")
    p.add_argument("--kappa", type=parse_rational, default=Fraction(1))
    p.add_argument("--order", type=int, default=8)
    _add_format(p)

    p = sub.add_parser("bound", help="coefficient bounds for one class")
    _add_class_params(p, ALL_FAMILIES)
    p.add_argument("--format", choices=("csv", "json"), default="json")

    p = sub.add_parser("fekete", help="Fekete-Szego bound over a mu grid")
    _add_class_params(p, ALL_FAMILIES)
    p.add_argument("--mu-from", type=parse_rational, default=Fraction(-2))
    p.add_argument("--mu-to", type=parse_rational, default=Fraction(4))
    p.add_argument("--mu-steps", type=int, default=13)
    _add_format(p)

    p = sub.add_parser("verify", help="run a verification suite, JSON lines on stdout")
    p.add_argument("--suite", choices=("proof-chain", "domination", "specialization", "typos", "all"), default="all")
    p.add_argument("--config", default=None, help="JSON file with SweepConfig fields; empty means defaults")
    p.add_argument("--tolerance", type=float, default=None)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(args)
        handler = {"fib": cmd_fib, "ptilde": cmd_ptilde, "bound": cmd_bound, "fekete": cmd_fekete}[args.command]
        table, code = handler(args)
    except (UsageError, OSError, json.JSONDecodeError, TypeError) as exc:
        print(f"kfib: error: {exc}", file=sys.stderr)
        return 2
    except KfibError as exc:
        print(f"kfib: error: {exc}", file=sys.stderr)
        return 2
    if args.command == "bound" and args.format == "json":
        sys.stdout.write(json.dumps(dict(zip(table.headers, (_json_cell(c) for c in table.rows[0])))) + "\n")
    else:
        sys.stdout.write(table.render(args.format))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
