"""Command-line front end: ``cyclotome {table,verify,scan,det,badprimes}``.

Exit codes: 0 pass, 1 a mathematical check failed, 2 usage or parameter error.
Results go to stdout, progress and diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from importlib import resources

from .binomdet import (
    BinomMatrixSpec,
    Variant,
    adc_det,
    bareiss_det,
    build_binom_matrix,
    det_nonzero_mod_p,
    det_valuation,
    variant_spec,
)
from .bounds import asymptotic_value, bad_prime_certificate, check_asymptotic_00
from .config import CheckFailed, CyclotomeError, Limits, LimitError, ParameterError
from .cyclotomy import (
    Method,
    cyclotomic_number_gcd,
    cyclotomic_numbers_rank,
    cyclotomic_table,
    deviation_bound_holds,
    make_params,
    row_sums_expected,
    sum_identity_values,
    variance_values,
    wilson_bijection_check,
)
from .field import field_for_order
from .ntheory import is_prime
from .sweep import ALL_CHECKS, SweepOptions, sweep

EXIT_OK, EXIT_CHECK, EXIT_USAGE = 0, 1, 2

TABLE_SCHEMA = "cyclotome.table.v1"
VERIFY_SCHEMA = "cyclotome.verify.v1"
DET_SCHEMA = "cyclotome.det.v1"
BADPRIMES_SCHEMA = "cyclotome.badprimes.v1"


def load_schema(name: str) -> dict:
    """The shipped JSON schema for ``name`` in table, verify, scan, det, badprimes."""
    path = resources.files("cyclotome") / "schemas" / f"{name}.schema.json"
    return json.loads(path.read_text(encoding="utf-8"))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"{text} is not a positive integer")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"{text} is negative")
    return v


def _limits(args) -> Limits:
    base = Limits.from_env()
    return replace(base, q_limit=args.q_limit or base.q_limit, k_limit=args.k_limit or base.k_limit)


def _emit(text: str, out: str | None = None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=1) + "\n"


def _progress(done: int, total: int, q: int) -> None:
    print(f"[{done}/{total}] q={q}", file=sys.stderr, flush=True)


def _point(args, lim: Limits):
    """Field and parameters for --q with one of --e / --k; odd q only."""
    q = args.q
    ctx = field_for_order(q, seed=args.seed, limits=lim)
    if ctx.p == 2:
        raise ParameterError(f"q = {q} is even; only odd prime powers are supported")
    params = make_params(ctx, k=args.k, e=args.e)
    if params.k > lim.k_limit:
        raise LimitError(f"k = {params.k} exceeds the k-limit {lim.k_limit}")
    return ctx, params


# table

def cmd_table(args) -> int:
    lim = _limits(args)
    _, params = _point(args, lim)
    table = cyclotomic_table(params, args.method, lim)
    if args.format == "csv":
        text = table.to_csv() + "\n"
    elif args.format == "json":
        text = _dump({"schema_version": TABLE_SCHEMA, **table.to_record()})
    else:
        width = max(2, len(str(table.max_entry())))
        head = " " * 4 + " ".join(f"{b:>{width}}" for b in range(table.e))
        rows = [f"{a:>3} " + " ".join(f"{v:>{width}}" for v in row)
                for a, row in enumerate(table.entries)]
        text = "\n".join([f"q={table.q} e={table.e} k={table.k}", head, *rows]) + "\n"
    _emit(text, args.out)
    return EXIT_OK


# verify

def _methods(text: str) -> list[Method]:
    if text == "all":
        return list(Method)
    out = []
    for name in text.split(","):
        try:
            out.append(Method(name.strip()))
        except ValueError:
            raise argparse.ArgumentTypeError(f"unknown method {name!r}") from None
    return out


def _check(name: str, ok: bool, lhs, rhs) -> dict:
    return {"name": name, "pass": bool(ok), "lhs": str(lhs), "rhs": str(rhs)}


def cmd_verify(args) -> int:
    lim = _limits(args)
    ctx, params = _point(args, lim)
    methods = args.methods
    e = params.e
    cells = [(a, b) for a in range(e) for b in range(e)]
    checks = []
    table = cyclotomic_table(params, methods[0], lim)
    if len(methods) > 1:
        values = {methods[0]: [table[a, b] for a, b in cells]}
        for m in methods[1:]:
            if m is Method.ENUMERATION:
                values[m] = [cyclotomic_table(params, m, lim)[a, b] for a, b in cells]
            elif m is Method.RANK:
                values[m] = cyclotomic_numbers_rank(params, cells, lim)
            else:
                values[m] = [cyclotomic_number_gcd(params, a, b) for a, b in cells]
        ref = values[methods[0]]
        for m in methods[1:]:
            bad = [(a, b, x, y) for (a, b), x, y in zip(cells, ref, values[m]) if x != y]
            lhs = f"{len(bad)} mismatching cells"
            if bad:
                a, b, x, y = bad[0]
                lhs += f"; first ({a},{b}): {methods[0].value}={x} {m.value}={y}"
            checks.append(_check(f"agreement:{methods[0].value}={m.value}", not bad, lhs, "0 mismatching cells"))
    sv = sum_identity_values(table)
    checks.append(_check("sum", sv["sum"] == sv["sum_expected"], sv["sum"], sv["sum_expected"]))
    checks.append(_check("sum-of-squares", sv["sum_sq"] == sv["sum_sq_expected"],
                         sv["sum_sq"], sv["sum_sq_expected"]))
    lhs, rhs = variance_values(table)
    checks.append(_check("variance", lhs == rhs, lhs, rhs))
    rows, expected_rows = table.row_sums(), row_sums_expected(params)
    checks.append(_check("row-sums", rows == expected_rows, rows, expected_rows))
    checks.append(_check("deviation-bound", deviation_bound_holds(table),
                         f"max entry {table.max_entry()}", "r1 bound"))
    if not args.no_bijection:
        rep = wilson_bijection_check(params, lim)
        checks.append(_check("bijection", rep.ok, f"|X|={rep.size_x} |Y|={rep.size_y}",
                             f"{rep.expected}"))
    failed = [c["name"] for c in checks if not c["pass"]]
    report = {
        "schema_version": VERIFY_SCHEMA,
        "q": params.q, "p": ctx.p, "n": ctx.n, "e": e, "k": params.k,
        "field": str(ctx),
        "alpha": list(params.alpha.coeffs),
        "methods": [m.value for m in methods],
        "checks": checks,
        "ok": not failed,
        "first_failure": failed[0] if failed else None,
    }
    if args.format == "text":
        lines = [f"{c['name']:<32} {'pass' if c['pass'] else 'FAIL'}  {c['lhs']} | {c['rhs']}"
                 for c in checks]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(_dump(report), args.out)
    if failed:
        print(f"verify: check {failed[0]!r} failed", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


# scan

def cmd_scan(args) -> int:
    lim = _limits(args)
    opts = SweepOptions(q_max=args.q_max, q_min=args.q_min, parity=args.parity, k_max=args.k_max,
                        checks=tuple(args.checks), seed=args.seed,
                        q_limit=lim.q_limit, k_limit=lim.k_limit)
    report = sweep(opts, parallelism=args.jobs, progress=None if args.quiet else _progress)
    text = report.to_text() if args.format == "text" else report.to_json(timestamp=not args.no_timestamp)
    _emit(text, args.out)
    s = report.summary()
    summary = (f"points={s['points']} tight={s['tight_instances']} "
               f"bad_primes={s['bad_primes']} violations={s['violations']}")
    # with --out the summary is the result; otherwise keep stdout a clean document
    print(summary, file=sys.stdout if args.out else sys.stderr)
    if report.violations:
        for v in report.violations:
            print("violation: " + json.dumps(v), file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


# det

def cmd_det(args) -> int:
    lim = _limits(args)
    if args.k is not None:
        if args.r is not None or args.s is not None or args.m is not None:
            raise ParameterError("give either --k/--variant or --r/--s/--m, not both")
        if args.k < 1:
            raise ParameterError("k must be positive")
        spec = variant_spec(args.k, args.variant)
    else:
        if args.m is None:
            raise ParameterError("--m (or --k) is required")
        spec = BinomMatrixSpec(args.r or 0, args.s or 0, args.m)
    formula = adc_det(spec, lim)
    oracle = bareiss_det(build_binom_matrix(spec, lim))
    doc = {"schema_version": DET_SCHEMA, "r": spec.r, "s": spec.s, "m": spec.m,
           "k": args.k, "variant": args.variant.value if args.k is not None else None,
           "formula": str(formula), "oracle": str(oracle), "match": formula == oracle}
    if args.p is not None:
        if not is_prime(args.p):
            raise ParameterError(f"p = {args.p} is not prime")
        doc["p"] = args.p
        doc["valuation"] = det_valuation(spec, args.p)
        if args.k is not None:
            doc["nonzero_mod_p"] = det_nonzero_mod_p(args.k, args.variant, args.p)
    if args.format == "json":
        _emit(_dump(doc), args.out)
    else:
        lines = [f"formula {formula}", f"oracle {oracle}", "match" if doc["match"] else "MISMATCH"]
        if "valuation" in doc:
            lines.append(f"valuation_p {doc['valuation']}")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if doc["match"] else EXIT_CHECK


# badprimes

def cmd_badprimes(args) -> int:
    lim = _limits(args)
    k = args.k
    obs = check_asymptotic_00(k, args.p_max, args.p_min, lim)
    deviations = [{"p": o.p, "value": o.value, "expected": o.expected} for o in obs if o.deviates]
    code = EXIT_OK
    cert_rec = None
    cert_error = None
    try:
        cert = bad_prime_certificate(k, lim)
        cert_rec = cert.to_record()
        if not cert.rank_deficient:
            for d in deviations:
                d["divides_certificate"] = cert.divides(d["p"])
                if not d["divides_certificate"]:
                    code = EXIT_CHECK
    except LimitError as exc:
        cert_error = str(exc)
        code = EXIT_USAGE
    doc = {"schema_version": BADPRIMES_SCHEMA, "k": k, "p_min": args.p_min, "p_max": args.p_max,
           "expected": asymptotic_value(k), "primes_checked": len(obs),
           "deviations": deviations, "certificate": cert_rec}
    if cert_error:
        doc["certificate_error"] = cert_error
    if args.format == "json":
        _emit(_dump(doc), args.out)
    else:
        lines = [f"k={k} primes p<={args.p_max} with k | p-1: {len(obs)}; "
                 f"large-p value of (0,0) is {doc['expected']}"]
        if deviations:
            for d in deviations:
                mark = ""
                if "divides_certificate" in d:
                    mark = "  divides certificate" if d["divides_certificate"] else "  NOT A DIVISOR"
                lines.append(f"deviation p={d['p']} (0,0)={d['value']}{mark}")
        else:
            lines.append("no deviations")
        if cert_rec is None:
            lines.append(f"certificate unavailable: {cert_error}")
        elif cert_rec["certificate"] == "rank-deficient":
            lines.append("certificate rank-deficient (6 | k)")
        else:
            fac = " * ".join(f"{p}^{m}" if m > 1 else str(p) for p, m in cert_rec["factors"].items())
            if cert_rec["cofactor"] != "1":
                fac = (fac + " * " if fac else "") + f"[{cert_rec['cofactor']}]"
            lines.append(f"certificate {cert_rec['certificate']}" + (f" = {fac}" if fac else ""))
        _emit("\n".join(lines) + "\n", args.out)
    if cert_error:
        print(f"badprimes: {cert_error}", file=sys.stderr)
    return code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_nonneg, default=0,
                        help="field-construction seed (default 0)")
    common.add_argument("--q-limit", type=_positive, default=None,
                        help="override the q limit (env CYCLOTOME_Q_LIMIT, default 2^24)")
    common.add_argument("--k-limit", type=_positive, default=None,
                        help="override the k limit (env CYCLOTOME_K_LIMIT, default 2000)")
    common.add_argument("--out", default=None, help="write the result to this file instead of stdout")

    parser = _Parser(prog="cyclotome", description="Cyclotomic numbers over finite fields.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def point_args(p):
        p.add_argument("--q", type=_positive, required=True, help="odd prime power")
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--e", type=_positive, help="order e (number of cosets)")
        g.add_argument("--k", type=_positive, help="index k = (q-1)/e")

    p = sub.add_parser("table", parents=[common], help="print the e x e table of cyclotomic numbers")
    point_args(p)
    p.add_argument("--method", type=Method, choices=list(Method), default=Method.ENUMERATION,
                   metavar="{" + ",".join(m.value for m in Method) + "}",
                   help="computation method (default enumeration)")
    p.add_argument("--format", choices=["csv", "json", "text"], default="csv",
                   help="csv: e rows of e comma-separated integers, row a = (a,0..e-1) (default)")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="run every identity check at one point")
    point_args(p)
    p.add_argument("--methods", type=_methods, default=list(Method),
                   help="all, or a comma list of enumeration,matrix-rank,poly-gcd (default all)")
    p.add_argument("--no-bijection", action="store_true", help="skip the bijection check")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", parents=[common], help="sweep odd prime powers and report")
    p.add_argument("--q-max", type=_positive, required=True)
    p.add_argument("--q-min", type=_positive, default=3)
    p.add_argument("-j", "--jobs", type=_positive, default=1, help="worker processes (default 1)")
    p.add_argument("--parity", choices=["even", "odd"], default=None, help="keep only k of this parity")
    p.add_argument("--k-max", type=_positive, default=None)
    p.add_argument("--checks", type=lambda s: s.split(","), default=list(ALL_CHECKS),
                   help="comma list from " + ",".join(ALL_CHECKS) + " (default all)")
    p.add_argument("--no-timestamp", action="store_true", help="omit the meta block from JSON")
    p.add_argument("--quiet", action="store_true", help="no progress on stderr")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("det", parents=[common], help="binomial determinant: product formula vs Bareiss")
    p.add_argument("--r", type=_nonneg, default=None)
    p.add_argument("--s", type=_nonneg, default=None)
    p.add_argument("--m", type=_nonneg, default=None)
    p.add_argument("--k", type=int, default=None, help="use the matrix of a variant for this k")
    p.add_argument("--variant", type=Variant, choices=list(Variant), default=Variant.EVEN,
                   metavar="{" + ",".join(v.value for v in Variant) + "}")
    p.add_argument("--p", type=_positive, default=None, help="also report the p-adic valuation")
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("badprimes", parents=[common], help="(0,0) deviations and the certificate")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--p-max", type=_positive, required=True)
    p.add_argument("--p-min", type=_positive, default=3)
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.set_defaults(func=cmd_badprimes)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "scan":
        bad = [c for c in args.checks if c not in ALL_CHECKS]
        if bad:
            parser.error(f"unknown check {bad[0]!r}")
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"cyclotome: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CheckFailed as exc:
        print(f"cyclotome: check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except CyclotomeError as exc:
        print(f"cyclotome: error: {exc}", file=sys.stderr)
        return EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
