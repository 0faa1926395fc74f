"""Parameter sweeps over odd prime powers q and divisors k of q - 1.

Each q is one independent work unit; units run in a process pool and are
merged in q order, so the report body does not depend on scheduling.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .bounds import (
    BoundPredicate,
    asymptotic_predicate,
    asymptotic_value,
    check_prop51,
    check_prop52,
    check_theorem_bounds,
    spot_check_cells,
)
from .config import CheckFailed, Limits, LimitError, get_limits
from .cyclotomy import (
    Method,
    cyclotomic_table,
    deviation_bound_holds,
    enumeration_table_array,
    make_params,
    row_sums_expected,
    sum_identity_values,
    table_from_rows,
    variance_values,
)
from .field import construct_field
from .ntheory import divisors, odd_prime_powers

SCHEMA_VERSION = "cyclotome.scan.v1"
ALL_CHECKS = ("theorem", "identities", "cross", "asymptotic", "prop5")


@dataclass(frozen=True)
class SweepOptions:
    q_max: int
    q_min: int = 3
    parity: str | None = None       # "even" / "odd": keep only k of that parity
    k_max: int | None = None
    checks: tuple[str, ...] = ALL_CHECKS
    cross_check_k: int = 64         # rank/gcd spot checks only for k up to this
    sample: int = 10                # sampled off-diagonal cells per table
    seed: int = 0                   # field-construction seed
    q_limit: int | None = None
    k_limit: int | None = None

    def limits(self) -> Limits:
        base = get_limits()
        return Limits(q_limit=self.q_limit or base.q_limit,
                      k_limit=self.k_limit or base.k_limit,
                      int_matrix_limit=base.int_matrix_limit)

    def range_record(self) -> dict:
        return {"q_min": self.q_min, "q_max": self.q_max, "parity": self.parity,
                "k_max": self.k_max, "checks": list(self.checks),
                "cross_check_k": self.cross_check_k, "sample": self.sample, "seed": self.seed}


def _record(q, p, n, e, k, pred: BoundPredicate, max_entry: int) -> dict:
    return {
        "q": q, "p": p, "n": n, "e": e, "k": k,
        "predicate": pred.name,
        "hypothesis": pred.hypothesis,
        "conclusion": pred.conclusion,
        "witness": list(pred.witness) if pred.witness is not None else None,
        "max_entry": max_entry,
        "bound": pred.bound,
        "tight": pred.tight,
        "note": pred.note,
    }


def sample_cells(q: int, k: int, e: int, count: int) -> list[tuple[int, int]]:
    """Deterministic sample of off-diagonal cells plus every diagonal cell."""
    rng = random.Random(f"cells:{q}:{k}")
    off = e * e - e
    picks = rng.sample(range(off), min(count, off)) if off else []
    cells = {(a, a) for a in range(e)}
    for idx in picks:
        a, r = divmod(idx, e - 1)
        cells.add((a, r if r < a else r + 1))
    return sorted(cells)


def scan_q(q: int, p: int, n: int, opts: SweepOptions) -> dict:
    """All checks for every admissible k | q - 1 at one field order."""
    lim = opts.limits()
    ctx = construct_field(p, n, opts.seed, lim)
    out = {"points": [], "records": [], "violations": [], "bad_primes": []}
    for k in divisors(q - 1):
        if opts.parity == "even" and k % 2:
            continue
        if opts.parity == "odd" and k % 2 == 0:
            continue
        if opts.k_max is not None and k > opts.k_max:
            continue
        _scan_point(ctx, k, opts, lim, out)
    return out


def _scan_point(ctx, k: int, opts: SweepOptions, lim: Limits, out: dict) -> None:
    q, p, n = ctx.q, ctx.p, ctx.n
    params = make_params(ctx, k=k)
    e = params.e
    table = table_from_rows(params, enumeration_table_array(params), Method.ENUMERATION)
    max_entry = table.max_entry()
    point = {"q": q, "p": p, "n": n, "e": e, "k": k, "max_entry": max_entry,
             "diag_max": max(table.diagonal()), "zero_zero": table[0, 0]}

    def violation(kind: str, detail) -> None:
        out["violations"].append({"q": q, "k": k, "kind": kind, "detail": detail})

    if "identities" in opts.checks:
        s = sum_identity_values(table)
        lhs, rhs = variance_values(table)
        rows_ok = table.row_sums() == row_sums_expected(params)
        ident = {
            "sum": s["sum"] == s["sum_expected"],
            "sum_sq": s["sum_sq"] == s["sum_sq_expected"],
            "variance": lhs == rhs,
            "deviation_bound": deviation_bound_holds(table),
            "row_sums": rows_ok,
        }
        point["identities"] = ident
        for name, ok in ident.items():
            if not ok:
                violation(f"identity:{name}", None)

    preds: list[BoundPredicate] = []
    if "theorem" in opts.checks:
        preds += check_theorem_bounds(params, table, spot_check=False, limits=lim)
    if "cross" in opts.checks:
        if k <= min(opts.cross_check_k, lim.k_limit):
            cells = sample_cells(q, k, e, opts.sample)
            try:
                point["cross_checked_cells"] = spot_check_cells(params, table, cells, lim)
            except CheckFailed as exc:
                point["cross_checked_cells"] = len(cells)
                violation("tri-method", str(exc))
        else:
            point["cross_checked_cells"] = 0
    if "asymptotic" in opts.checks:
        pred = asymptotic_predicate(p, k, table[0, 0], lim)
        preds.append(pred)
        if table[0, 0] != asymptotic_value(k):
            out["bad_primes"].append({"k": k, "p": p, "q": q, "value": table[0, 0],
                                      "expected": asymptotic_value(k)})
    if "prop5" in opts.checks:
        preds.append(check_prop51(params, table))
        preds.extend(check_prop52(params, table))
    for pred in preds:
        rec = _record(q, p, n, e, k, pred, max_entry)
        out["records"].append(rec)
        if pred.violation:
            violation(pred.name, rec["witness"])
    out["points"].append(point)


@dataclass
class ScanReport:
    range: dict
    points: list[dict] = field(default_factory=list)
    records: list[dict] = field(default_factory=list)
    violations: list[dict] = field(default_factory=list)
    bad_primes: list[dict] = field(default_factory=list)
    elapsed: float = 0.0
    parallelism: int = 1

    @property
    def tight(self) -> list[dict]:
        return [{"q": r["q"], "k": r["k"], "predicate": r["predicate"], "witness": r["witness"]}
                for r in self.records if r["tight"]]

    def bad_primes_by_k(self) -> dict[str, list[dict]]:
        out: dict[str, list[dict]] = {}
        for bp in self.bad_primes:
            out.setdefault(str(bp["k"]), []).append(
                {"p": bp["p"], "q": bp["q"], "value": bp["value"], "expected": bp["expected"]})
        return dict(sorted(out.items(), key=lambda kv: int(kv[0])))

    def summary(self) -> dict:
        hyp: dict[str, int] = {}
        for r in self.records:
            if r["hypothesis"]:
                hyp[r["predicate"]] = hyp.get(r["predicate"], 0) + 1
        return {
            "points": len(self.points),
            "records": len(self.records),
            "violations": len(self.violations),
            "tight_instances": len(self.tight),
            "bad_primes": len(self.bad_primes),
            "hypothesis_true": dict(sorted(hyp.items())),
        }

    def body(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "range": self.range,
            "summary": self.summary(),
            "points": self.points,
            "records": self.records,
            "tight": self.tight,
            "bad_primes": self.bad_primes_by_k(),
            "violations": self.violations,
        }

    def to_json(self, timestamp: bool = True) -> str:
        doc = self.body()
        if timestamp:
            doc["meta"] = {
                "generated_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
                "elapsed_s": round(self.elapsed, 3),
                "parallelism": self.parallelism,
            }
        return json.dumps(doc, indent=1, sort_keys=False) + "\n"

    def to_text(self) -> str:
        by_point: dict[tuple[int, int], dict[str, str]] = {}
        for r in self.records:
            mark = "-" if not r["hypothesis"] else ("ok" if r["conclusion"] else "FAIL")
            if r["tight"]:
                mark = "tight"
            by_point.setdefault((r["q"], r["k"]), {})[r["predicate"]] = mark
        names = sorted({r["predicate"] for r in self.records},
                       key=lambda s: ("thm-i", "thm-ii", "thm-iii", "thm-iv", "thm-v",
                                      "prop-5.1", "prop-5.2-ab", "prop-5.2-aa").index(s))
        head = f"{'q':>6} {'k':>6} {'e':>6} {'max':>5} " + " ".join(f"{n:>11}" for n in names)
        lines = [head]
        for pt in self.points:
            marks = by_point.get((pt["q"], pt["k"]), {})
            lines.append(f"{pt['q']:>6} {pt['k']:>6} {pt['e']:>6} {pt['max_entry']:>5} "
                         + " ".join(f"{marks.get(n, ''):>11}" for n in names))
        s = self.summary()
        lines.append(f"points={s['points']} violations={s['violations']} "
                     f"tight={s['tight_instances']} bad_primes={s['bad_primes']}")
        return "\n".join(lines) + "\n"


def _unit(args):
    q, p, n, opts = args
    return scan_q(q, p, n, opts)


def sweep(opts: SweepOptions, parallelism: int = 1, progress=None) -> ScanReport:
    """Run every check over odd prime powers q_min <= q <= q_max."""
    lim = opts.limits()
    if opts.q_max > lim.q_limit:
        raise LimitError(f"q-max {opts.q_max} exceeds the q-limit {lim.q_limit}")
    units = [(q, p, n, opts) for q, p, n in odd_prime_powers(opts.q_max, opts.q_min)]
    start = time.perf_counter()
    report = ScanReport(range=opts.range_record(), parallelism=parallelism)
    if parallelism > 1 and len(units) > 1:
        # largest q first keeps the pool busy; map() still yields in input order
        order = sorted(range(len(units)), key=lambda i: -units[i][0])
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            futures = {i: pool.submit(_unit, units[i]) for i in order}
            results = []
            for done, i in enumerate(range(len(units)), 1):
                results.append(futures[i].result())
                if progress:
                    progress(done, len(units), units[i][0])
    else:
        results = []
        for done, u in enumerate(units, 1):
            results.append(_unit(u))
            if progress:
                progress(done, len(units), u[0])
    for res in results:
        report.points.extend(res["points"])
        report.records.extend(res["records"])
        report.violations.extend(res["violations"])
        report.bad_primes.extend(res["bad_primes"])
    report.elapsed = time.perf_counter() - start
    return report
