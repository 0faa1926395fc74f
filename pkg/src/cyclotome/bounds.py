"""Bound predicates, the (0,0) structure over Z, and ideal witnesses.

A ``BoundPredicate`` pairs a hypothesis with a conclusion evaluated on an
actual table; it is a violation iff the hypothesis holds and the conclusion
does not.  Hypotheses are compared in exact integers (2p > 3k - 2 rather
than p > 3k/2 - 1, and so on).

The ideal J = (phi_0, psi) with phi_0 = phi - psi has minimal nonzero degree
(a, b).  Each explicit member of J built here is an ``IdealWitness`` that
carries cofactors (u, v) with witness = u*phi_0 + v*psi, re-checked in full.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import poly as _poly
from .binomdet import bareiss_det, bareiss_rank, binom_exact
from .config import CheckFailed, Limits, LimitError, ParameterError, get_limits
from .cyclotomy import (
    CycloParams,
    CycloTable,
    Method,
    binomials_mod,
    cyclotomic_number_enum,
    cyclotomic_number_gcd,
    cyclotomic_numbers_rank,
    cyclotomic_table,
    make_params,
    phi_psi,
)
from .field import construct_field
from .ntheory import partial_factorize, primes_up_to

PREDICATES = ("thm-i", "thm-ii", "thm-iii", "thm-iv", "thm-v",
              "prop-5.1", "prop-5.2-ab", "prop-5.2-aa")


def ceil_half(k: int) -> int:
    return (k + 1) // 2


@dataclass(frozen=True)
class BoundPredicate:
    name: str
    hypothesis: bool
    conclusion: bool
    witness: tuple[int, int, int] | None = None
    bound: int | None = None
    note: str = ""

    @property
    def violation(self) -> bool:
        return self.hypothesis and not self.conclusion

    @property
    def tight(self) -> bool:
        """Hypothesis holds and the witnessed value equals the bound."""
        return (self.hypothesis and self.conclusion and self.witness is not None
                and self.bound is not None and self.witness[2] == self.bound)


# bound items (i)-(iii)

def hyp_thm_i(p: int, k: int) -> bool:
    return p % 2 == 1 and 2 * p > 3 * k - 2


def hyp_thm_ii(p: int, k: int) -> bool:
    return p % 2 == 1 and k % 2 == 1 and 2 * p > 3 * k


def hyp_thm_iii(p: int, k: int) -> bool:
    return p % 2 == 1 and 2 * p > 3 * k


def _diag_argmax(table: CycloTable) -> tuple[int, int, int]:
    diag = table.diagonal()
    a = max(range(len(diag)), key=lambda i: (diag[i], -i))
    return a, a, diag[a]


def check_theorem_bounds(params: CycloParams, table: CycloTable | None = None,
                         spot_check: bool = True,
                         limits: Limits | None = None) -> list[BoundPredicate]:
    """Records for items (i)-(iii) on the enumeration table of ``params``.

    With ``spot_check`` the witnessed cells are recomputed by the rank and
    gcd methods (when k is within the matrix limit); a disagreement raises
    CheckFailed.
    """
    p, k = params.p, params.k
    if table is None:
        table = cyclotomic_table(params, Method.ENUMERATION, limits)
    half = ceil_half(k)
    if p == 2:
        note = "even characteristic out of theorem scope"
        return [BoundPredicate(name, False, True, None, None, note)
                for name in ("thm-i", "thm-ii", "thm-iii")]
    w1 = table.argmax()
    w2 = _diag_argmax(table)
    w3 = (0, 0, table[0, 0])
    out = [
        BoundPredicate("thm-i", hyp_thm_i(p, k), w1[2] <= half, w1, half),
        BoundPredicate("thm-ii", hyp_thm_ii(p, k), w2[2] <= half - 1, w2, half - 1,
                       "" if k % 2 else "even k: diagonal maximum recorded as data"),
        BoundPredicate("thm-iii", hyp_thm_iii(p, k), w3[2] <= half - 1, w3, half - 1),
    ]
    if spot_check:
        spot_check_cells(params, table, {(w[0], w[1]) for w in (w1, w2, w3)}, limits)
    return out


def spot_check_cells(params: CycloParams, table: CycloTable, cells,
                     limits: Limits | None = None) -> int:
    """Recompute cells by rank and gcd; returns how many cells were checked."""
    lim = get_limits(limits)
    cells = sorted(cells)
    if not cells or params.k > lim.k_limit:
        return 0
    ranks = cyclotomic_numbers_rank(params, cells, lim)
    for (a, b), r in zip(cells, ranks):
        v = table[a, b]
        g = cyclotomic_number_gcd(params, a, b)
        if not v == r == g:
            raise CheckFailed(f"method disagreement at q={params.q}, k={params.k}, "
                              f"(a,b)=({a},{b}): enum={v} rank={r} gcd={g}")
    return len(cells)


# (0,0) over the integers

def zero_zero_matrix(k: int) -> list[list[int]]:
    """C^(0,0) read over Z: 1 on the diagonal, binom(k, |i-j|) elsewhere."""
    return [[1 if i == j else binom_exact(k, abs(j - i)) for j in range(k)] for i in range(k)]


def _check_int_size(k: int, limits: Limits | None) -> None:
    lim = get_limits(limits)
    if k > lim.int_matrix_limit:
        raise LimitError(f"k = {k} exceeds the integer-matrix limit {lim.int_matrix_limit}")


def rational_rank_C00(k: int, limits: Limits | None = None) -> int:
    _check_int_size(k, limits)
    return bareiss_rank(zero_zero_matrix(k))


@dataclass(frozen=True)
class Certificate:
    """|det C^(0,0)| for 6 not dividing k; every bad characteristic divides it."""

    k: int
    determinant: int | None  # None: rank-deficient (6 | k)
    factors: dict[int, int] = field(default_factory=dict)
    cofactor: int = 1        # unfactored part, 1 when fully factored

    @property
    def rank_deficient(self) -> bool:
        return self.determinant is None

    @property
    def fully_factored(self) -> bool:
        return self.cofactor == 1

    def divides(self, p: int) -> bool:
        if self.determinant is None:
            raise ValueError("no certificate for rank-deficient C^(0,0)")
        return self.determinant % p == 0

    def to_record(self) -> dict:
        if self.determinant is None:
            return {"k": self.k, "certificate": "rank-deficient"}
        return {"k": self.k, "certificate": str(self.determinant),
                "factors": {str(p): m for p, m in self.factors.items()},
                "cofactor": str(self.cofactor)}


@lru_cache(maxsize=128)
def _abs_det_c00(k: int) -> int:
    return abs(bareiss_det(zero_zero_matrix(k)))


def bad_prime_certificate(k: int, limits: Limits | None = None,
                          factor_effort: int = 10**6) -> Certificate:
    _check_int_size(k, limits)
    if k % 6 == 0:
        return Certificate(k, None)
    det = _abs_det_c00(k)
    if det == 0:
        raise CheckFailed(f"det C^(0,0) vanishes for k = {k} although 6 does not divide k")
    factors, rest = partial_factorize(det, factor_effort)
    return Certificate(k, det, factors, rest)


def asymptotic_value(k: int) -> int:
    return 2 if k % 6 == 0 else 0


@dataclass(frozen=True)
class ZeroZeroObservation:
    p: int
    k: int
    value: int
    record: BoundPredicate

    @property
    def expected(self) -> int:
        return asymptotic_value(self.k)

    @property
    def deviates(self) -> bool:
        return self.value != self.expected


def zero_zero_value(p: int, k: int) -> int:
    """(0,0) over GF(p); it depends only on the subgroup of order k, not on alpha."""
    params = make_params(construct_field(p, 1), k=k)
    return cyclotomic_number_enum(params, 0, 0)


def asymptotic_predicate(p: int, k: int, value: int,
                         limits: Limits | None = None) -> BoundPredicate:
    """thm-iv / thm-v record for one characteristic.

    "Sufficiently large p" is made effective only for 6 not dividing k, via
    p > |det C^(0,0)|; for 6 | k the hypothesis is never asserted.
    """
    lim = get_limits(limits)
    expected = asymptotic_value(k)
    witness = (0, 0, value)
    if k % 6 == 0:
        return BoundPredicate("thm-iv", False, value == expected, witness, expected,
                              "non-effective hypothesis; deviations reported as bad primes")
    if p == 2:
        return BoundPredicate("thm-v", False, value == expected, witness, expected,
                              "even characteristic out of theorem scope")
    if k <= lim.int_matrix_limit:
        hyp = p > _abs_det_c00(k)
        note = "hypothesis: p > |det C^(0,0)|"
    else:
        hyp, note = False, "certificate beyond integer-matrix limit"
    return BoundPredicate("thm-v", hyp, value == expected, witness, expected, note)


def check_asymptotic_00(k: int, p_max: int, p_min: int = 3,
                        limits: Limits | None = None) -> list[ZeroZeroObservation]:
    """(0,0) for every prime p_min <= p <= p_max with k | p - 1."""
    out = []
    for p in primes_up_to(p_max):
        if p < p_min or (p - 1) % k:
            continue
        value = zero_zero_value(p, k)
        out.append(ZeroZeroObservation(p, k, value, asymptotic_predicate(p, k, value, limits)))
    return out


# ideal witnesses

CONSTRUCTIONS = ("phi0", "phi-i", "f-of-prop52", "prop51-witness")


@dataclass(frozen=True, eq=False)
class IdealWitness:
    params: CycloParams
    a: int
    b: int
    construction: str
    coeffs: tuple[int, ...]
    u: tuple[int, ...]
    v: tuple[int, ...]
    degree_bound: int

    @property
    def degree(self):
        return _poly.degree(self.coeffs)

    def poly(self) -> _poly.Poly:
        return _poly.Poly.from_codes(self.params.ctx, self.coeffs)

    def verify(self) -> bool:
        """u*phi_0 + v*psi reproduces the witness exactly."""
        ctx = self.params.ctx
        phi0, psi = phi0_psi(self.params, self.a, self.b)
        lhs = _poly.padd(ctx, _poly.pmul(ctx, list(self.u), phi0), _poly.pmul(ctx, list(self.v), psi))
        return tuple(lhs) == self.coeffs


def phi0_psi(params: CycloParams, a: int, b: int) -> tuple[list[int], list[int]]:
    """phi_0 = phi - psi = gamma + sum_{1<=i<k} binom(k,i) X^i, and psi = X^k - beta."""
    ctx = params.ctx
    phi, psi = phi_psi(params, a, b)
    return _poly.psub(ctx, phi, psi), psi


def _gamma_beta(params: CycloParams, a: int, b: int) -> tuple[int, int]:
    ctx = params.ctx
    beta = params.beta(a)
    gamma = ctx.sub(ctx.add(1, beta), params.beta(b))
    return gamma, beta


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise CheckFailed(msg)


def build_phi0(params: CycloParams, a: int, b: int) -> IdealWitness:
    phi0, _ = phi0_psi(params, a, b)
    return IdealWitness(params, a, b, "phi0", tuple(phi0), (1,), (), params.k - 1)


def _phi_i_parts(ctx, phi0, psi, binom, i):
    """(phi_i, v) with phi_i = X^i phi_0 + v psi and v = -sum_{j<i} binom(k, i-j) X^j."""
    v = _poly.pneg(ctx, _poly.trim([binom[i - j] for j in range(i)]))
    return _poly.padd(ctx, _poly.pshift(phi0, i), _poly.pmul(ctx, v, psi)), v


def _phi_i_closed_form(ctx, k, binom, gamma, beta, i):
    closed = [0] * k
    closed[i] = gamma
    for j in range(i):
        closed[j] = ctx.mul(beta, binom[i - j])
    for j in range(i + 1, k):
        closed[j] = binom[j - i]
    return _poly.trim(closed)


def build_phi_i(params: CycloParams, a: int, b: int, i: int) -> IdealWitness:
    """phi_i = X^i phi_0 - psi * sum_{j<i} binom(k, i-j) X^j, checked against its closed form."""
    k, ctx = params.k, params.ctx
    if not 1 <= i <= k - 1:
        raise ParameterError(f"i = {i} outside 1..k-1 = 1..{k - 1}")
    binom = binomials_mod(k, ctx.p)
    phi0, psi = phi0_psi(params, a, b)
    w, v = _phi_i_parts(ctx, phi0, psi, binom, i)
    gamma, beta = _gamma_beta(params, a, b)
    _require(w == _phi_i_closed_form(ctx, k, binom, gamma, beta, i),
             f"phi_{i} differs from its closed form")
    _require(_poly.degree(w) <= k - 1, f"deg phi_{i} > k - 1")
    return IdealWitness(params, a, b, "phi-i", tuple(w), tuple(_poly.pshift([1], i)), tuple(v), k - 1)


def prop51_hypothesis(p: int, k: int) -> bool:
    return 4 * p >= 3 * k and p < k


def build_prop51_witness(params: CycloParams, a: int, b: int) -> IdealWitness:
    """X^(k-p) phi_0 - sum_{p<=i<k} binom(k,i) psi X^(i-p), of degree exactly 2k - 2p."""
    p, k, ctx = params.p, params.k, params.ctx
    if not prop51_hypothesis(p, k):
        raise ParameterError(f"hypothesis 3k/4 <= p < k fails for p = {p}, k = {k}")
    binom = binomials_mod(k, p)
    for i in range(k - p + 1, p):
        _require(binom[i] == 0, f"binom({k},{i}) is not divisible by {p}")
    _require(binom[k - p] != 0, f"binom({k},{k - p}) vanishes mod {p}")
    phi0, psi = phi0_psi(params, a, b)
    u = _poly.pshift([1], k - p)
    v = _poly.pneg(ctx, _poly.trim([binom[i] for i in range(p, k)]))  # X^(i-p) coefficients
    w = _poly.padd(ctx, _poly.pmul(ctx, u, phi0), _poly.pmul(ctx, v, psi))
    _require(_poly.degree(w) == 2 * k - 2 * p, f"X^(k-p) witness has degree {_poly.degree(w)}")
    return IdealWitness(params, a, b, "prop51-witness", tuple(w), tuple(u), tuple(v), 2 * k - 2 * p)


def prop52_exponents(p: int, k: int, t_max: int = 3) -> list[int]:
    """All t in 1..t_max with k + 1 < p^t < 3k/2."""
    return [t for t in range(1, t_max + 1) if k + 1 < p**t and 2 * p**t < 3 * k]


def vandermonde_ok(pt: int, k: int, m: int, l: int) -> bool:
    """sum_{0<=i<=m} binom(pt-k, m-i) binom(k, l-i) == binom(pt, m+k-l) over Z.

    The terms with i < 0 vanish only when pt - k <= m, which the hypothesis
    k + 1 < p^t < 3k/2 guarantees; outside it the truncated sum can differ.
    """
    lhs = sum(binom_exact(pt - k, m - i) * binom_exact(k, l - i) for i in range(m + 1))
    return lhs == binom_exact(pt, m + k - l)


@lru_cache(maxsize=1024)
def _prop52_plan(p: int, k: int, t: int) -> tuple[int, tuple[int, ...]]:
    """m and the weights binom(p^t - k, m - i) mod p, after the integer identity checks.

    For m < l < k the coefficient of X^l in f is a Vandermonde sum equal to
    binom(p^t, m + k - l), which p divides; both facts are checked over Z.
    """
    pt = p**t
    m = k // 2
    for l in range(m + 1, k):
        _require(vandermonde_ok(pt, k, m, l), f"Vandermonde sum fails at l = {l}")
        _require(binom_exact(pt, m + k - l) % p == 0, f"p does not divide binom({pt}, {m + k - l})")
    _require(pt - k <= m, "p^t - k exceeds m")
    return m, tuple(binom_exact(pt - k, m - i) % p for i in range(m + 1))


def build_f_prop52(params: CycloParams, a: int, b: int, t: int) -> IdealWitness:
    """f = sum_{i<=m} binom(p^t - k, m - i) phi_i with m = k // 2 (phi_0 for i = 0)."""
    p, k, ctx = params.p, params.k, params.ctx
    pt = p**t
    if not (k + 1 < pt and 2 * pt < 3 * k):
        raise ParameterError(f"hypothesis k+1 < p^t < 3k/2 fails for p^t = {pt}, k = {k}")
    m, weights = _prop52_plan(p, k, t)
    binom = binomials_mod(k, p)
    phi0, psi = phi0_psi(params, a, b)
    gamma, beta = _gamma_beta(params, a, b)
    f: list[int] = []
    u: list[int] = []
    v: list[int] = []
    for i, c in enumerate(weights):
        if not c:
            continue
        if i == 0:
            wi, vi = phi0, []
        else:
            wi, vi = _phi_i_parts(ctx, phi0, psi, binom, i)
            _require(wi == _phi_i_closed_form(ctx, k, binom, gamma, beta, i),
                     f"phi_{i} differs from its closed form")
        f = _poly.padd(ctx, f, _poly.pscale(ctx, wi, c))
        u = _poly.padd(ctx, u, _poly.pshift([c], i))
        v = _poly.padd(ctx, v, _poly.pscale(ctx, vi, c))
    coeff = lambda l: f[l] if l < len(f) else 0  # noqa: E731
    for l in range(m + 1, k):
        _require(coeff(l) == 0, f"coefficient a_{l} of f is nonzero")
    _require(coeff(m) == ctx.sub(gamma, 1), "a_m != gamma - 1")
    if gamma == 1:
        _require(m >= 1 and coeff(m - 1) == ctx.mul(beta, k % p), "a_(m-1) != beta*k")
        expected_deg = m - 1
    else:
        expected_deg = m
    _require(_poly.degree(f) == expected_deg,
             f"deg f = {_poly.degree(f)}, expected {expected_deg}")
    return IdealWitness(params, a, b, "f-of-prop52", tuple(f), tuple(u), tuple(v), expected_deg)


def min_degree_in_J(params: CycloParams, a: int, b: int) -> int:
    """deg gcd(phi_0, psi): the least degree of a nonzero element of J."""
    phi0, psi = phi0_psi(params, a, b)
    return len(_poly.pgcd(params.ctx, phi0, psi)) - 1


def check_witness(w: IdealWitness, min_degree: int | None = None) -> None:
    _require(w.verify(), f"{w.construction}: cofactor identity fails at (a,b)=({w.a},{w.b})")
    if min_degree is None:
        min_degree = min_degree_in_J(w.params, w.a, w.b)
    _require(w.degree >= min_degree,
             f"{w.construction}: degree {w.degree} below min degree {min_degree} in J")


# witness cells checked per parameter point (all of them when e^2 is below this)
WITNESS_CELL_CAP = 2048


def witness_cells(params: CycloParams, cap: int = WITNESS_CELL_CAP) -> list[tuple[int, int]]:
    """Every cell if there are at most ``cap``; else all diagonal cells plus a seeded sample."""
    e = params.e
    if e * e <= cap:
        return [(a, b) for a in range(e) for b in range(e)]
    import random

    rng = random.Random(f"witness:{params.q}:{params.k}")
    cells = {(a, a) for a in range(e)}
    extra = max(0, cap - e)
    for idx in rng.sample(range(e * e), min(extra, e * e)):
        cells.add(divmod(idx, e))
    return sorted(cells)


def check_prop51(params: CycloParams, table: CycloTable) -> BoundPredicate:
    """Witnesses on the checked cells plus the table inequality (a,b) <= k // 2 on all cells."""
    p, k = params.p, params.k
    hyp = prop51_hypothesis(p, k)
    best = table.argmax()
    bound = k // 2
    if not hyp:
        return BoundPredicate("prop-5.1", False, best[2] <= bound, best, bound)
    cells = witness_cells(params)
    note = f"witness cells {len(cells)}/{params.e ** 2}"
    ok = best[2] <= bound
    try:
        for a, b in cells:
            w = build_prop51_witness(params, a, b)
            check_witness(w)
            _require(table[a, b] <= w.degree, "table entry exceeds witness degree")
    except CheckFailed as exc:
        ok, note = False, f"{note}; {exc}"
    return BoundPredicate("prop-5.1", True, ok, best, bound, note)


def check_prop52(params: CycloParams, table: CycloTable) -> list[BoundPredicate]:
    p, k = params.p, params.k
    ts = prop52_exponents(p, k)
    m = k // 2
    best = table.argmax()
    dbest = _diag_argmax(table)
    if not ts:
        return [BoundPredicate("prop-5.2-ab", False, best[2] <= m, best, m),
                BoundPredicate("prop-5.2-aa", False, dbest[2] <= m - 1, dbest, m - 1)]
    cells = witness_cells(params)
    ok_ab, ok_aa = best[2] <= m, dbest[2] <= m - 1
    note = "t=" + ",".join(map(str, ts)) + f"; witness cells {len(cells)}/{params.e ** 2}"
    try:
        for t in ts:
            for a, b in cells:
                w = build_f_prop52(params, a, b, t)
                check_witness(w)
                _require(table[a, b] <= w.degree, "table entry exceeds witness degree")
    except CheckFailed as exc:
        ok_ab = ok_aa = False
        note = f"{note}; {exc}"
    return [BoundPredicate("prop-5.2-ab", True, ok_ab, best, m, note),
            BoundPredicate("prop-5.2-aa", True, ok_aa, dbest, m - 1, note)]
