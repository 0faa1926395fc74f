"""Cyclotomic numbers of order e over GF(q), three ways.

For a primitive element alpha and q - 1 = e*k, the coset C_a is
<alpha^e> alpha^a and the cyclotomic number (a, b) counts x in C_a with
x + 1 in C_b.  It is computed

* by enumeration of the coset C_a,
* as k - rank(C^(a,b)) for the banded k x k matrix
  C^(a,b)_{ij} = 1 + beta - delta (i = j), binom(k, j-i) (i < j),
  beta*binom(k, i-j) (i > j), with beta = alpha^(ak), delta = alpha^(bk),
* as deg gcd((X+1)^k - delta, X^k - beta).

Tables are canonical only relative to (field, alpha): another primitive
element relabels the cosets and permutes the table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import poly as _poly
from .config import Limits, LimitError, ParameterError, get_limits
from .field import FieldContext, FieldElement, find_primitive_element, multiplicative_order
from .linalg import rank_batch

# element budget for one stacked elimination (N * k * k codes)
_STACK_BUDGET = 1 << 21


class Method(str, Enum):
    ENUMERATION = "enumeration"
    RANK = "matrix-rank"
    GCD = "poly-gcd"


@dataclass(frozen=True, eq=False)
class CycloParams:
    ctx: FieldContext
    alpha: FieldElement
    e: int
    k: int

    def __post_init__(self):
        q = self.ctx.q
        if self.e < 1 or self.k < 1 or self.e * self.k != q - 1:
            raise ParameterError(f"need e*k = q-1 = {q - 1}, got e={self.e}, k={self.k}")
        if self.alpha.ctx != self.ctx:
            raise ParameterError("alpha is not an element of the given field")
        if not self.alpha or multiplicative_order(self.alpha) != q - 1:
            raise ParameterError(f"alpha = {self.alpha} is not primitive in GF({q})")

    @property
    def q(self) -> int:
        return self.ctx.q

    @property
    def p(self) -> int:
        return self.ctx.p

    def fingerprint(self) -> str:
        return f"{self.ctx}|alpha={self.alpha}|e={self.e}|k={self.k}"

    @cached_property
    def power_table(self) -> dict[int, int]:
        """alpha^(a*k) -> a for 0 <= a < e (the e-th roots of unity)."""
        ctx = self.ctx
        step = ctx.pow(self.alpha.code, self.k)
        out, cur = {}, 1
        for a in range(self.e):
            out[cur] = a
            cur = ctx.mul(cur, step)
        return out

    @cached_property
    def _alpha_log_scale(self) -> int:
        """s^-1 mod (q-1) where alpha = g^s for the field's table generator g."""
        order = self.q - 1
        if order == 1:
            return 0
        s = int(self.ctx.vlog(np.array([self.alpha.code]))[0])
        return pow(s, -1, order)

    def log_alpha(self, codes: np.ndarray) -> np.ndarray:
        """Vectorized discrete log base alpha for nonzero codes."""
        return self.ctx.vlog(codes) * self._alpha_log_scale % (self.q - 1)

    @cached_property
    def beta_codes(self) -> tuple[int, ...]:
        """alpha^(a*k) for a = 0..e-1."""
        out = [0] * self.e
        for code, a in self.power_table.items():
            out[a] = code
        return tuple(out)

    def beta(self, a: int) -> int:
        return self.beta_codes[a % self.e]


def make_params(ctx: FieldContext, *, k: int | None = None, e: int | None = None,
                alpha: FieldElement | None = None) -> CycloParams:
    """CycloParams from exactly one of k, e; alpha defaults to the canonical primitive element."""
    order = ctx.q - 1
    if (k is None) == (e is None):
        raise ParameterError("give exactly one of k and e")
    if k is not None:
        if k < 1 or order % k:
            raise ParameterError(f"k = {k} does not divide q-1 = {order}")
        e = order // k
    else:
        if e < 1 or order % e:
            raise ParameterError(f"e = {e} does not divide q-1 = {order}")
        k = order // e
    if alpha is None:
        alpha = find_primitive_element(ctx)
    return CycloParams(ctx, alpha, e, k)


def _check_ab(params: CycloParams, a: int, b: int) -> None:
    if not (0 <= a < params.e and 0 <= b < params.e):
        raise ParameterError(f"(a, b) = ({a}, {b}) outside [0, {params.e})^2")


@lru_cache(maxsize=256)
def binomials_mod(k: int, p: int) -> tuple[int, ...]:
    """binom(k, i) mod p for i = 0..k, computed exactly then reduced."""
    row = [1] * (k + 1)
    c = 1
    for i in range(1, k + 1):
        c = c * (k - i + 1) // i
        row[i] = c
    return tuple(x % p for x in row)


def coset_index(params: CycloParams, x: FieldElement) -> int:
    """The a with x in C_a, found by matching x^k against alpha^(a*k)."""
    if x.ctx != params.ctx:
        raise ParameterError("element from a different field")
    if not x:
        raise ParameterError("0 lies in no cyclotomic coset")
    return params.power_table[params.ctx.pow(x.code, params.k)]


def cyclotomic_number_enum(params: CycloParams, a: int, b: int,
                           limits: Limits | None = None) -> int:
    _check_ab(params, a, b)
    lim = get_limits(limits)
    if params.q > lim.q_limit:
        raise LimitError(f"q = {params.q} exceeds the enumeration limit {lim.q_limit}")
    ctx = params.ctx
    table = params.power_table
    k = params.k
    step = ctx.pow(params.alpha.code, params.e)
    x = ctx.pow(params.alpha.code, a)
    count = 0
    for _ in range(k):
        y = ctx.add(x, 1)
        if y and table[ctx.pow(y, k)] == b:
            count += 1
        x = ctx.mul(x, step)
    return count


@dataclass(frozen=True, eq=False)
class CycloMatrix:
    """C^(a,b) as a k x k array of codes."""

    ctx: FieldContext
    a: int
    b: int
    codes: np.ndarray
    beta: int
    gamma: int

    @property
    def k(self) -> int:
        return self.codes.shape[0]

    def entries(self) -> list[list[FieldElement]]:
        return [[self.ctx.element(int(c)) for c in row] for row in self.codes]


def _check_k(params: CycloParams, limits: Limits | None) -> None:
    lim = get_limits(limits)
    if params.k > lim.k_limit:
        raise LimitError(f"k = {params.k} exceeds the matrix-method limit {lim.k_limit}")


def _matrix_stack(params: CycloParams, a_idx: np.ndarray, b_idx: np.ndarray):
    ctx, k = params.ctx, params.k
    binom = np.array(binomials_mod(k, ctx.p), dtype=np.int64)
    beta = _powers(params, a_idx)
    delta = _powers(params, b_idx)
    gamma = ctx.vsub(ctx.vadd(beta, 1), delta)
    i = np.arange(k)
    diff = i[None, :] - i[:, None]  # j - i
    upper = np.where(diff > 0, binom[np.clip(diff, 0, k)], 0)
    lower = np.where(diff < 0, binom[np.clip(-diff, 0, k)], 0)
    stack = ctx.vmul(beta[:, None, None], lower[None, :, :])
    stack = stack + upper[None, :, :]  # disjoint supports
    stack[:, i, i] = gamma[:, None]
    return stack, beta, gamma


def _powers(params: CycloParams, a_idx) -> np.ndarray:
    """alpha^(a*k) for an array of a."""
    lut = np.array(params.beta_codes, dtype=np.int64)
    return lut[np.asarray(a_idx, dtype=np.int64)]


def build_cyclo_matrix(params: CycloParams, a: int, b: int,
                       limits: Limits | None = None) -> CycloMatrix:
    _check_ab(params, a, b)
    _check_k(params, limits)
    stack, beta, gamma = _matrix_stack(params, np.array([a]), np.array([b]))
    return CycloMatrix(params.ctx, a, b, stack[0], int(beta[0]), int(gamma[0]))


def cyclotomic_numbers_rank(params: CycloParams, pairs: Sequence[tuple[int, int]],
                            limits: Limits | None = None) -> list[int]:
    """k - rank C^(a,b) for each (a, b), eliminating matrices in stacked batches."""
    _check_k(params, limits)
    for a, b in pairs:
        _check_ab(params, a, b)
    k = params.k
    chunk = max(1, _STACK_BUDGET // (k * k))
    out: list[int] = []
    arr = np.array(pairs, dtype=np.int64).reshape(-1, 2)
    for s in range(0, len(arr), chunk):
        part = arr[s:s + chunk]
        stack, _, _ = _matrix_stack(params, part[:, 0], part[:, 1])
        out.extend((k - rank_batch(params.ctx, stack)).tolist())
    return out


def cyclotomic_number_rank(params: CycloParams, a: int, b: int,
                           limits: Limits | None = None) -> int:
    return cyclotomic_numbers_rank(params, [(a, b)], limits)[0]


def phi_psi(params: CycloParams, a: int, b: int) -> tuple[list[int], list[int]]:
    """Code lists of (X+1)^k - alpha^(bk) and X^k - alpha^(ak)."""
    ctx, k = params.ctx, params.k
    phi = list(binomials_mod(k, ctx.p))
    phi[0] = ctx.sub(phi[0], params.beta(b))
    psi = [0] * (k + 1)
    psi[0] = ctx.neg(params.beta(a))
    psi[k] = 1
    return _poly.trim(phi), psi


def cyclotomic_number_gcd(params: CycloParams, a: int, b: int) -> int:
    _check_ab(params, a, b)
    phi, psi = phi_psi(params, a, b)
    g = _poly.pgcd(params.ctx, phi, psi)
    return len(g) - 1


@dataclass(frozen=True, eq=False)
class CycloTable:
    """The e x e array of cyclotomic numbers, row a, column b."""

    q: int
    p: int
    n: int
    e: int
    k: int
    alpha: tuple[int, ...]
    method: str
    array: np.ndarray
    params_fingerprint: str = field(default="")

    def __eq__(self, other):
        if not isinstance(other, CycloTable):
            return NotImplemented
        return (self.q, self.e, self.alpha, self.params_fingerprint) == (
            other.q, other.e, other.alpha, other.params_fingerprint,
        ) and np.array_equal(self.array, other.array)

    @cached_property
    def entries(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(row) for row in self.array.tolist())

    def __getitem__(self, ab: tuple[int, int]) -> int:
        a, b = ab
        return int(self.array[a, b])

    def total(self) -> int:
        return int(self.array.sum())

    def max_entry(self) -> int:
        return int(self.array.max())

    def argmax(self) -> tuple[int, int, int]:
        """First maximal cell in row-major order, as (a, b, value)."""
        a, b = divmod(int(np.argmax(self.array)), self.e)
        return a, b, int(self.array[a, b])

    def diagonal(self) -> list[int]:
        return np.diagonal(self.array).tolist()

    def row_sums(self) -> list[int]:
        return self.array.sum(axis=1).tolist()

    def value_counts(self) -> dict[int, int]:
        counts = np.bincount(self.array.ravel())
        return {v: int(c) for v, c in enumerate(counts.tolist()) if c}

    def to_csv(self) -> str:
        return "\n".join(",".join(map(str, row)) for row in self.entries)

    def to_record(self) -> dict:
        return {
            "q": self.q, "p": self.p, "n": self.n, "e": self.e, "k": self.k,
            "alpha": list(self.alpha), "method": self.method,
            "entries": [list(r) for r in self.entries],
        }


def enumeration_table_array(params: CycloParams) -> np.ndarray:
    """Whole e x e table by one pass over the powers alpha^i, i = 0..q-2.

    alpha^i lies in C_(i mod e); alpha^i + 1 is placed by its discrete log
    base alpha.
    """
    ctx, e = params.ctx, params.e
    order = params.q - 1
    i = np.arange(order, dtype=np.int64)
    g_log_alpha = pow(params._alpha_log_scale, -1, order) if order > 1 else 0
    x = ctx.vexp(i * g_log_alpha % max(order, 1))
    y = ctx.plus_one(x)
    keep = y != 0
    a = i[keep] % e
    b = params.log_alpha(y[keep]) % e
    counts = np.bincount(a * e + b, minlength=e * e)
    return counts.reshape(e, e)


def cyclotomic_table(params: CycloParams, method: Method | str = Method.ENUMERATION,
                     limits: Limits | None = None) -> CycloTable:
    method = Method(method)
    lim = get_limits(limits)
    e = params.e
    if method is Method.ENUMERATION:
        if params.q > lim.q_limit:
            raise LimitError(f"q = {params.q} exceeds the enumeration limit {lim.q_limit}")
        rows = enumeration_table_array(params)
    elif method is Method.RANK:
        pairs = [(a, b) for a in range(e) for b in range(e)]
        flat = cyclotomic_numbers_rank(params, pairs, lim)
        rows = [flat[a * e:(a + 1) * e] for a in range(e)]
    else:
        rows = [[cyclotomic_number_gcd(params, a, b) for b in range(e)] for a in range(e)]
    return table_from_rows(params, rows, method)


def table_from_rows(params: CycloParams, rows, method: Method | str) -> CycloTable:
    ctx = params.ctx
    return CycloTable(
        q=ctx.q, p=ctx.p, n=ctx.n, e=params.e, k=params.k,
        alpha=params.alpha.coeffs, method=Method(method).value,
        array=np.asarray(rows, dtype=np.int64).reshape(params.e, params.e),
        params_fingerprint=params.fingerprint(),
    )


# identities

def sum_identity_values(table: CycloTable) -> dict[str, int]:
    k, q = table.k, table.q
    counts = table.value_counts()
    return {
        "sum": sum(v * c for v, c in counts.items()),
        "sum_expected": q - 2,
        "sum_sq": sum(v * v * c for v, c in counts.items()),
        "sum_sq_expected": (k - 1) * (k - 2) + q - 2,
    }


def sum_identities(table: CycloTable, params: CycloParams | None = None) -> bool:
    """Sum of all entries is q-2 and sum of squares is (k-1)(k-2)+q-2."""
    if params is not None and table.params_fingerprint not in ("", params.fingerprint()):
        raise ParameterError("table was computed for different parameters")
    v = sum_identity_values(table)
    return v["sum"] == v["sum_expected"] and v["sum_sq"] == v["sum_sq_expected"]


def variance_values(table: CycloTable) -> tuple[Fraction, Fraction]:
    """(LHS, RHS) of the exact variance identity about the mean (q-2)/e^2.

    Each squared deviation ((a,b) - (q-2)/e^2)^2 is (e^2 (a,b) - (q-2))^2 / e^4,
    so the left side is accumulated as an integer over the common denominator.
    """
    e, k, q = table.e, table.k, table.q
    num = sum(c * (e * e * v - (q - 2)) ** 2 for v, c in table.value_counts().items())
    lhs = Fraction(num, e**4)
    rhs = (e - 3) * k + Fraction(2 * k, e) + 1 - Fraction(1, e * e)
    return lhs, rhs


def variance_identity(table: CycloTable, params: CycloParams | None = None) -> bool:
    if params is not None and table.params_fingerprint not in ("", params.fingerprint()):
        raise ParameterError("table was computed for different parameters")
    lhs, rhs = variance_values(table)
    return lhs == rhs


def deviation_bound_holds(table: CycloTable) -> bool:
    """|(a,b) - (q-2)/e^2| < sqrt(e k) for every entry, via (e^2 v - (q-2))^2 < e^5 k."""
    e, k, q = table.e, table.k, table.q
    bound = e**5 * k
    return all((e * e * v - (q - 2)) ** 2 < bound for v in table.value_counts())


def row_sums_expected(params: CycloParams) -> list[int]:
    """Row a sums to k - 1 when -1 lies in C_a, else k."""
    minus_one = params.ctx.element(params.ctx.neg(1))
    a_neg = coset_index(params, minus_one)
    return [params.k - (a == a_neg) for a in range(params.e)]


# the bijection X -> Y, (x, y) -> (x/y, (x-1)/(y-1))

@dataclass(frozen=True)
class BijectionReport:
    size_x: int
    size_y: int
    expected: int
    maps_into_y: bool
    injective: bool
    inverse_ok: bool
    onto: bool

    @property
    def ok(self) -> bool:
        return (self.maps_into_y and self.injective and self.inverse_ok and self.onto
                and self.size_x == self.size_y == self.expected)

    def __bool__(self) -> bool:
        return self.ok


def wilson_bijection_check(params: CycloParams, limits: Limits | None = None) -> BijectionReport:
    """Build X and Y by coset filtering (O(q k) pairs) and test f and its inverse g."""
    lim = get_limits(limits)
    if params.q > lim.q_limit:
        raise LimitError(f"q = {params.q} exceeds the enumeration limit {lim.q_limit}")
    ctx, e, k, q = params.ctx, params.e, params.k, params.q

    def in_c0(v):
        return (v != 0) & (ctx.vlog(v) % e == 0)

    sub0 = ctx.vexp(np.arange(k, dtype=np.int64) * e)  # the subgroup C_0
    u_all = sub0[sub0 != 1]
    ys = np.arange(2, q, dtype=np.int64)  # codes 0 and 1 are the elements 0 and 1
    expected = (k - 1) * (k - 2)

    if u_all.size == 0 or ys.size == 0:
        xs_x = np.zeros(0, dtype=np.int64)
        xs_y = np.zeros(0, dtype=np.int64)
    else:
        yy = np.repeat(ys, u_all.size)
        uu = np.tile(u_all, ys.size)
        xx = ctx.vmul(uu, yy)
        ok = xx != 1
        xx, yy = xx[ok], yy[ok]
        ratio = ctx.vmul(ctx.vsub(xx, 1), ctx.vinv(ctx.vsub(yy, 1)))
        member = in_c0(ratio)
        xs_x, xs_y = xx[member], yy[member]
    size_x = int(xs_x.size)

    # f on X
    if size_x:
        fu = ctx.vmul(xs_x, ctx.vinv(xs_y))
        fv = ctx.vmul(ctx.vsub(xs_x, 1), ctx.vinv(ctx.vsub(xs_y, 1)))
        maps_into = bool(np.all(in_c0(fu) & in_c0(fv) & (fu != 1) & (fv != 1) & (fu != fv)))
        image = np.unique(fu * q + fv)
        injective = image.size == size_x
        d = ctx.vsub(fu, fv)
        one_minus_v = ctx.vsub(1, fv)
        gx = ctx.vmul(ctx.vmul(fu, one_minus_v), ctx.vinv(d))
        gy = ctx.vmul(one_minus_v, ctx.vinv(d))
        inverse_ok = bool(np.all((gx == xs_x) & (gy == xs_y)))
    else:
        maps_into, injective, inverse_ok = True, True, True
        image = np.zeros(0, dtype=np.int64)

    # Y and surjectivity
    if u_all.size:
        uu = np.repeat(u_all, u_all.size)
        vv = np.tile(u_all, u_all.size)
        keep = uu != vv
        uu, vv = uu[keep], vv[keep]
    else:
        uu = vv = np.zeros(0, dtype=np.int64)
    size_y = int(uu.size)
    onto = np.array_equal(np.unique(uu * q + vv), image)
    return BijectionReport(size_x, size_y, expected, maps_into, bool(injective),
                           inverse_ok, bool(onto))


def tri_method_mismatches(params: CycloParams, pairs: Iterable[tuple[int, int]] | None = None,
                          enum_table: CycloTable | None = None,
                          limits: Limits | None = None) -> list[tuple[int, int, int, int, int]]:
    """(a, b, enum, rank, gcd) for every cell where the three methods disagree."""
    e = params.e
    if pairs is None:
        pairs = [(a, b) for a in range(e) for b in range(e)]
    pairs = list(pairs)
    if enum_table is None:
        enum_table = cyclotomic_table(params, Method.ENUMERATION, limits)
    ranks = cyclotomic_numbers_rank(params, pairs, limits)
    bad = []
    for (a, b), r in zip(pairs, ranks):
        v = enum_table[a, b]
        g = cyclotomic_number_gcd(params, a, b)
        if not v == r == g:
            bad.append((a, b, v, r, g))
    return bad
