"""Determinants of binomial-coefficient matrices, exactly.

The product formula

    det( binom(r+s, r-i+j) )_{1<=i,j<=m} = prod_{i<m} i! (r+s+i)! / ((r+i)! (s+i)!)

is evaluated with big integers and checked against fraction-free (Bareiss)
elimination of the explicit matrix.  Divisibility by a prime p is decided
from p-adic valuations of the factorials (Legendre), so it scales to k in
the thousands without forming the determinant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .config import Limits, LimitError, ParameterError, get_limits

IntMatrix = list[list[int]]


class Variant(str, Enum):
    EVEN = "even"          # upper-right m x m block of C^(a,b) for k = 2m
    ODD = "odd"            # upper-right m x m block for k = 2m + 1
    EXTENDED = "extended"  # the (m+1) x (m+1) block, any k, m = k // 2


@dataclass(frozen=True)
class BinomMatrixSpec:
    r: int
    s: int
    m: int

    def __post_init__(self):
        if min(self.r, self.s, self.m) < 0:
            raise ParameterError("r, s, m must be non-negative")


def binom_exact(n: int, r: int) -> int:
    """binom(n, r), zero outside 0 <= r <= n."""
    if r < 0 or n < 0 or r > n:
        return 0
    return math.comb(n, r)


def _check_size(m: int, limits: Limits | None) -> None:
    lim = get_limits(limits)
    if m > lim.int_matrix_limit:
        raise LimitError(f"matrix size {m} exceeds the limit {lim.int_matrix_limit}")


def build_binom_matrix(spec: BinomMatrixSpec, limits: Limits | None = None) -> IntMatrix:
    """Entry (i, j) = binom(r+s, r-i+j) with 1-based i, j."""
    _check_size(spec.m, limits)
    n = spec.r + spec.s
    return [[binom_exact(n, spec.r - i + j) for j in range(1, spec.m + 1)]
            for i in range(1, spec.m + 1)]


@lru_cache(maxsize=4096)
def factorial(n: int) -> int:
    return math.factorial(n)


def adc_det(spec: BinomMatrixSpec, limits: Limits | None = None) -> int:
    """Closed-form product for the binomial determinant.

    The running product is kept as an exact integer: each step multiplies by
    i! (r+s+i)! and divides by (r+i)! (s+i)!, asserting the division is exact.
    """
    _check_size(spec.m, limits)
    r, s = spec.r, spec.s
    acc = 1
    for i in range(spec.m):
        num = acc * factorial(i) * factorial(r + s + i)
        den = factorial(r + i) * factorial(s + i)
        acc, rem = divmod(num, den)
        if rem:
            raise ArithmeticError(f"non-integral partial product at i = {i} for {spec}")
    return acc


def bareiss_det(mat: IntMatrix) -> int:
    """Exact determinant by fraction-free elimination; row swaps flip the sign."""
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ValueError("bareiss_det needs a square matrix")
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in mat]
    sign, prev = 1, 1
    for c in range(n - 1):
        if a[c][c] == 0:
            for i in range(c + 1, n):
                if a[i][c]:
                    a[c], a[i] = a[i], a[c]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[c][c]
        row_c = a[c]
        for i in range(c + 1, n):
            row_i = a[i]
            f = row_i[c]
            for j in range(c + 1, n):
                row_i[j] = (row_i[j] * piv - f * row_c[j]) // prev
            row_i[c] = 0
        prev = piv
    return sign * a[n - 1][n - 1]


def bareiss_rank(mat: IntMatrix) -> int:
    """Rank over Q by fraction-free row echelon form (columns without a pivot are skipped)."""
    a = [list(map(int, row)) for row in mat]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    r, prev = 0, 1
    for c in range(ncols):
        if r == nrows:
            break
        piv_row = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv_row is None:
            continue
        a[r], a[piv_row] = a[piv_row], a[r]
        piv = a[r][c]
        row_r = a[r]
        for i in range(r + 1, nrows):
            row_i = a[i]
            f = row_i[c]
            for j in range(c + 1, ncols):
                row_i[j] = (row_i[j] * piv - f * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        r += 1
    return r


def variant_spec(k: int, variant: Variant | str) -> BinomMatrixSpec:
    """(r, s, size) of the named block of C^(a,b), m = k // 2."""
    variant = Variant(variant)
    if k < 1:
        raise ParameterError("k must be >= 1")
    m = k // 2
    if variant is Variant.EVEN:
        if k % 2:
            raise ParameterError(f"variant 'even' needs even k, got {k}")
        return BinomMatrixSpec(m, k - m, m)
    if variant is Variant.ODD:
        if k % 2 == 0:
            raise ParameterError(f"variant 'odd' needs odd k, got {k}")
        return BinomMatrixSpec(m + 1, k - m - 1, m)
    return BinomMatrixSpec(m, k - m, m + 1)


def parity_variant(k: int) -> Variant:
    return Variant.EVEN if k % 2 == 0 else Variant.ODD


def variant_det(k: int, variant: Variant | str, limits: Limits | None = None) -> int:
    spec = variant_spec(k, variant)
    return _product_formula(spec)


def _product_formula(spec: BinomMatrixSpec) -> int:
    # no size limit: the formula needs no explicit matrix
    r, s = spec.r, spec.s
    acc = 1
    for i in range(spec.m):
        num = acc * factorial(i) * factorial(r + s + i)
        acc, rem = divmod(num, factorial(r + i) * factorial(s + i))
        if rem:
            raise ArithmeticError(f"non-integral partial product at i = {i} for {spec}")
    return acc


def legendre(n: int, p: int) -> int:
    """p-adic valuation of n!."""
    v = 0
    while n >= p:
        n //= p
        v += n
    return v


def det_valuation(spec: BinomMatrixSpec, p: int) -> int:
    r, s = spec.r, spec.s
    return sum(legendre(i, p) + legendre(r + s + i, p) - legendre(r + i, p) - legendre(s + i, p)
               for i in range(spec.m))


# k up to which the valuation answer is re-derived from the big integer
_CROSS_CHECK_K = 200


def det_nonzero_mod_p(k: int, variant: Variant | str, p: int, cross_check: bool = True) -> bool:
    """True iff p does not divide the named determinant (decided by valuations)."""
    spec = variant_spec(k, variant)
    if p < 2:
        raise ParameterError("p must be a prime")
    nonzero = det_valuation(spec, p) == 0
    if cross_check and k <= _CROSS_CHECK_K:
        direct = _product_formula(spec) % p != 0
        if direct != nonzero:
            raise ArithmeticError(f"valuation and direct evaluation disagree for k={k}, p={p}")
    return nonzero


def variant_matrix(k: int, variant: Variant | str, limits: Limits | None = None) -> IntMatrix:
    return build_binom_matrix(variant_spec(k, variant), limits)
