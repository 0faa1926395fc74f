"""Exact arithmetic in GF(p) and GF(p^n).

Elements are handled internally as integer *codes*: the coefficient vector
(c_0, ..., c_{n-1}) of an element, read as the base-p integer
c_0 + c_1 p + ... + c_{n-1} p^(n-1).  For a prime field the code is just the
residue.  ``FieldElement`` is the public wrapper around a code.

Besides scalar operations on codes, every context offers vectorized versions
on numpy int64 arrays (``vadd``, ``vmul``, ...).  These rely on exp/log tables
for a fixed primitive element, built lazily from table-free polynomial
arithmetic; the primitive element is the one ``find_primitive_element``
returns, so the tables never depend on anything but the context.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from . import poly as _poly
from .config import SCALAR_TABLE_LIMIT, Limits, ParameterError, get_limits
from .ntheory import is_prime, prime_factors


@dataclass(frozen=True, eq=False)
class FieldContext:
    """A finite field GF(p^n).  Immutable; tables are cached on first use."""

    p: int
    n: int
    modulus: tuple[int, ...] | None = None
    q: int = field(init=False)

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError("extension degree must be >= 1")
        if not is_prime(self.p):
            raise ParameterError(f"characteristic {self.p} is not prime")
        object.__setattr__(self, "q", self.p**self.n)

    def __reduce__(self):
        return (construct_context, (self.p, self.n, self.modulus))

    def __eq__(self, other):
        if not isinstance(other, FieldContext):
            return NotImplemented
        return (self.p, self.n, self.modulus) == (other.p, other.n, other.modulus)

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))

    def __str__(self) -> str:
        if self.modulus is None:
            return f"{self.p}^1/-"
        return f"{self.p}^{self.n}/" + ",".join(map(str, self.modulus))

    def __repr__(self) -> str:
        return f"FieldContext({self})"

    # conversions

    def to_coeffs(self, code: int) -> tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.n):
            code, r = divmod(code, p)
            out.append(r)
        return tuple(out)

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.n:
            raise ValueError(f"expected at most {self.n} coefficients")
        code = 0
        for c in reversed(coeffs):
            code = code * self.p + c % self.p
        return code

    def code_of(self, x) -> int:
        """Code of a FieldElement, an integer (image of Z), or a coefficient tuple."""
        if isinstance(x, FieldElement):
            if x.ctx != self:
                raise ValueError("element belongs to a different field")
            return x.code
        if isinstance(x, (tuple, list)):
            return self.from_coeffs(x)
        return int(x) % self.p

    def element(self, x=0) -> "FieldElement":
        if isinstance(x, int) and not isinstance(x, bool):
            if not 0 <= x < self.q:
                raise ValueError(f"code {x} out of range for GF({self.q})")
            return FieldElement(self, x)
        return FieldElement(self, self.code_of(x))

    def __call__(self, x=0) -> "FieldElement":
        """Element from an integer of Z (reduced mod p) or a coefficient tuple."""
        return FieldElement(self, self.code_of(x))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self) -> Iterator["FieldElement"]:
        for c in range(self.q):
            yield FieldElement(self, c)

    # table-free ("raw") multiplication, used to bootstrap the tables

    def _mul_raw(self, x: int, y: int) -> int:
        raise NotImplementedError

    def _pow_raw(self, x: int, m: int) -> int:
        result = 1
        while m:
            if m & 1:
                result = self._mul_raw(result, x)
            m >>= 1
            if m:
                x = self._mul_raw(x, x)
        return result

    def _vmul_const_raw(self, a: np.ndarray, c: int) -> np.ndarray:
        raise NotImplementedError

    @cached_property
    def primitive_code(self) -> int:
        """Code of the canonical primitive element (see find_primitive_element)."""
        order = self.q - 1
        exps = [order // r for r in prime_factors(order)] if order > 1 else []
        for g in range(1, self.q):
            if all(self._pow_raw(g, d) != 1 for d in exps):
                return g
        raise AssertionError("no primitive element found; modulus not irreducible?")

    @cached_property
    def _np_tables(self) -> tuple[np.ndarray, np.ndarray]:
        """(exp, log): exp has length 2(q-1), exp[i] = g^i; log[0] is a dummy 0."""
        order = self.q - 1
        g = self.primitive_code
        exp = np.empty(2 * order, dtype=np.int64)
        exp[0] = 1
        filled = 1
        step = g
        while filled < order:
            take = min(filled, order - filled)
            exp[filled:filled + take] = self._vmul_const_raw(exp[:take], step)
            filled += take
            step = self._pow_raw(g, filled)
        exp[order:] = exp[:order]
        log = np.zeros(self.q, dtype=np.int64)
        log[exp[:order]] = np.arange(order, dtype=np.int64)
        if order > 1 and np.count_nonzero(log) != order - 1:
            raise AssertionError("exp table is not a permutation of the nonzero elements")
        return exp, log

    # vectorized operations on int64 code arrays

    def vlog(self, a: np.ndarray) -> np.ndarray:
        """Discrete log base the canonical primitive element; callers mask zero."""
        return self._np_tables[1][a]

    def vexp(self, i: np.ndarray) -> np.ndarray:
        return self._np_tables[0][np.asarray(i) % (self.q - 1)]

    def vmul(self, a, b) -> np.ndarray:
        exp, log = self._np_tables
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = exp[log[a] + log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def vinv(self, a) -> np.ndarray:
        exp, log = self._np_tables
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return exp[(self.q - 1) - log[a]]

    def plus_one(self, a) -> np.ndarray:
        """Vectorized x -> x + 1 on codes (only the constant coefficient moves)."""
        a = np.asarray(a, dtype=np.int64)
        d0 = a % self.p
        return a - d0 + (d0 + 1) % self.p

    # scalar operations (subclasses)

    def pow(self, x: int, m: int) -> int:
        """x**m by square-and-multiply; x**0 = 1 including for x = 0."""
        if m < 0:
            x, m = self.inv(x), -m
        result = 1
        mul = self.mul
        while m:
            if m & 1:
                result = mul(result, x)
            m >>= 1
            if m:
                x = mul(x, x)
        return result

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))


class PrimeField(FieldContext):
    """GF(p): codes are residues."""

    def add(self, x, y):
        return (x + y) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def neg(self, x):
        return -x % self.p

    def mul(self, x, y):
        return x * y % self.p

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    _mul_raw = mul

    def _vmul_const_raw(self, a, c):
        return a * c % self.p

    def vadd(self, a, b):
        return (np.asarray(a, dtype=np.int64) + b) % self.p

    def vsub(self, a, b):
        return (np.asarray(a, dtype=np.int64) - b) % self.p

    def vneg(self, a):
        return -np.asarray(a, dtype=np.int64) % self.p

    def vmul(self, a, b):
        return np.asarray(a, dtype=np.int64) * b % self.p


class ExtensionField(FieldContext):
    """GF(p^n), n >= 2, modulo a monic irreducible ``modulus``."""

    def __post_init__(self):
        super().__post_init__()
        m = self.modulus
        if m is None or len(m) != self.n + 1 or m[-1] != 1:
            raise ParameterError("extension field needs a monic modulus of degree n")
        if any(not 0 <= c < self.p for c in m):
            raise ParameterError("modulus coefficients must lie in [0, p)")
        if not is_irreducible(list(m), self.p):
            raise ParameterError(f"modulus {m} is reducible over GF({self.p})")

    @cached_property
    def _lists(self):
        if self.q > SCALAR_TABLE_LIMIT:
            return None
        exp, log = self._np_tables
        order = self.q - 1
        zech = self.vlog(self.plus_one(exp[:order]))
        zech = np.where(self.plus_one(exp[:order]) == 0, -1, zech)
        return exp.tolist(), log.tolist(), zech.tolist()

    @cached_property
    def _prime(self) -> PrimeField:
        return PrimeField(self.p, 1)

    def _digits_add(self, x, y, sign=1):
        p = self.p
        out, pw = 0, 1
        for _ in range(self.n):
            x, dx = divmod(x, p)
            y, dy = divmod(y, p)
            out += ((dx + sign * dy) % p) * pw
            pw *= p
        return out

    def add(self, x, y):
        if not x:
            return y
        if not y:
            return x
        t = self._lists
        if t is None:
            return self._digits_add(x, y)
        exp, log, zech = t
        lx = log[x]
        d = log[y] - lx
        if d < 0:
            d += self.q - 1
        z = zech[d]
        if z < 0:
            return 0
        return exp[lx + z]

    def neg(self, x):
        if not x or self.p == 2:
            return x
        t = self._lists
        if t is None:
            return self._digits_add(0, x, -1)
        exp, log, _ = t
        return exp[log[x] + (self.q - 1) // 2]

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        if not x or not y:
            return 0
        t = self._lists
        if t is None:
            return self._mul_raw(x, y)
        exp, log, _ = t
        return exp[log[x] + log[y]]

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        t = self._lists
        if t is None:
            return self._pow_raw(x, self.q - 2)
        exp, log, _ = t
        return exp[self.q - 1 - log[x]]

    def _mul_raw(self, x, y):
        prime = self._prime
        f = list(self.to_coeffs(x))
        g = list(self.to_coeffs(y))
        r = _poly.pmod(prime, _poly.pmul(prime, _poly.trim(f), _poly.trim(g)), list(self.modulus))
        return self.from_coeffs(r)

    def _digits(self, a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        out = np.empty(a.shape + (self.n,), dtype=np.int64)
        for i in range(self.n):
            a, out[..., i] = np.divmod(a, self.p)
        return out

    def _pack(self, d: np.ndarray) -> np.ndarray:
        out = np.zeros(d.shape[:-1], dtype=np.int64)
        for i in range(self.n - 1, -1, -1):
            out = out * self.p + d[..., i]
        return out

    def _vmul_const_raw(self, a, c):
        p, n = self.p, self.n
        da = self._digits(a)
        dc = self.to_coeffs(c)
        prod = np.zeros(da.shape[:-1] + (2 * n - 1,), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                if dc[j]:
                    prod[..., i + j] += da[..., i] * dc[j]
        prod %= p
        mod = self.modulus
        for d in range(2 * n - 2, n - 1, -1):
            t = prod[..., d]
            for i in range(n):
                if mod[i]:
                    prod[..., d - n + i] -= t * mod[i]
            prod[..., d - n:d] %= p
        return self._pack(prod[..., :n] % p)

    def vadd(self, a, b):
        return self._pack((self._digits(a) + self._digits(b)) % self.p)

    def vsub(self, a, b):
        return self._pack((self._digits(a) - self._digits(b)) % self.p)

    def vneg(self, a):
        return self._pack(-self._digits(a) % self.p)


def construct_context(p: int, n: int, modulus=None) -> FieldContext:
    if n == 1:
        if modulus is not None:
            raise ParameterError("a prime field takes no modulus")
        return PrimeField(p, 1)
    return ExtensionField(p, n, tuple(modulus) if modulus is not None else None)


class FieldElement:
    """An element of a FieldContext, stored as its integer code."""

    __slots__ = ("ctx", "code")

    def __init__(self, ctx: FieldContext, code: int):
        self.ctx = ctx
        self.code = code

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx.to_coeffs(self.code)

    def _code(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise ValueError("elements of different fields")
            return other.code
        if isinstance(other, int):
            return other % self.ctx.p
        return NotImplemented

    def __add__(self, other):
        c = self._code(other)
        if c is NotImplemented:
            return c
        return FieldElement(self.ctx, self.ctx.add(self.code, c))

    __radd__ = __add__

    def __sub__(self, other):
        c = self._code(other)
        if c is NotImplemented:
            return c
        return FieldElement(self.ctx, self.ctx.sub(self.code, c))

    def __rsub__(self, other):
        c = self._code(other)
        if c is NotImplemented:
            return c
        return FieldElement(self.ctx, self.ctx.sub(c, self.code))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.code))

    def __mul__(self, other):
        c = self._code(other)
        if c is NotImplemented:
            return c
        return FieldElement(self.ctx, self.ctx.mul(self.code, c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = self._code(other)
        if c is NotImplemented:
            return c
        return FieldElement(self.ctx, self.ctx.div(self.code, c))

    def __rtruediv__(self, other):
        c = self._code(other)
        if c is NotImplemented:
            return c
        return FieldElement(self.ctx, self.ctx.div(c, self.code))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.inv(self.code))

    def __pow__(self, m: int):
        return element_pow(self, m)

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.code == other.code
        if isinstance(other, int):
            return self.code == other % self.ctx.p
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.code))

    def __int__(self):
        return self.code

    def __str__(self):
        if self.ctx.n == 1:
            return str(self.code)
        return "(" + ",".join(map(str, self.coeffs)) + ")"

    def __repr__(self):
        return f"FieldElement({self}, GF({self.ctx.q}))"


def is_irreducible(f: list[int], p: int) -> bool:
    """Rabin's irreducibility test for a monic f over GF(p)."""
    prime = PrimeField(p, 1)
    f = _poly.trim(list(f))
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]

    def frobenius_power(j):
        return _poly.ppowmod(prime, x, p**j, f)

    if frobenius_power(n) != _poly.pmod(prime, x, f):
        return False
    for r in prime_factors(n):
        h = _poly.psub(prime, frobenius_power(n // r), x)
        if len(_poly.pgcd(prime, f, h)) != 1:
            return False
    return True


def construct_field(p: int, n: int, seed: int = 0, limits: Limits | None = None) -> FieldContext:
    """Build GF(p^n) deterministically.

    Monic degree-n candidates are indexed by the base-p integer of their
    lower coefficients (little-endian); the search visits indices
    seed, seed+1, ... (mod p^n) and keeps the first irreducible one.
    """
    if n < 1:
        raise ParameterError("extension degree must be >= 1")
    if not is_prime(p):
        raise ParameterError(f"characteristic {p} is not prime")
    lim = get_limits(limits)
    if p**n > lim.q_limit:
        raise ParameterError(f"q = {p}^{n} exceeds the q-limit {lim.q_limit}")
    if n == 1:
        return PrimeField(p, 1)
    total = p**n
    for j in range(total):
        idx = (seed + j) % total
        low = []
        for _ in range(n):
            idx, r = divmod(idx, p)
            low.append(r)
        cand = low + [1]
        if cand[0] == 0:
            continue  # divisible by X
        if is_irreducible(cand, p):
            return ExtensionField(p, n, tuple(cand))
    raise AssertionError("no irreducible polynomial found")


def field_for_order(q: int, seed: int = 0, limits: Limits | None = None) -> FieldContext:
    from .ntheory import prime_power

    pp = prime_power(q)
    if pp is None:
        raise ParameterError(f"q = {q} is not a prime power")
    return construct_field(pp[0], pp[1], seed, limits)


def element_pow(x: FieldElement, m: int) -> FieldElement:
    """Square-and-multiply power; x**0 is 1 even for x = 0."""
    if m < 0:
        raise ValueError("element_pow takes a non-negative exponent")
    return FieldElement(x.ctx, x.ctx.pow(x.code, m))


def find_primitive_element(ctx: FieldContext) -> FieldElement:
    """First g in code order 1, 2, ..., q-1 with g^((q-1)/r) != 1 for every prime r | q-1.

    Code order is the prime-field order 1, 2, ..., p-1 for n = 1 and
    lexicographic order on (c_{n-1}, ..., c_0) for extensions.
    """
    return FieldElement(ctx, ctx.primitive_code)


def multiplicative_order(x: FieldElement) -> int:
    if not x:
        raise ZeroDivisionError("zero has no multiplicative order")
    order = x.ctx.q - 1
    for r in prime_factors(order) if order > 1 else []:
        while order % r == 0 and x.ctx.pow(x.code, order // r) == 1:
            order //= r
    return order
