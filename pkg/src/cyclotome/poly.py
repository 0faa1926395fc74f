"""Univariate polynomials over a finite field context.

Two layers live here.  The list-level functions (``padd``, ``pmul``,
``pdivmod``, ``pgcd`` ...) work on little-endian lists of element codes and
are what the algorithms use in their inner loops.  ``Poly`` wraps such a list
together with its field for the public API.

The zero polynomial is the empty list; its degree is the ``NEG_INF`` marker.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Iterable, Sequence

if TYPE_CHECKING:
    from .field import FieldContext, FieldElement


class _MinusInfinity:
    """Degree of the zero polynomial.

    Orders below every integer but supports no arithmetic, so an expression
    like ``deg(f) + 1`` on a zero polynomial fails loudly.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "-inf"

    def __reduce__(self):
        return (_MinusInfinity, ())

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("cyclotome.NEG_INF")


NEG_INF = _MinusInfinity()


def trim(f: list[int]) -> list[int]:
    while f and not f[-1]:
        f.pop()
    return f


def degree(f: Sequence[int]):
    return len(f) - 1 if f else NEG_INF


def padd(ctx, f, g):
    if len(f) < len(g):
        f, g = g, f
    add = ctx.add
    out = list(f)
    for i, c in enumerate(g):
        out[i] = add(out[i], c)
    return trim(out)


def pneg(ctx, f):
    neg = ctx.neg
    return [neg(c) for c in f]


def psub(ctx, f, g):
    return padd(ctx, f, pneg(ctx, g))


def pscale(ctx, f, c):
    if not c:
        return []
    mul = ctx.mul
    return trim([mul(a, c) for a in f])


def pshift(f, s):
    """Multiply by X**s."""
    return [0] * s + list(f) if f else []


def pmul(ctx, f, g):
    if not f or not g:
        return []
    if ctx.n == 1:
        p = ctx.p
        out = [0] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if a:
                for j, b in enumerate(g):
                    out[i + j] += a * b
        return trim([c % p for c in out])
    add, mul = ctx.add, ctx.mul
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = add(out[i + j], mul(a, b))
    return trim(out)


def pdivmod(ctx, f, g):
    """Quotient and remainder of f by a nonzero g."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    dg = len(g) - 1
    r = list(f)
    if len(r) <= dg:
        return [], r
    quot = [0] * (len(r) - dg)
    if ctx.n == 1:
        p = ctx.p
        lc_inv = pow(g[-1], -1, p)
        for d in range(len(r) - 1, dg - 1, -1):
            c = r[d] * lc_inv % p
            if c:
                quot[d - dg] = c
                base = d - dg
                for j in range(dg):
                    r[base + j] = (r[base + j] - c * g[j]) % p
            r[d] = 0
        return trim(quot), trim(r[:dg])
    sub, mul = ctx.sub, ctx.mul
    lc_inv = ctx.inv(g[-1])
    for d in range(len(r) - 1, dg - 1, -1):
        c = mul(r[d], lc_inv)
        if c:
            quot[d - dg] = c
            base = d - dg
            for j in range(dg):
                if g[j]:
                    r[base + j] = sub(r[base + j], mul(c, g[j]))
        r[d] = 0
    return trim(quot), trim(r[:dg])


def pmod(ctx, f, g):
    return pdivmod(ctx, f, g)[1]


def pmonic(ctx, f):
    if not f or f[-1] == 1:
        return list(f)
    return pscale(ctx, f, ctx.inv(f[-1]))


def pgcd(ctx, f, g):
    """Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0."""
    f, g = list(f), list(g)
    while g:
        f, g = g, pmod(ctx, f, g)
    return pmonic(ctx, f)


def pgcdex(ctx, f, g):
    """Return (d, s, t) with d = s*f + t*g monic (or d = 0 when f = g = 0)."""
    r0, r1 = list(f), list(g)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = pdivmod(ctx, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(ctx, s0, pmul(ctx, q, s1))
        t0, t1 = t1, psub(ctx, t0, pmul(ctx, q, t1))
    if not r0:
        return [], [], []
    c = ctx.inv(r0[-1])
    return pscale(ctx, r0, c), pscale(ctx, s0, c), pscale(ctx, t0, c)


def ppowmod(ctx, f, e, m):
    """f**e mod m by square-and-multiply."""
    result = pmod(ctx, [1], m)
    base = pmod(ctx, f, m)
    while e:
        if e & 1:
            result = pmod(ctx, pmul(ctx, result, base), m)
        e >>= 1
        if e:
            base = pmod(ctx, pmul(ctx, base, base), m)
    return result


def peval(ctx, f, x):
    acc = 0
    add, mul = ctx.add, ctx.mul
    for c in reversed(f):
        acc = add(mul(acc, x), c)
    return acc


class Poly:
    """Immutable polynomial over a FieldContext, coefficients little-endian."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: "FieldContext", coeffs: Iterable = ()):
        codes = []
        for c in coeffs:
            if hasattr(c, "code"):
                if c.ctx != ctx:
                    raise ValueError("coefficient from a different field")
                codes.append(c.code)
            else:
                codes.append(ctx.code_of(c))
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "coeffs", tuple(trim(codes)))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def from_codes(cls, ctx, codes) -> "Poly":
        return cls(ctx, [ctx.element(c) for c in codes])

    @classmethod
    def x(cls, ctx) -> "Poly":
        return cls(ctx, [0, 1])

    @property
    def degree(self):
        return degree(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> "FieldElement":
        return self.ctx.element(self.coeffs[-1] if self.coeffs else 0)

    def __getitem__(self, i: int) -> "FieldElement":
        c = self.coeffs[i] if 0 <= i < len(self.coeffs) else 0
        return self.ctx.element(c)

    def elements(self) -> list["FieldElement"]:
        return [self.ctx.element(c) for c in self.coeffs]

    def _other(self, other) -> list[int]:
        if isinstance(other, Poly):
            if other.ctx != self.ctx:
                raise ValueError("polynomials over different fields")
            return list(other.coeffs)
        return trim([self.ctx.code_of(other)])

    def _wrap(self, codes) -> "Poly":
        out = Poly.__new__(Poly)
        object.__setattr__(out, "ctx", self.ctx)
        object.__setattr__(out, "coeffs", tuple(trim(list(codes))))
        return out

    def __add__(self, other):
        return self._wrap(padd(self.ctx, list(self.coeffs), self._other(other)))

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(pneg(self.ctx, self.coeffs))

    def __sub__(self, other):
        return self._wrap(psub(self.ctx, list(self.coeffs), self._other(other)))

    def __rsub__(self, other):
        return self._wrap(psub(self.ctx, self._other(other), list(self.coeffs)))

    def __mul__(self, other):
        return self._wrap(pmul(self.ctx, self.coeffs, self._other(other)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        result, base = [1], list(self.coeffs)
        while e:
            if e & 1:
                result = pmul(self.ctx, result, base)
            e >>= 1
            if e:
                base = pmul(self.ctx, base, base)
        return self._wrap(result)

    def __divmod__(self, other):
        q, r = pdivmod(self.ctx, self.coeffs, self._other(other))
        return self._wrap(q), self._wrap(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ctx == other.ctx and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.coeffs))

    def __call__(self, x) -> "FieldElement":
        return self.ctx.element(peval(self.ctx, self.coeffs, self.ctx.code_of(x)))

    def monic(self) -> "Poly":
        return self._wrap(pmonic(self.ctx, self.coeffs))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = str(self.ctx.element(c))
            if i == 0:
                terms.append(cs)
            else:
                mono = "X" if i == 1 else f"X^{i}"
                terms.append(mono if c == 1 else f"{cs}*{mono}")
        return "Poly(" + " + ".join(terms) + ")"


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd of two polynomials over the same field; gcd(0, 0) = 0."""
    if f.ctx != g.ctx:
        raise ValueError("poly_gcd: polynomials over different fields")
    return f._wrap(pgcd(f.ctx, f.coeffs, g.coeffs))
