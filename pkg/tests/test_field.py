from __future__ import annotations

import pickle
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclotome.config import Limits, ParameterError
from cyclotome.field import (
    construct_field,
    field_for_order,
    find_primitive_element,
    is_irreducible,
    multiplicative_order,
)

SMALL = [(2, 1), (5, 1), (7, 1), (2, 4), (3, 2), (3, 3), (5, 2), (7, 3)]


def _has_root(f, p):
    return any(sum(c * x**i for i, c in enumerate(f)) % p == 0 for x in range(p))


def test_irreducible_quadratics_over_f3_exhaustive():
    # a monic quadratic is irreducible iff it has no root
    for c0, c1 in product(range(3), repeat=2):
        f = [c0, c1, 1]
        assert is_irreducible(f, 3) == (not _has_root(f, 3)), f
    assert sum(is_irreducible([c0, c1, 1], 3) for c0, c1 in product(range(3), repeat=2)) == 3


def test_irreducible_count_degree4_f2():
    # there are 3 irreducible quartics over GF(2)
    count = sum(is_irreducible(list(c) + [1], 2) for c in product(range(2), repeat=4))
    assert count == 3
    assert not is_irreducible([1, 0, 1, 0, 1], 2)  # (X^2+X+1)^2


def test_construct_field_is_deterministic():
    a = construct_field(3, 2)
    assert str(a) == "3^2/1,0,1"
    assert a == construct_field(3, 2) and hash(a) == hash(construct_field(3, 2))
    assert str(construct_field(7, 1)) == "7^1/-"
    b = construct_field(5, 2, seed=7)
    assert is_irreducible(list(b.modulus), 5)
    assert pickle.loads(pickle.dumps(b)) == b


def test_construct_field_errors():
    with pytest.raises(ParameterError):
        construct_field(4, 1)
    with pytest.raises(ParameterError):
        construct_field(3, 0)
    with pytest.raises(ParameterError, match="not a prime power"):
        field_for_order(12)
    with pytest.raises(ParameterError):
        field_for_order(3**10, limits=Limits(q_limit=1000))


@pytest.mark.parametrize("p,n", SMALL)
def test_primitive_element_has_full_order(p, n):
    ctx = construct_field(p, n)
    g = find_primitive_element(ctx)
    # brute-force order
    x, order = g, 1
    while x != ctx.one:
        x = x * g
        order += 1
    assert order == ctx.q - 1
    assert multiplicative_order(g) == ctx.q - 1
    # first code that works
    for c in range(1, g.code):
        assert multiplicative_order(ctx.element(c)) < ctx.q - 1


def test_known_primitive_elements():
    assert find_primitive_element(construct_field(7, 1)).code == 3
    assert find_primitive_element(construct_field(5, 1)).code == 2
    assert find_primitive_element(construct_field(3, 2)).coeffs == (1, 1)


@pytest.mark.parametrize("p,n", SMALL)
def test_tables_match_raw_arithmetic(p, n):
    ctx = construct_field(p, n)
    q = ctx.q
    codes = np.arange(q, dtype=np.int64)
    a, b = np.meshgrid(codes, codes)
    a, b = a.ravel()[: 4000], b.ravel()[: 4000]
    vm = ctx.vmul(a, b)
    va = ctx.vadd(a, b)
    for x, y, m, s in zip(a.tolist(), b.tolist(), vm.tolist(), va.tolist()):
        assert ctx.mul(x, y) == m
        assert ctx.add(x, y) == s
    nz = codes[1:]
    assert np.all(ctx.vmul(nz, ctx.vinv(nz)) == 1)
    assert np.all(ctx.vexp(ctx.vlog(nz)) == nz)


@pytest.mark.parametrize("p,n", [(5, 1), (3, 2), (2, 3), (7, 2)])
@settings(max_examples=80, deadline=None)
@given(data=st.data())
def test_field_axioms(p, n, data):
    ctx = construct_field(p, n)
    el = st.integers(0, ctx.q - 1).map(ctx.element)
    x, y, z = data.draw(el), data.draw(el), data.draw(el)
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    assert x - x == ctx.zero and x + (-x) == ctx.zero
    if x != ctx.zero:
        assert x * x.inverse() == ctx.one
        assert x ** (ctx.q - 1) == ctx.one


def test_frobenius_is_additive():
    ctx = construct_field(3, 3)
    for x in range(ctx.q):
        for y in (1, 5, 17):
            assert ctx.pow(ctx.add(x, y), 3) == ctx.add(ctx.pow(x, 3), ctx.pow(y, 3))


def test_element_coercion():
    ctx = construct_field(3, 2)
    x = ctx.element((0, 1))
    assert x * x == -1
    assert ctx(5) == ctx.element(2)
    assert x.coeffs == (0, 1)
